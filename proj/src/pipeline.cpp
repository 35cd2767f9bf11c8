#include "cylindex/pipeline.hpp"

#include <chrono>

namespace cylindex {

namespace {

void require_elliptic(const OperatorSpec& spec, const PipelineConfig& config) {
  const EllipticityResult e = check_uniform_ellipticity(spec, config.ellipticity);
  if (!e.elliptic) fail(ErrorKind::NotElliptic, "principal symbol margin " + std::to_string(e.margin) + " is below tolerance");
}

template <typename F>
int on_side(Side side, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(to_string(side)) + " side: " + e.what());
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

Json to_json(const IndexPair& pair) { return Json::array({pair.ind_minus, pair.ind_plus}); }

OracleOptions PipelineConfig::oracle_options(int dim) const {
  OracleOptions o = OracleOptions::defaults(dim);
  if (tol) o.tol = *tol;
  o.gap = gap;
  o.allow_large = allow_large;
  return o;
}

std::vector<int> PipelineConfig::oracle_radii(int dim) const {
  return radii.empty() ? OracleOptions::default_radii(dim) : radii;
}

int topological_index(const OperatorSpec& spec, Side side, const PipelineConfig& config) {
  const BoundarySymbol f = boundary_symbol(spec, side);
  if (spec.base() == BaseManifold::Point) {
    auto fiber_loop = [&](double tau) {
      return LoopSample::from_function([&](double theta) { return f(CospherePoint{theta, 0.0, tau, 0.0}); },
                                       config.loop_samples);
    };
    return noether_index(fiber_loop(-1.0), fiber_loop(1.0), config.winding);
  }
  const int n = config.fedosov_resolution;
  return fedosov_index(sample(f.to_fourier(), {n, n, n}), config.fedosov);
}

IndexResult analytic_index(const OperatorSpec& spec, Side side, const PipelineConfig& config) {
  const int dim = lattice_dimension(spec.base());
  const std::vector<int> radii = config.oracle_radii(dim);
  return numerical_index(boundary_assembler(boundary_operator(spec, side, true)), radii, config.oracle_options(dim));
}

IndexPair delta1_topological(const OperatorSpec& spec, const PipelineConfig& config) {
  require_elliptic(spec, config);
  IndexPair out;
  out.ind_minus = on_side(Side::Minus, [&] { return topological_index(spec, Side::Minus, config); });
  out.ind_plus = on_side(Side::Plus, [&] { return topological_index(spec, Side::Plus, config); });
  return out;
}

IndexPair delta1_analytic(const OperatorSpec& spec, const PipelineConfig& config) {
  require_elliptic(spec, config);
  IndexPair out;
  out.ind_minus = on_side(Side::Minus, [&] { return analytic_index(spec, Side::Minus, config).index; });
  out.ind_plus = on_side(Side::Plus, [&] { return analytic_index(spec, Side::Plus, config).index; });
  return out;
}

AgreementReport verify_agreement(const OperatorSpec& spec, const PipelineConfig& config) {
  AgreementReport report;
  report.spec_hash = spec_hash(spec);
  try {
    const EllipticityResult e = check_uniform_ellipticity(spec, config.ellipticity);
    report.elliptic = e.elliptic;
    report.margin = e.margin;
  } catch (const Error& err) {
    report.diagnostics.push_back(err.what());
    return report;
  }
  if (!report.elliptic) {
    report.diagnostics.push_back("NotElliptic: principal symbol margin " + std::to_string(report.margin) +
                                 " is below tolerance " + std::to_string(config.ellipticity.tol));
    return report;
  }

  auto t0 = std::chrono::steady_clock::now();
  try {
    report.topological = delta1_topological(spec, config);
  } catch (const Error& err) {
    report.diagnostics.push_back(std::string("topological route: ") + err.what());
  }
  report.topological_seconds = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  IndexPair analytic;
  bool analytic_ok = true;
  for (Side side : {Side::Minus, Side::Plus}) {
    try {
      const IndexResult r = analytic_index(spec, side, config);
      (side == Side::Minus ? analytic.ind_minus : analytic.ind_plus) = r.index;
      std::string line = "analytic " + std::string(to_string(side)) + ": ker " + std::to_string(r.ker) + ", coker " +
                         std::to_string(r.coker) + ", index " + std::to_string(r.index) + " at radii";
      for (const auto& rec : r.records) line += " " + std::to_string(rec.radius);
      report.diagnostics.push_back(line);
    } catch (const Error& err) {
      analytic_ok = false;
      report.diagnostics.push_back("analytic " + std::string(to_string(side)) + ": " + err.what());
    }
  }
  if (analytic_ok) report.analytic = analytic;
  report.analytic_seconds = seconds_since(t0);

  report.agree = report.topological && report.analytic && *report.topological == *report.analytic;
  return report;
}

Json to_json(const AgreementReport& report, bool include_runtimes) {
  Json j;
  j["spec_hash"] = report.spec_hash;
  j["elliptic"] = report.elliptic;
  j["margin"] = report.margin;
  Json pairs;
  pairs["topological"] = report.topological ? to_json(*report.topological) : Json(nullptr);
  pairs["analytic"] = report.analytic ? to_json(*report.analytic) : Json(nullptr);
  j["pairs"] = std::move(pairs);
  j["agree"] = report.agree;
  j["diagnostics"] = report.diagnostics;
  if (include_runtimes) {
    j["runtimes"] = {{"topological_s", report.topological_seconds}, {"analytic_s", report.analytic_seconds}};
  }
  return j;
}

}  // namespace cylindex
