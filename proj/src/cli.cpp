#include "cylindex/cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "cylindex/models.hpp"

namespace cylindex {

namespace {

struct Outcome {
  Json report;
  int status = 0;
  std::string csv;  ///< svplot text output
};

int status_of(ErrorKind kind) { return is_validation(kind) ? 2 : 3; }

Json error_json(const Error& e) { return {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}; }

OperatorSpec load_spec(const RunConfig& c) {
  if (c.input.empty()) fail(ErrorKind::InvalidArgument, "--input is required");
  return parse_operator_spec(read_text_file(c.input));
}

SymbolGrid3 load_grid(const RunConfig& c) {
  if (c.input.empty()) fail(ErrorKind::InvalidArgument, "--input is required");
  return parse_symbol_grid(read_text_file(c.input));
}

Json records_json(const std::vector<RadiusRecord>& records) {
  Json out = Json::array();
  for (const auto& r : records) out.push_back(to_json(r));
  return out;
}

Outcome cmd_check(const RunConfig& c) {
  const OperatorSpec spec = load_spec(c);
  const PipelineConfig p = c.pipeline();
  const int dim = lattice_dimension(spec.base());
  const std::vector<int> radii = p.oracle_radii(dim);
  const FredholmCheck f = check_total_fredholm(spec, p.ellipticity, radii, p.oracle_options(dim));
  Outcome o;
  o.report["spec_hash"] = spec_hash(spec);
  o.report["elliptic"] = f.elliptic;
  o.report["margin"] = f.margin;
  o.report["fredholm"] = f.fredholm;
  o.report["boundary"] = {{"minus", f.boundary_diagnostics[0].empty() ? Json("invertible") : Json(f.boundary_diagnostics[0])},
                          {"plus", f.boundary_diagnostics[1].empty() ? Json("invertible") : Json(f.boundary_diagnostics[1])}};
  return o;
}

Outcome cmd_index(const RunConfig& c) {
  const OperatorSpec spec = load_spec(c);
  const IndexPair pair = delta1_topological(spec, c.pipeline());
  Outcome o;
  o.report["spec_hash"] = spec_hash(spec);
  o.report["route"] = spec.base() == BaseManifold::Point ? "winding" : "odd-chern";
  o.report["pair"] = to_json(pair);
  return o;
}

Outcome cmd_oracle(const RunConfig& c) {
  const OperatorSpec spec = load_spec(c);
  const PipelineConfig p = c.pipeline();
  const EllipticityResult e = check_uniform_ellipticity(spec, p.ellipticity);
  if (!e.elliptic) fail(ErrorKind::NotElliptic, "principal symbol margin " + std::to_string(e.margin) + " is below tolerance");
  Outcome o;
  o.report["spec_hash"] = spec_hash(spec);
  IndexPair pair;
  Json sides;
  for (Side side : {Side::Minus, Side::Plus}) {
    IndexResult r;
    try {
      r = analytic_index(spec, side, p);
    } catch (const Error& err) {
      throw Error(err.kind(), std::string(to_string(side)) + " side: " + err.what());
    }
    (side == Side::Minus ? pair.ind_minus : pair.ind_plus) = r.index;
    sides[std::string(to_string(side))] = {
        {"index", r.index}, {"ker", r.ker}, {"coker", r.coker}, {"records", records_json(r.records)}};
  }
  o.report["pair"] = to_json(pair);
  o.report["sides"] = std::move(sides);
  return o;
}

Outcome cmd_verify(const RunConfig& c) {
  const OperatorSpec spec = load_spec(c);
  const AgreementReport r = verify_agreement(spec, c.pipeline());
  Outcome o;
  o.report = to_json(r, c.runtimes);
  o.status = !r.elliptic ? 2 : r.agree ? 0 : 3;
  return o;
}

Outcome cmd_calibrate(const RunConfig& c) {
  const PipelineConfig p = c.pipeline();
  Outcome o;

  // Toeplitz: symbol 1 on τ = −1, z on τ = +1
  const OperatorSpec toeplitz = models::toeplitz_calibration_spec();
  const int noether = topological_index(toeplitz, Side::Plus, p);
  const IndexResult t_oracle = analytic_index(toeplitz, Side::Plus, p);
  o.report["toeplitz"] = {{"noether", noether},
                          {"oracle", t_oracle.index},
                          {"records", records_json(t_oracle.records)},
                          {"agree", noether == t_oracle.index}};

  // degree-1 SU(2) symbol on S*(T²)
  const FourierSymbol u = models::su2_symbol();
  const int n = p.fedosov_resolution;
  const double integral = odd_chern_integral(sample(u, {n, n, n}), p.fedosov);
  const std::vector<int> radii = p.oracle_radii(2);
  const IndexResult s_oracle = numerical_index(symbol_assembler(u), radii, p.oracle_options(2));
  const int rounded = static_cast<int>(std::lround(integral));
  o.report["su2"] = {{"odd_chern_integral", integral},
                     {"fedosov", rounded},
                     {"oracle", s_oracle.index},
                     {"records", records_json(s_oracle.records)},
                     {"agree", rounded == s_oracle.index && std::abs(integral - rounded) < 1e-3}};

  o.report["conventions"] = {{"noether_index", "w(f_minus) - w(f_plus)"},
                             {"odd_chern_constant", "-1/(24 pi^2)"},
                             {"orientation", "dtheta ^ dx ^ dpsi, (tau, xi) = (cos psi, sin psi)"},
                             {"fedosov_sign", 1},
                             {"pair_order", "(minus, plus)"}};
  const bool ok = o.report["toeplitz"]["agree"].get<bool>() && o.report["su2"]["agree"].get<bool>();
  o.report["agree"] = ok;
  o.status = ok ? 0 : 3;
  return o;
}

Outcome cmd_svplot(const RunConfig& c) {
  const OperatorSpec spec = load_spec(c);
  const PipelineConfig p = c.pipeline();
  const int dim = lattice_dimension(spec.base());
  const std::vector<int> radii = p.oracle_radii(dim);
  const auto records =
      singular_value_sweep(boundary_assembler(boundary_operator(spec, c.side, true)), radii, p.oracle_options(dim));
  Outcome o;
  o.report["spec_hash"] = spec_hash(spec);
  o.report["side"] = std::string(to_string(c.side));
  o.report["records"] = records_json(records);

  std::ostringstream csv;
  csv << "radius,dim,s_max,s1,s2,s3,s4,s5,ker,coker\n";
  csv << std::setprecision(17);
  for (const auto& r : records) {
    // smallest singular values over both compressions (A and A*)
    std::vector<double> s = r.smallest;
    s.insert(s.end(), r.smallest_adjoint.begin(), r.smallest_adjoint.end());
    std::sort(s.begin(), s.end());
    csv << r.radius << ',' << r.dim << ',' << r.s_max;
    for (std::size_t i = 0; i < 5; ++i) {
      csv << ',';
      if (i < s.size()) csv << s[i];
    }
    csv << ',' << r.ker << ',' << r.coker << '\n';
  }
  o.csv = csv.str();
  return o;
}

Outcome cmd_fedosov(const RunConfig& c) {
  const SymbolGrid3 grid = load_grid(c);
  const PipelineConfig p = c.pipeline();
  Outcome o;
  const auto& res = grid.resolution();
  o.report["resolution"] = Json::array({res[0], res[1], res[2]});
  o.report["k"] = grid.k();
  o.report["aliasing_ratio"] = aliasing_ratio(grid);
  const double integral = odd_chern_integral(grid, p.fedosov);
  o.report["odd_chern_integral"] = integral;
  o.report["index"] = fedosov_index(grid, p.fedosov);
  return o;
}

Outcome cmd_quantize(const RunConfig& c) {
  const SymbolGrid3 grid = load_grid(c);
  const PipelineConfig p = c.pipeline();
  const FourierSymbol symbol = interpolate(grid);
  const std::vector<int> radii = p.oracle_radii(2);
  const IndexResult r = numerical_index(symbol_assembler(symbol), radii, p.oracle_options(2));
  Outcome o;
  o.report["bandwidth"] = symbol.bandwidth();
  o.report["index"] = r.index;
  o.report["ker"] = r.ker;
  o.report["coker"] = r.coker;
  o.report["records"] = records_json(r.records);
  return o;
}

void render_text(const Json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) render_text(value, prefix.empty() ? key : prefix + "." + key, out);
    return;
  }
  if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_string())) {
    for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], prefix + "[" + std::to_string(i) + "]", out);
    return;
  }
  out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
}

}  // namespace

std::string_view to_string(Command c) {
  switch (c) {
    case Command::Check: return "check";
    case Command::Index: return "index";
    case Command::Oracle: return "oracle";
    case Command::Verify: return "verify";
    case Command::Calibrate: return "calibrate";
    case Command::Svplot: return "svplot";
    case Command::Fedosov: return "fedosov";
    case Command::Quantize: return "quantize";
  }
  return "unknown";
}

PipelineConfig RunConfig::pipeline() const {
  PipelineConfig p;
  if (grid) {
    if (*grid < 16) fail(ErrorKind::InvalidArgument, "--grid must be at least 16");
    p.ellipticity.n_theta = p.ellipticity.n_x = p.ellipticity.n_fiber = *grid;
    p.loop_samples = *grid;
    p.fedosov_resolution = *grid;
  }
  if (tol) {
    if (!(*tol > 0.0)) fail(ErrorKind::InvalidArgument, "--tol must be positive");
    p.tol = tol;
  }
  p.radii = radii;
  p.allow_large = allow_large;
  return p;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Outcome o;
  try {
    switch (config.command) {
      case Command::Check: o = cmd_check(config); break;
      case Command::Index: o = cmd_index(config); break;
      case Command::Oracle: o = cmd_oracle(config); break;
      case Command::Verify: o = cmd_verify(config); break;
      case Command::Calibrate: o = cmd_calibrate(config); break;
      case Command::Svplot: o = cmd_svplot(config); break;
      case Command::Fedosov: o = cmd_fedosov(config); break;
      case Command::Quantize: o = cmd_quantize(config); break;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    if (config.format == OutputFormat::Json) out << Json{{"error", error_json(e)}}.dump(2) << '\n';
    return status_of(e.kind());
  }

  std::ostringstream body;
  if (config.command == Command::Svplot && config.format == OutputFormat::Text) {
    body << o.csv;
  } else if (config.format == OutputFormat::Json) {
    body << o.report.dump(2) << '\n';
  } else {
    render_text(o.report, "", body);
  }

  if (config.out.empty()) {
    out << body.str();
  } else {
    std::ofstream file(config.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << config.out << '\n';
      return 2;
    }
    file << body.str();
  }
  return o.status;
}

}  // namespace cylindex
