#include "cylindex/spec_io.hpp"

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

namespace cylindex {

namespace {

[[noreturn]] void schema_fail(const std::string& path, const std::string& what) {
  fail(ErrorKind::SchemaError, "field " + (path.empty() ? std::string("/") : path) + ": " + what);
}

Json parse_text(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // byte offset → line:column
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(ErrorKind::SchemaError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
}

void require_object(const Json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) schema_fail(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) schema_fail(path + "/" + key, "unknown key");
  }
}

const Json& member(const Json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) schema_fail(path + "/" + key, "missing required key");
  return j.at(key);
}

int as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) schema_fail(path, "expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) schema_fail(path, "integer out of range");
  return static_cast<int>(v);
}

int optional_int(const Json& j, const std::string& path, const char* key, int fallback) {
  return j.contains(key) ? as_int(j.at(key), path + "/" + key) : fallback;
}

double as_real(const Json& j, const std::string& path) {
  if (!j.is_number()) schema_fail(path, "expected a number");
  return j.get<double>();
}

Eigen::MatrixXd real_matrix(const Json& j, const std::string& path, int k) {
  if (!j.is_array() || static_cast<int>(j.size()) != k) schema_fail(path, "expected " + std::to_string(k) + " rows");
  Eigen::MatrixXd m(k, k);
  for (int r = 0; r < k; ++r) {
    const std::string row_path = path + "/" + std::to_string(r);
    const Json& row = j.at(static_cast<std::size_t>(r));
    if (!row.is_array() || static_cast<int>(row.size()) != k)
      schema_fail(row_path, "expected " + std::to_string(k) + " columns");
    for (int c = 0; c < k; ++c) m(r, c) = as_real(row.at(static_cast<std::size_t>(c)), row_path + "/" + std::to_string(c));
  }
  return m;
}

PeriodicFunction periodic_from_json(const Json& j, const std::string& path, BaseManifold base, int k) {
  if (!j.is_array()) schema_fail(path, "expected an array of Fourier coefficients");
  PeriodicFunction f(base, k);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string cpath = path + "/" + std::to_string(i);
    const Json& c = j.at(i);
    require_object(c, cpath, {"p", "q", "re", "im"});
    const int p = as_int(member(c, cpath, "p"), cpath + "/p");
    const int q = optional_int(c, cpath, "q", 0);
    if (base == BaseManifold::Point && q != 0) schema_fail(cpath + "/q", "must be 0 on a point base");
    Matrix value = real_matrix(member(c, cpath, "re"), cpath + "/re", k).cast<Scalar>();
    if (c.contains("im")) value += Scalar(0.0, 1.0) * real_matrix(c.at("im"), cpath + "/im", k).cast<Scalar>();
    f.add(p, q, value);
  }
  return f;
}

Json matrix_json(const Matrix& m, bool imaginary) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(imaginary ? m(r, c).imag() : m(r, c).real());
    rows.push_back(std::move(row));
  }
  return rows;
}

Json periodic_json(const PeriodicFunction& f) {
  Json out = Json::array();
  for (const auto& [pq, c] : f.coeffs()) {
    Json e;
    e["p"] = pq.first;
    e["q"] = pq.second;
    e["re"] = matrix_json(c, false);
    e["im"] = matrix_json(c, true);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

OperatorSpec operator_spec_from_json(const Json& doc) {
  require_object(doc, "", {"base", "k", "N", "terms"});
  const Json& base_j = member(doc, "", "base");
  if (!base_j.is_string()) schema_fail("/base", "expected \"point\" or \"circle\"");
  const std::string base_s = base_j.get<std::string>();
  BaseManifold base;
  if (base_s == "point") {
    base = BaseManifold::Point;
  } else if (base_s == "circle") {
    base = BaseManifold::Circle;
  } else {
    schema_fail("/base", "expected \"point\" or \"circle\", got \"" + base_s + "\"");
  }
  const int k = as_int(member(doc, "", "k"), "/k");
  if (k <= 0) schema_fail("/k", "must be positive");
  const int order = as_int(member(doc, "", "N"), "/N");
  if (order < 0) schema_fail("/N", "must be nonnegative");

  OperatorSpec spec(base, k, order);
  const Json& terms = member(doc, "", "terms");
  if (!terms.is_array()) schema_fail("/terms", "expected an array");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string tpath = "/terms/" + std::to_string(i);
    const Json& t = terms.at(i);
    require_object(t, tpath, {"j", "alpha", "lambda", "plus", "minus"});
    TermKey key{as_int(member(t, tpath, "j"), tpath + "/j"), optional_int(t, tpath, "alpha", 0),
                optional_int(t, tpath, "lambda", order)};
    if (base == BaseManifold::Point && key.alpha != 0) schema_fail(tpath + "/alpha", "must be 0 on a point base");
    if (spec.terms().count(key)) schema_fail(tpath, "duplicate term (j, alpha, lambda)");
    SemiPeriodicCoefficient c{periodic_from_json(member(t, tpath, "plus"), tpath + "/plus", base, k),
                              periodic_from_json(member(t, tpath, "minus"), tpath + "/minus", base, k)};
    try {
      spec.add_term(key, c);
    } catch (const Error& e) {
      schema_fail(tpath, e.what());
    }
  }
  return spec;
}

OperatorSpec parse_operator_spec(std::string_view text) { return operator_spec_from_json(parse_text(text)); }

Json to_json(const OperatorSpec& spec) {
  Json doc;
  doc["base"] = std::string(to_string(spec.base()));
  doc["k"] = spec.k();
  doc["N"] = spec.order();
  Json terms = Json::array();
  for (const auto& [key, c] : spec.terms()) {
    Json t;
    t["j"] = key.j;
    t["alpha"] = key.alpha;
    t["lambda"] = key.lambda;
    t["plus"] = periodic_json(c.plus);
    t["minus"] = periodic_json(c.minus);
    terms.push_back(std::move(t));
  }
  doc["terms"] = std::move(terms);
  return doc;
}

SymbolGrid3 symbol_grid_from_json(const Json& doc) {
  auto dim_of = [](const Json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) schema_fail(path, "expected a non-empty array");
    return static_cast<int>(j.size());
  };
  const int nt = dim_of(doc, "");
  const int nx = dim_of(doc.at(0), "/0");
  const int np = dim_of(doc.at(0).at(0), "/0/0");
  const int k = dim_of(doc.at(0).at(0).at(0), "/0/0/0");
  SymbolGrid3 grid({nt, nx, np}, k);
  for (int i = 0; i < nt; ++i) {
    const std::string pi = "/" + std::to_string(i);
    const Json& ji = doc.at(static_cast<std::size_t>(i));
    if (dim_of(ji, pi) != nx) schema_fail(pi, "ragged grid along x");
    for (int jx = 0; jx < nx; ++jx) {
      const std::string pj = pi + "/" + std::to_string(jx);
      const Json& jj = ji.at(static_cast<std::size_t>(jx));
      if (dim_of(jj, pj) != np) schema_fail(pj, "ragged grid along the fiber");
      for (int l = 0; l < np; ++l) {
        const std::string pl = pj + "/" + std::to_string(l);
        const Json& m = jj.at(static_cast<std::size_t>(l));
        if (dim_of(m, pl) != k) schema_fail(pl, "expected " + std::to_string(k) + " rows");
        auto a = grid.at(i, jx, l);
        for (int r = 0; r < k; ++r) {
          const std::string pr = pl + "/" + std::to_string(r);
          const Json& row = m.at(static_cast<std::size_t>(r));
          if (dim_of(row, pr) != k) schema_fail(pr, "expected " + std::to_string(k) + " columns");
          for (int c = 0; c < k; ++c) {
            const std::string pc = pr + "/" + std::to_string(c);
            const Json& z = row.at(static_cast<std::size_t>(c));
            if (!z.is_array() || z.size() != 2) schema_fail(pc, "expected [re, im]");
            a(r, c) = Scalar(as_real(z.at(0), pc + "/0"), as_real(z.at(1), pc + "/1"));
          }
        }
      }
    }
  }
  return grid;
}

SymbolGrid3 parse_symbol_grid(std::string_view text) { return symbol_grid_from_json(parse_text(text)); }

Json to_json(const SymbolGrid3& grid) {
  const auto [nt, nx, np] = grid.resolution();
  const int k = grid.k();
  Json doc = Json::array();
  for (int i = 0; i < nt; ++i) {
    Json ji = Json::array();
    for (int jx = 0; jx < nx; ++jx) {
      Json jj = Json::array();
      for (int l = 0; l < np; ++l) {
        const auto a = grid.at(i, jx, l);
        Json m = Json::array();
        for (int r = 0; r < k; ++r) {
          Json row = Json::array();
          for (int c = 0; c < k; ++c) row.push_back(Json::array({a(r, c).real(), a(r, c).imag()}));
          m.push_back(std::move(row));
        }
        jj.push_back(std::move(m));
      }
      ji.push_back(std::move(jj));
    }
    doc.push_back(std::move(ji));
  }
  return doc;
}

Json to_json(const RadiusRecord& record) {
  Json j;
  j["radius"] = record.radius;
  j["dim"] = record.dim;
  j["s_max"] = record.s_max;
  j["smallest"] = record.smallest;
  j["smallest_adjoint"] = record.smallest_adjoint;
  j["ker"] = record.ker;
  j["coker"] = record.coker;
  j["gap_ratio"] = std::isfinite(record.gap_ratio) ? Json(record.gap_ratio) : Json("inf");
  j["gap_ok"] = record.gap_ok;
  return j;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string spec_hash(const OperatorSpec& spec) {
  const std::string canonical = to_json(spec).dump();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace cylindex
