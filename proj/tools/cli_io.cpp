#include "cli_io.hpp"

#include "fedq/expr.hpp"

#include <fstream>

namespace fedq::cli {

namespace {

template <class T>
T field(const ordered_json& j, const char* key, const char* what) {
  if (!j.contains(key)) throw InputError(std::string(what) + ": missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError(std::string(what) + ": \"" + key + "\" has the wrong type");
  }
}

std::string expr_of(const ordered_json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long>());
  throw InputError(where + ": expected an expression string or an integer");
}

PolyJet parse_at(const ordered_json& v, const VarsPtr& vars, const std::string& where, int cap = PolyJet::kNoCap) {
  try {
    return parse_poly(expr_of(v, where), vars, cap);
  } catch (const ParseError& e) {
    throw InputError(where + ": " + e.what());
  }
}

VarsPtr coords_of(const ordered_json& j, int dim, const char* what) {
  auto names = field<std::vector<std::string>>(j, "coords", what);
  if (static_cast<int>(names.size()) != dim) throw InputError(std::string(what) + ": coords must list dim names");
  return make_vars(names);
}

}  // namespace

ordered_json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

ChartGeometry load_chart(const ordered_json& j, int xcap_override) {
  int dim = field<int>(j, "dim", "chart");
  if (dim <= 0 || dim % 2 != 0 || dim > mono::kMaxVars) throw InputError("chart: dim must be 2, 4, 6 or 8");
  VarsPtr vars = coords_of(j, dim, "chart");
  int xcap = PolyJet::kNoCap;
  if (j.contains("xcap") && !j["xcap"].is_null()) xcap = field<int>(j, "xcap", "chart");
  if (xcap_override >= 0) xcap = xcap_override;

  FiberPtr space;
  if (j.contains("omega") && !j["omega"].is_null()) {
    const auto& rows = j["omega"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != dim) throw InputError("chart: omega must be dim x dim");
    ScalarMatrix w(dim);
    for (int a = 0; a < dim; ++a) {
      if (!rows[a].is_array() || static_cast<int>(rows[a].size()) != dim)
        throw InputError("chart: omega must be dim x dim");
      for (int b = 0; b < dim; ++b) {
        std::string where = "chart: omega[" + std::to_string(a) + "][" + std::to_string(b) + "]";
        PolyJet c = parse_at(rows[a][b], vars, where);
        if (!c.is_constant()) throw InputError(where + " must be constant");
        w(a, b) = c.constant_term();
      }
    }
    try {
      space = std::make_shared<const FiberSpace>(vars, std::move(w));
    } catch (const Error& e) {
      throw InputError(std::string("chart: ") + e.what());
    }
  } else {
    space = FiberSpace::darboux(vars);
  }

  std::vector<GammaEntry> entries;
  if (j.contains("gamma")) {
    if (!j["gamma"].is_array()) throw InputError("chart: gamma must be a list");
    for (size_t t = 0; t < j["gamma"].size(); ++t) {
      const auto& e = j["gamma"][t];
      std::string where = "chart: gamma[" + std::to_string(t) + "]";
      auto idx = field<std::vector<int>>(e, "indices", where.c_str());
      if (idx.size() != 3) throw InputError(where + ": indices must have three entries");
      for (int i : idx)
        if (i < 0 || i >= dim) throw InputError(where + ": index out of range");
      if (!e.contains("coeff")) throw InputError(where + ": missing \"coeff\"");
      entries.push_back({{idx[0], idx[1], idx[2]}, parse_at(e["coeff"], vars, where, xcap)});
    }
  }
  try {
    return ChartGeometry::from_orbits(space, entries, xcap);
  } catch (const Error& e) {
    throw InputError(std::string("chart: ") + e.what());
  }
}

BaseMetric load_metric(const ordered_json& j) {
  int dim = field<int>(j, "dim", "metric");
  if (dim <= 0 || 2 * dim > mono::kMaxVars) throw InputError("metric: dim must be between 1 and 4");
  VarsPtr vars = coords_of(j, dim, "metric");
  int jet_order = field<int>(j, "jet_order", "metric");
  if (!j.contains("g") || !j["g"].is_array() || static_cast<int>(j["g"].size()) != dim)
    throw InputError("metric: g must be dim x dim");
  std::vector<std::vector<PolyJet>> g(static_cast<size_t>(dim));
  for (int a = 0; a < dim; ++a) {
    const auto& row = j["g"][a];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) throw InputError("metric: g must be dim x dim");
    for (int b = 0; b < dim; ++b)
      g[a].push_back(parse_at(row[b], vars, "metric: g[" + std::to_string(a) + "][" + std::to_string(b) + "]"));
  }
  try {
    return BaseMetric(vars, std::move(g), jet_order);
  } catch (const Error& e) {
    throw InputError(std::string("metric: ") + e.what());
  }
}

PolyJet load_potential(const ordered_json& j) {
  int n = field<int>(j, "n", "potential");
  if (n < 1 || 2 * n > mono::kMaxVars) throw InputError("potential: n must be between 1 and 4");
  if (!j.contains("K")) throw InputError("potential: missing \"K\"");
  return parse_at(j["K"], kahler_vars(n), "potential: K");
}

ordered_json chart_to_json(const ChartGeometry& g) {
  ordered_json j;
  j["dim"] = g.dim();
  j["coords"] = *g.coords();
  if (!g.space()->is_standard_darboux()) {
    ordered_json rows = ordered_json::array();
    for (int a = 0; a < g.dim(); ++a) {
      ordered_json row = ordered_json::array();
      for (int b = 0; b < g.dim(); ++b) row.push_back(g.space()->omega()(a, b).str());
      rows.push_back(row);
    }
    j["omega"] = rows;
  }
  ordered_json gam = ordered_json::array();
  for (const auto& e : g.orbit_entries()) {
    gam.push_back({{"indices", {e.indices[0], e.indices[1], e.indices[2]}}, {"coeff", print_canonical(e.coeff)}});
  }
  j["gamma"] = gam;
  j["xcap"] = g.xcap() < PolyJet::kNoCap ? ordered_json(g.xcap()) : ordered_json(nullptr);
  return j;
}

ordered_json jet_json(const PolyJet& p) {
  ordered_json j;
  j["expr"] = print_canonical(p);
  j["cap"] = p.capped() ? ordered_json(p.cap()) : ordered_json(nullptr);
  return j;
}

std::string jet_text(const PolyJet& p) {
  std::string s = print_canonical(p);
  if (p.capped()) s += "  + O(x^" + std::to_string(p.cap() + 1) + ")";
  return s;
}

ordered_json form_json(const WeylForm& w) {
  const FiberSpace& s = *w.space();
  ordered_json terms = ordered_json::array();
  for (const auto& [k, c] : w.terms()) {
    ordered_json y = ordered_json::array();
    ordered_json dx = ordered_json::array();
    for (int mu = 0; mu < s.dim(); ++mu) {
      for (int e = 0; e < mono::exp(k.sym, mu); ++e) y.push_back(s.name(mu));
      if (k.form & (1u << mu)) dx.push_back(s.name(mu));
    }
    terms.push_back({{"hbar", k.hpow}, {"y", y}, {"dx", dx}, {"coeff", print_canonical(c)}});
  }
  ordered_json caps = ordered_json::object();
  for (const auto& [D, cap] : w.degree_caps()) caps[std::to_string(D)] = cap;
  return {{"terms", terms}, {"xcap_by_degree", caps}};
}

std::string form_text(const WeylForm& w) {
  std::string out = w.str();
  bool any = false;
  for (const auto& [D, cap] : w.degree_caps()) {
    if (cap >= PolyJet::kNoCap) continue;
    out += any ? ", " : "coefficient caps by doubled degree: ";
    out += std::to_string(D) + ":" + std::to_string(cap);
    any = true;
  }
  if (any) out += "\n";
  return out;
}

ordered_json operator_json(const DiffOperator& d) {
  ordered_json terms = ordered_json::array();
  const VarList& v = *d.vars();
  for (const auto& [k, a] : d.terms()) {
    ordered_json der = ordered_json::array();
    for (size_t x = 0; x < v.size(); ++x)
      for (int e = 0; e < mono::exp(k.deriv, static_cast<int>(x)); ++e) der.push_back(v[x]);
    terms.push_back({{"hbar", k.hpow}, {"d", der}, {"coeff", print_canonical(a)}});
  }
  return {{"terms", terms}, {"cap", d.cap() < PolyJet::kNoCap ? ordered_json(d.cap()) : ordered_json(nullptr)}};
}

ordered_json report_json(const CheckReport& r) {
  ordered_json items = ordered_json::array();
  for (const auto& c : r.items) items.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return {{"pass", r.all_pass()}, {"items", items}};
}

}  // namespace fedq::cli
