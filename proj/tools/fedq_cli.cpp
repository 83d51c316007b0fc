#include "cli_io.hpp"

#include "fedq/expr.hpp"
#include "fedq/suites.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace fedq;
using namespace fedq::cli;

namespace {

struct Options {
  std::string chart, metric, potential;
  std::string f, g;
  int dcap = -1;
  int xcap = -1;
  std::string format = "text";
  std::uint64_t seed = 20240601;
  int order = 2;
  bool freeze_omega = false;
  bool half_density = false;
  int max_total = 3;
  int dim = 2;
  int maxdeg = 6;
};

bool json_out(const Options& o) { return o.format == "json"; }

void emit(const Options& o, const ordered_json& j, const std::string& text) {
  if (json_out(o)) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

ChartGeometry need_chart(const Options& o) {
  if (o.chart.empty()) throw InputError("--chart FILE is required");
  return load_chart(read_json_file(o.chart), o.xcap);
}

BaseMetric need_metric(const Options& o) {
  if (o.metric.empty()) throw InputError("--metric FILE is required");
  return load_metric(read_json_file(o.metric));
}

PolyJet need_expr(const std::string& src, const char* flag, const VarsPtr& vars) {
  if (src.empty()) throw InputError(std::string(flag) + " EXPR is required");
  try {
    return parse_poly(src, vars);
  } catch (const ParseError& e) {
    throw InputError(std::string(flag) + ": " + e.what());
  }
}

int fedosov_dcap(const Options& o, int fallback) {
  int d = o.dcap < 0 ? fallback : o.dcap;
  if (d < 3) throw InputError("--dcap must be at least 3 for Fedosov commands");
  return d;
}

ordered_json header(const Options& o, const std::string& cmd) {
  ordered_json j;
  j["command"] = cmd;
  if (o.dcap >= 0) j["dcap"] = o.dcap;
  return j;
}

int cmd_r_form(const Options& o) {
  ChartGeometry g = need_chart(o);
  int dcap = fedosov_dcap(o, 4);
  FedosovData fd = build_r(g, dcap);
  ordered_json j = header(o, "r-form");
  j["dcap"] = dcap;
  j["r"] = form_json(fd.r);
  emit(o, j, "r through doubled degree " + std::to_string(dcap) + ":\n" + form_text(fd.r));
  return 0;
}

int cmd_quantize(const Options& o) {
  ChartGeometry g = need_chart(o);
  int dcap = fedosov_dcap(o, 4);
  PolyJet f = need_expr(o.f, "-f", g.coords());
  FlatSection s = quantize(build_r(g, dcap), f);
  ordered_json j = header(o, "quantize");
  j["dcap"] = dcap;
  j["f"] = print_canonical(f);
  j["fhat"] = form_json(s.lifted);
  emit(o, j, "fhat for f = " + print_canonical(f) + ":\n" + form_text(s.lifted));
  return 0;
}

int cmd_star(const Options& o) {
  ChartGeometry g = need_chart(o);
  int dcap = fedosov_dcap(o, 4);
  PolyJet f = need_expr(o.f, "-f", g.coords());
  PolyJet h = need_expr(o.g, "-g", g.coords());
  StarResult st = star(build_r(g, dcap), f, h);
  ordered_json j = header(o, "star");
  j["dcap"] = dcap;
  j["f"] = print_canonical(f);
  j["g"] = print_canonical(h);
  ordered_json cs = ordered_json::array();
  std::string text;
  for (int k = 0; k <= st.valid_order; ++k) {
    cs.push_back(jet_json(st.coeff(k)));
    text += "c_" + std::to_string(k) + " = " + jet_text(st.coeff(k)) + "\n";
  }
  j["coefficients"] = cs;
  emit(o, j, text);
  return 0;
}

int cmd_flatness(const Options& o) {
  ChartGeometry g = need_chart(o);
  int dcap = fedosov_dcap(o, 6);
  FedosovData fd = build_r(g, dcap);
  CheckReport rep;
  WeylForm res = check_flatness(fd);
  rep.add("flatness residual through doubled degree " + std::to_string(dcap - 1), res.is_zero(),
          res.is_zero() ? "" : res.key_str(res.terms().begin()->first));
  if (!o.f.empty()) {
    PolyJet f = need_expr(o.f, "-f", g.coords());
    WeylForm df = check_flat_section(fd, quantize(fd, f));
    rep.add("D fhat = 0 for f = " + print_canonical(f), df.is_zero(),
            df.is_zero() ? "" : df.key_str(df.terms().begin()->first));
  }
  ordered_json j = header(o, "flatness");
  j["dcap"] = dcap;
  j["report"] = report_json(rep);
  j["residual"] = form_json(res);
  emit(o, j, rep.str() + (res.is_zero() ? "" : "residual:\n" + form_text(res)));
  return rep.all_pass() ? 0 : 1;
}

int cmd_lift(const Options& o) {
  BaseMetric m = need_metric(o);
  ChartGeometry g = lift_connection(m);
  ordered_json chart = chart_to_json(g);
  if (json_out(o)) {
    std::cout << chart.dump(2) << "\n";
    return 0;
  }
  std::string text = "lifted chart on (";
  for (size_t v = 0; v < g.coords()->size(); ++v) text += (v ? ", " : "") + (*g.coords())[v];
  text += "), omega = dp ^ dq\n";
  auto entries = g.orbit_entries();
  if (entries.empty()) text += "flat: no connection coefficients\n";
  for (const auto& e : entries) {
    text += "Gamma(" + std::to_string(e.indices[0]) + "," + std::to_string(e.indices[1]) + "," +
            std::to_string(e.indices[2]) + ") = " + jet_text(e.coeff) + "\n";
  }
  std::cout << text;
  return 0;
}

int cmd_sigma(const Options& o) {
  BaseMetric m = need_metric(o);
  SigmaEngine se(m, o.dcap < 0 ? 0 : o.dcap);
  PolyJet f = need_expr(o.f, "-f", se.lifted_vars());
  DiffOperator d = se.sigma(f);
  if (o.half_density) {
    PolyJet d0 = m.det().scaled(Scalar(1) / m.det().constant_term());
    d = conjugate(d, jet_power(d0, Rational(1, 4), m.jet_order()), m.jet_order());
  }
  ordered_json j = header(o, "sigma");
  j["dcap"] = se.dcap();
  j["f"] = print_canonical(f);
  j["half_density"] = o.half_density;
  j["operator"] = operator_json(d);
  std::string text = "sigma(" + print_canonical(f) + ")" + (o.half_density ? " conjugated by det(g)^(1/4)" : "") +
                     ", dcap " + std::to_string(se.dcap()) + ":\n" + d.str();
  if (d.cap() < PolyJet::kNoCap) text += "coefficients valid through degree " + std::to_string(d.cap()) + "\n";
  emit(o, j, text);
  return 0;
}

int cmd_kahler(const Options& o) {
  if (o.potential.empty()) throw InputError("--potential FILE is required");
  PolyJet K = load_potential(read_json_file(o.potential));
  KahlerChart kc = kahler_chart(K, o.xcap < 0 ? PolyJet::kNoCap : o.xcap, o.freeze_omega);
  PolyJet f = need_expr(o.f, "-f", K.vars());
  PolyJet g = need_expr(o.g, "-g", K.vars());
  CheckReport rep = check_holomorphic_star(kc, f, g, o.order);
  ordered_json j = header(o, "kahler-check");
  j["K"] = print_canonical(K);
  j["order"] = o.order;
  j["omega_frozen"] = kc.omega_frozen;
  j["report"] = report_json(rep);
  std::string text = "K = " + print_canonical(K) + (kc.omega_frozen ? "  (omega frozen at the origin)" : "") + "\n";
  emit(o, j, text + rep.str());
  return rep.all_pass() ? 0 : 1;
}

CheckReport run_suite(const std::string& suite, const Options& o) {
  if (suite == "weyl") return suite_weyl(o.seed);
  if (suite == "metaplectic") return suite_metaplectic(o.seed, o.maxdeg);
  if (suite == "fedosov") {
    int dcap = fedosov_dcap(o, 6);
    if (!o.chart.empty()) return suite_fedosov(need_chart(o), dcap, o.seed);
    std::mt19937_64 rng(o.seed);
    if (o.dim % 2 != 0 || o.dim < 2 || o.dim > 4) throw InputError("--dim must be 2 or 4");
    return suite_fedosov(random_darboux_chart(rng, o.dim / 2, 2, o.xcap < 0 ? PolyJet::kNoCap : o.xcap), dcap,
                         o.seed);
  }
  if (suite == "compat") {
    int dcap = fedosov_dcap(o, 6);
    if (!o.chart.empty()) return check_compatibility(need_chart(o), dcap);
    return check_compatibility(lift_connection(need_metric(o)), dcap);
  }
  if (suite == "qgrad") {
    BaseMetric m = need_metric(o);
    ChartGeometry g = lift_connection(m);
    int dcap = fedosov_dcap(o, 6);
    std::vector<PolyJet> fs;
    if (!o.f.empty()) {
      fs.push_back(need_expr(o.f, "-f", g.coords()));
    } else {
      for (int j = 0; j < m.n(); ++j) fs.push_back(PolyJet::variable(g.coords(), m.n() + j));
      fs.push_back(PolyJet::variable(g.coords(), m.n()) * PolyJet::variable(g.coords(), 2 * m.n() - 1));
    }
    return check_qgrad(build_r(g, dcap), fs);
  }
  if (suite == "homogeneity") return suite_homogeneity(need_metric(o), o.max_total);
  throw InputError("unknown suite '" + suite + "'");
}

int cmd_check(const std::string& suite, const Options& o) {
  CheckReport rep = run_suite(suite, o);
  ordered_json j = header(o, "check");
  j["suite"] = suite;
  j["seed"] = o.seed;
  j["report"] = report_json(rep);
  emit(o, j, "suite " + suite + ", seed " + std::to_string(o.seed) + "\n" + rep.str());
  return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Fedosov quantization on Darboux charts"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c) {
    c->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  };
  auto chart_opts = [&](CLI::App* c) {
    c->add_option("--chart", o.chart, "chart file (JSON)");
    c->add_option("--dcap", o.dcap, "doubled hbar-degree cap");
    c->add_option("--xcap", o.xcap, "coordinate-degree cap, overrides the chart file");
    common(c);
  };

  auto* r = app.add_subcommand("r-form", "Fedosov r of a chart");
  chart_opts(r);
  auto* st = app.add_subcommand("star", "star-product coefficients c_k(f, g)");
  chart_opts(st);
  st->add_option("-f", o.f, "first function");
  st->add_option("-g", o.g, "second function");
  auto* q = app.add_subcommand("quantize", "flat section fhat of f");
  chart_opts(q);
  q->add_option("-f", o.f, "function");
  auto* fl = app.add_subcommand("flatness", "residual of the Fedosov flatness equation");
  chart_opts(fl);
  fl->add_option("-f", o.f, "also check D fhat = 0 for this function");

  auto* lf = app.add_subcommand("lift", "cotangent lift of a base metric, as a chart file");
  lf->add_option("--metric", o.metric, "metric file (JSON)");
  common(lf);
  auto* sg = app.add_subcommand("sigma", "differential operator sigma(f) on the base");
  sg->add_option("--metric", o.metric, "metric file (JSON)");
  sg->add_option("--dcap", o.dcap, "doubled hbar-degree cap (default: sized per request)");
  sg->add_option("-f", o.f, "function of q and p (momenta are p + base name)");
  sg->add_flag("--half-density", o.half_density, "conjugate by det(g)^(1/4)");
  common(sg);

  auto* kh = app.add_subcommand("kahler-check", "holomorphic star-product conditions");
  kh->add_option("--potential", o.potential, "potential file (JSON)");
  kh->add_option("-f", o.f, "holomorphic function");
  kh->add_option("-g", o.g, "holomorphic function");
  kh->add_option("--order", o.order, "highest hbar order checked");
  kh->add_option("--xcap", o.xcap, "coordinate-degree cap for the connection");
  kh->add_flag("--freeze-omega", o.freeze_omega, "accept non-constant i d dbar K, using its value at 0");
  common(kh);

  std::string suite;
  auto* ck = app.add_subcommand("check", "run a check suite");
  ck->add_option("suite", suite, "weyl | fedosov | qgrad | compat | metaplectic | homogeneity")
      ->required()
      ->check(CLI::IsMember({"weyl", "fedosov", "qgrad", "compat", "metaplectic", "homogeneity"}));
  chart_opts(ck);
  ck->add_option("--metric", o.metric, "metric file (JSON)");
  ck->add_option("-f", o.f, "function for qgrad");
  ck->add_option("--seed", o.seed, "seed for randomized suites");
  ck->add_option("--dim", o.dim, "dimension of the random chart for the fedosov suite");
  ck->add_option("--max-total", o.max_total, "largest N + M for homogeneity");
  ck->add_option("--maxdeg", o.maxdeg, "wave-function degree for metaplectic");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (r->parsed()) return cmd_r_form(o);
    if (st->parsed()) return cmd_star(o);
    if (q->parsed()) return cmd_quantize(o);
    if (fl->parsed()) return cmd_flatness(o);
    if (lf->parsed()) return cmd_lift(o);
    if (sg->parsed()) return cmd_sigma(o);
    if (kh->parsed()) return cmd_kahler(o);
    if (ck->parsed()) return cmd_check(suite, o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
