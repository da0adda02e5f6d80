// skewprod command-line front end.
//
// Exit codes: 0 ok, 2 input error, 3 numeric ambiguity.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "skewprod/skewprod.hpp"

using namespace skewprod;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitAmbiguous = 3;
constexpr const char* kPrecisionEnv = "SKEWPROD_PRECISION";

struct RunConfig {
  std::string mode = "exact";
  unsigned precision_bits = kDefaultPrecisionBits;
  double eps_eq = std::ldexp(1.0, -128);
  double eps_root = std::ldexp(1.0, -160);
  std::size_t degree_cap = 1024;
  int digits = 30;
  bool json = false;

  ToleranceContext context() const {
    ToleranceContext c;
    c.eps_eq = eps_eq;
    c.eps_root = eps_root;
    c.precision_bits = precision_bits;
    c.degree_cap = degree_cap;
    c.validate();
    return c;
  }

  ParseOptions parse_options() const {
    ParseOptions o;
    o.backend = mode == "float" ? Backend::floating : Backend::exact;
    o.precision_bits = precision_bits;
    return o;
  }

  Json meta() const {
    return Json{{"mode", mode}, {"precision_bits", precision_bits}, {"eps_eq", eps_eq},
                {"eps_root", eps_root}, {"degree_cap", degree_cap}, {"digits", digits}};
  }
};

unsigned default_precision() {
  const char* env = std::getenv(kPrecisionEnv);
  if (!env || !*env) return kDefaultPrecisionBits;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 16 || v > 1 << 20) throw Error(std::string(kPrecisionEnv) + " must be an integer >= 16");
  return static_cast<unsigned>(v);
}

// A map argument is read from the named file when one exists, else taken literally.
std::string read_source(const std::string& arg) {
  std::ifstream in(arg);
  if (!in) return arg;
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  std::string out;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    out += line + " ";
  }
  return out;
}

class Reporter {
 public:
  explicit Reporter(const RunConfig& cfg) : cfg_(cfg) {}

  std::string s(const Scalar& x) const { return to_string(x, cfg_.digits); }
  std::string s(const UniPoly& p) const { return to_string(p, cfg_.digits); }
  std::string s(const BiPoly& p) const { return to_string(p, cfg_.digits); }
  std::string s(const PlaneMap& m) const { return to_string(m, cfg_.digits); }
  std::string s(const AffineMap1& a) const { return s(a.as_poly('z')); }

  Json scalars(const std::vector<Scalar>& v) const {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(s(x));
    return out;
  }

 private:
  const RunConfig& cfg_;
};

void emit(const RunConfig& cfg, const std::string& command, Json result, const std::string& text) {
  if (cfg.json) {
    Json doc{{"command", command}, {"config", cfg.meta()}};
    for (auto& [k, v] : result.items()) doc[k] = v;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

SkewProduct load_map(const RunConfig& cfg, const std::string& arg) {
  return SkewProduct::from_map(parse_map(read_source(arg), cfg.parse_options()).map);
}

UniPoly load_uni(const RunConfig& cfg, const std::string& arg, char var) {
  return parse_poly(arg, cfg.parse_options()).as_uni().with_var(var);
}

// ---- subcommands

int cmd_dickson(const RunConfig& cfg, int degree, const std::string& a) {
  Reporter r(cfg);
  if (degree < 0) throw DegreeError("degree must be nonnegative");
  Json res{{"degree", degree}};
  std::string poly;
  if (a.empty()) {
    poly = r.s(dickson(degree).poly);
    res["parameter"] = "a";
  } else {
    const Scalar a0 = parse_scalar(a, cfg.parse_options());
    poly = r.s(dickson_specialized(degree, a0));
    res["parameter"] = r.s(a0);
  }
  res["poly"] = poly;
  emit(cfg, "dickson", res, poly + "\n");
  return kExitOk;
}

int cmd_decompose(const RunConfig& cfg, const std::vector<std::string>& factors, const std::vector<std::string>& against) {
  Reporter r(cfg);
  const ToleranceContext ctx = cfg.context();
  std::vector<UniPoly> F, G;
  for (const auto& f : factors) F.push_back(load_uni(cfg, f, 'x'));
  for (const auto& g : against) G.push_back(load_uni(cfg, g, 'x'));
  Json res;
  std::ostringstream text;
  Json fac = Json::array();
  for (const auto& f : F) fac.push_back(r.s(f));
  res["factors"] = fac;
  res["composition"] = r.s(compose_chain(F));
  if (!G.empty()) {
    const auto A = solve_affine_chain(F, G, ctx);
    res["mode"] = "affine_chain";
    res["found"] = A.has_value();
    Json maps = Json::array();
    if (A) {
      for (const auto& a : *A) maps.push_back(r.s(a));
    }
    res["affine_maps"] = maps;
    text << (A ? "affine maps:" : "compositions differ");
    if (A) {
      for (const auto& a : *A) text << " " << r.s(a);
    }
    text << "\n";
  } else {
    const auto data = decompose_special_chain(F, ctx);
    res["mode"] = "special_chain";
    res["found"] = data.has_value();
    if (data) {
      res["case"] = chain_case_name(data->kind);
      res["c"] = r.scalars(data->c);
      res["ell"] = r.scalars(data->ell);
      text << chain_case_name(data->kind) << " chain\n";
      for (std::size_t j = 0; j < data->c.size(); ++j) text << "  c_" << j << " = " << r.s(data->c[j]) << ", l_" << j << " = " << r.s(data->ell[j]) << "\n";
    } else {
      text << "not a special chain\n";
    }
  }
  emit(cfg, "decompose", res, text.str());
  return kExitOk;
}

int cmd_iterate(const RunConfig& cfg, const std::string& map, const std::string& z, const std::string& w, int n) {
  Reporter r(cfg);
  if (n < 0) throw Error("--n must be nonnegative");
  const SkewProduct f = load_map(cfg, map);
  const Scalar z0 = parse_scalar(z, cfg.parse_options());
  const UniPoly Q = fiber_iterate(f, z0, n);
  Json res{{"map", r.s(f.as_map())}, {"z", r.s(z0)}, {"n", n}, {"fiber_iterate", r.s(Q)}};
  std::ostringstream text;
  text << "Q^" << n << " over z = " << r.s(z0) << ": " << r.s(Q) << "\n";
  if (!w.empty()) {
    const Scalar w0 = parse_scalar(w, cfg.parse_options());
    const auto [zn, wn] = orbit_point(f, z0, w0, n);
    res["w"] = r.s(w0);
    res["orbit_point"] = Json::array({r.s(zn), r.s(wn)});
    text << "f^" << n << "(" << r.s(z0) << ", " << r.s(w0) << ") = (" << r.s(zn) << ", " << r.s(wn) << ")\n";
  }
  emit(cfg, "iterate", res, text.str());
  return kExitOk;
}

Json point_json(const Reporter& r, const PeriodicPoint& p) {
  Json j{{"z", r.s(p.z)}};
  if (p.w) j["w"] = r.s(*p.w);
  j["period"] = p.period;
  j["multiplicity"] = p.multiplicity;
  j["base_multiplier"] = r.s(p.base_multiplier);
  if (p.fiber_multiplier) j["fiber_multiplier"] = r.s(*p.fiber_multiplier);
  j["ambiguous"] = p.ambiguous;
  j["residual"] = p.residual;
  return j;
}

int cmd_periodic(const RunConfig& cfg, const std::string& map, int period, const std::string& over) {
  Reporter r(cfg);
  const ToleranceContext ctx = cfg.context();
  if (period < 1) throw Error("--period must be at least 1");
  const SkewProduct f = load_map(cfg, map);
  std::vector<PeriodicPoint> pts;
  Json res{{"map", r.s(f.as_map())}, {"period", period}};
  if (over.empty()) {
    pts = base_periodic_points(f, period, ctx);
    res["kind"] = "base";
  } else {
    const Scalar z0 = parse_scalar(over, cfg.parse_options());
    pts = fiber_periodic_points(f, z0, period, ctx);
    res["kind"] = "fiber";
    res["over"] = r.s(z0);
  }
  bool ambiguous = false;
  Json arr = Json::array();
  std::ostringstream text;
  for (const auto& p : pts) {
    arr.push_back(point_json(r, p));
    ambiguous = ambiguous || p.ambiguous;
    text << (p.w ? "w = " + r.s(*p.w) : "z = " + r.s(p.z)) << "  multiplier "
         << (p.fiber_multiplier ? r.s(*p.fiber_multiplier) : r.s(p.base_multiplier)) << (p.ambiguous ? "  [ambiguous]" : "") << "\n";
  }
  res["points"] = arr;
  res["ambiguous"] = ambiguous;
  emit(cfg, "periodic", res, text.str());
  return ambiguous ? kExitAmbiguous : kExitOk;
}

Json rationality_json(const Reporter& r, const RationalityReport& rep) {
  Json entries = Json::array();
  for (const auto& e : rep.entries) {
    Json j{{"where", e.where}, {"z", r.s(e.z)}};
    if (e.w) j["w"] = r.s(*e.w);
    j["period"] = e.period;
    j["value"] = r.s(e.value);
    j["rational"] = e.rational ? Json(e.rational->get_str()) : Json(nullptr);
    entries.push_back(j);
  }
  return Json{{"label", RationalityReport::label}, {"max_denominator", rep.max_denominator},
              {"all_rational", rep.all_rational}, {"entries", entries}};
}

std::string rationality_text(const Reporter& r, const RationalityReport& rep) {
  std::ostringstream text;
  text << RationalityReport::label << "\n";
  for (const auto& e : rep.entries) {
    text << "  " << e.where << " period " << e.period << " z = " << r.s(e.z);
    if (e.w) text << " w = " << r.s(*e.w);
    text << ": " << r.s(e.value) << " -> " << (e.rational ? e.rational->get_str() : std::string("none")) << "\n";
  }
  text << "all rational: " << (rep.all_rational ? "yes" : "no") << "\n";
  return text.str();
}

int cmd_multipliers(const RunConfig& cfg, const std::string& map, int max_period, long max_den) {
  Reporter r(cfg);
  const ToleranceContext ctx = cfg.context();
  if (max_period < 1) throw Error("--max-period must be at least 1");
  if (max_den < 1) throw Error("--max-denominator must be positive");
  const SkewProduct f = load_map(cfg, map);
  const auto rep = multiplier_rationality_report(f, max_period, ctx, max_den);
  Json res{{"map", r.s(f.as_map())}, {"max_period", max_period}};
  res["rationality"] = rationality_json(r, rep);
  emit(cfg, "multipliers", res, rationality_text(r, rep));
  return kExitOk;
}

Json form_json(const Reporter& r, const OneVarSpecialForm& b) {
  Json j{{"kind", form_kind_name(b.kind)}, {"conjugation", r.s(b.conjugation)}};
  j["zeta"] = b.kind == FormKind::chebyshev_plus || b.kind == FormKind::chebyshev_minus ? Json(r.s(b.zeta)) : Json(nullptr);
  j["promoted"] = b.promoted;
  return j;
}

int cmd_classify(const RunConfig& cfg, const std::string& map, bool exhaustive, int converse, int rationality) {
  Reporter r(cfg);
  const ToleranceContext ctx = cfg.context();
  const SkewProduct f = load_map(cfg, map);
  ClassifyOptions opt;
  opt.exhaustive = exhaustive;
  const Classification c = classify_skew(f, ctx, opt);

  Json res{{"map", r.s(f.as_map())}, {"regular", c.regular}, {"special", c.special()}, {"kind", skew_kind_name(c.kind)}};
  res["p_kind"] = c.kind == SkewKind::dagger1 ? Json(form_kind_name(c.p_kind)) : Json(nullptr);
  res["q_kind"] = c.kind == SkewKind::dagger1 ? Json(form_kind_name(c.q_kind)) : Json(nullptr);
  res["zeta"] = c.kind == SkewKind::dagger2 ? Json(r.s(c.zeta)) : Json(nullptr);
  res["m"] = c.kind == SkewKind::dagger2 ? Json(c.m) : Json(nullptr);
  res["phi"] = c.regular && c.centered ? Json(r.s(c.phi)) : Json(nullptr);
  res["base_form"] = c.regular ? form_json(r, c.base_form) : Json(nullptr);
  Json chain = Json::array();
  for (const auto& t : c.conjugation_chain) chain.push_back(to_string(t, cfg.digits));
  res["conjugation_chain"] = chain;
  res["normal_form"] = c.normal_form ? Json(r.s(c.normal_form->as_map())) : Json(nullptr);
  res["residual"] = c.residual;
  res["failed_step"] = c.failed_step.empty() ? Json(nullptr) : Json(c.failed_step);
  res["ambiguous"] = c.ambiguous;
  Json diags = Json::array();
  for (const auto& e : c.diagnostics) diags.push_back(Json{{"step", e.step}, {"status", e.status}, {"detail", e.detail}});
  res["diagnostics"] = diags;

  std::ostringstream text;
  text << "map: " << r.s(f.as_map()) << "\n";
  if (!c.regular) {
    text << "not regular\n";
  } else if (c.kind == SkewKind::dagger1) {
    text << "special (dagger1): p " << form_kind_name(c.p_kind) << ", q " << form_kind_name(c.q_kind) << "\n";
  } else if (c.kind == SkewKind::dagger2) {
    text << "special (dagger2): zeta = " << r.s(c.zeta) << ", m = " << c.m << "\n";
  } else {
    text << "not special (failed at " << c.failed_step << ")\n";
  }
  if (c.regular && c.centered) text << "phi(z) = " << r.s(c.phi) << "\n";
  if (c.normal_form) text << "normal form: " << r.s(c.normal_form->as_map()) << "\n";
  for (const auto& e : c.diagnostics) text << "  [" << e.status << "] " << e.step << ": " << e.detail << "\n";

  bool ambiguous = c.ambiguous;
  if (converse > 0) {
    if (!c.special()) throw Error("--converse-check needs a map classified special");
    const auto rep = converse_fiber_test(c, converse, ctx);
    Json entries = Json::array();
    for (const auto& e : rep.entries) {
      entries.push_back(Json{{"z0", r.s(e.z0)}, {"period", e.period}, {"deviation", e.deviation},
                             {"phi_zero", e.phi_zero}, {"unit_deviation", e.unit_deviation}, {"passed", e.passed}});
    }
    res["converse_check"] = Json{{"max_period", converse}, {"all_passed", rep.all_passed}, {"max_deviation", rep.max_deviation}, {"entries", entries}};
    text << "converse fiber test (period <= " << converse << "): " << (rep.all_passed ? "passed" : "FAILED") << ", max deviation "
         << rep.max_deviation << "\n";
    ambiguous = ambiguous || !rep.all_passed;
  }
  if (rationality > 0) {
    const auto rep = multiplier_rationality_report(f, rationality, ctx);
    res["rationality"] = rationality_json(r, rep);
    text << rationality_text(r, rep);
  }
  emit(cfg, "classify", res, text.str());
  return ambiguous ? kExitAmbiguous : kExitOk;
}

int cmd_identities(const RunConfig& cfg, int max_degree, int max_product, int max_laurent) {
  IdentityLimits lim;
  lim.max_degree = max_degree;
  lim.max_product = max_product;
  lim.max_laurent_degree = max_laurent;
  if (max_degree < 1 || max_product < 1 || max_laurent < 0) throw Error("limits must be positive");
  const auto rep = verify_dickson_identities(lim);
  std::map<std::string, std::pair<int, int>> by_name;  // passed, total
  Json failed = Json::array();
  for (const auto& c : rep.checks) {
    auto& slot = by_name[c.name];
    ++slot.second;
    slot.first += c.passed;
    if (!c.passed) failed.push_back(Json{{"name", c.name}, {"d", c.d}, {"m", c.m}});
  }
  Json groups = Json::array();
  std::ostringstream text;
  for (const auto& [name, pt] : by_name) {
    groups.push_back(Json{{"name", name}, {"passed", pt.first}, {"total", pt.second}});
    text << name << ": " << pt.first << "/" << pt.second << "\n";
  }
  text << rep.checks.size() << " checks, " << rep.failures << " failures\n";
  Json res{{"limits", Json{{"max_degree", max_degree}, {"max_product", max_product}, {"max_laurent_degree", max_laurent}}},
           {"checks", rep.checks.size()}, {"failures", rep.failures}, {"groups", groups}, {"failed", failed}};
  emit(cfg, "verify-identities", res, text.str());
  return rep.failures == 0 ? kExitOk : kExitAmbiguous;
}

int cmd_semiconjugacy(const RunConfig& cfg, const std::string& f_arg, const std::string& pi_arg, const std::string& g_arg) {
  Reporter r(cfg);
  const ToleranceContext ctx = cfg.context();
  const PlaneMap f = parse_map(read_source(f_arg), cfg.parse_options()).map;
  const PlaneMap pi = parse_map(read_source(pi_arg), cfg.parse_options()).map;
  const PlaneMap g = parse_map(read_source(g_arg), cfg.parse_options()).map;
  const auto res_ = verify_semiconjugacy(f, pi, g, ctx);
  Json res{{"f", r.s(f)}, {"pi", r.s(pi)}, {"g", r.s(g)}, {"holds", res_.holds},
           {"residual", r.s(res_.residual)}, {"max_deviation", res_.max_deviation}};
  std::ostringstream text;
  text << "f o pi " << (res_.holds ? "=" : "!=") << " pi o g\nresidual: " << r.s(res_.residual) << "\n";
  emit(cfg, "semiconjugacy", res, text.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"skewprod: Dickson polynomials and special polynomial skew products"};
  app.require_subcommand(1);
  RunConfig cfg;
  try {
    cfg.precision_bits = default_precision();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  app.add_option("--mode", cfg.mode, "coefficient backend")->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--precision", cfg.precision_bits, std::string("MPFR bits (default from ") + kPrecisionEnv + ", else 256)");
  app.add_option("--eps-eq", cfg.eps_eq, "coefficient equality tolerance");
  app.add_option("--eps-root", cfg.eps_root, "root residual tolerance");
  app.add_option("--degree-cap", cfg.degree_cap, "largest degree sent to the root finder");
  app.add_option("--digits", cfg.digits, "significant digits for floating output")->check(CLI::Range(1, 10000));
  app.add_flag("--json", cfg.json, "emit JSON");

  std::function<int()> action;

  auto* dk = app.add_subcommand("dickson", "print D_d(x, a)");
  int dk_degree = 0;
  std::string dk_a;
  dk->add_option("--degree,-d", dk_degree)->required();
  dk->add_option("--a", dk_a, "specialize the parameter");
  dk->callback([&] { action = [&] { return cmd_dickson(cfg, dk_degree, dk_a); }; });

  auto* de = app.add_subcommand("decompose", "recover Dickson chain parameters or the affine maps between two chains");
  std::vector<std::string> de_factors, de_against;
  de->add_option("--factor", de_factors, "f_0 first")->required();
  de->add_option("--against", de_against, "second chain for the affine solver");
  de->callback([&] { action = [&] { return cmd_decompose(cfg, de_factors, de_against); }; });

  auto* it = app.add_subcommand("iterate", "fiber iterate Q_z^n and orbit points");
  std::string it_map, it_z, it_w;
  int it_n = 1;
  it->add_option("--map", it_map)->required();
  it->add_option("--z", it_z)->required();
  it->add_option("--w", it_w);
  it->add_option("--n", it_n);
  it->callback([&] { action = [&] { return cmd_iterate(cfg, it_map, it_z, it_w, it_n); }; });

  auto* pe = app.add_subcommand("periodic", "periodic points of exact period n");
  std::string pe_map, pe_over;
  int pe_n = 1;
  pe->add_option("--map", pe_map)->required();
  pe->add_option("--period,-n", pe_n);
  pe->add_option("--fiber-over", pe_over, "fiber points over a base periodic point");
  pe->callback([&] { action = [&] { return cmd_periodic(cfg, pe_map, pe_n, pe_over); }; });

  auto* mu = app.add_subcommand("multipliers", "multiplier rationality scan (heuristic)");
  std::string mu_map;
  int mu_n = 2;
  long mu_den = 10000;
  mu->add_option("--map", mu_map)->required();
  mu->add_option("--max-period,-N", mu_n);
  mu->add_option("--max-denominator", mu_den);
  mu->callback([&] { action = [&] { return cmd_multipliers(cfg, mu_map, mu_n, mu_den); }; });

  auto* cl = app.add_subcommand("classify", "decide whether a skew product is special");
  std::string cl_map;
  bool cl_exh = false;
  int cl_conv = 0, cl_rat = 0;
  cl->add_option("--map", cl_map)->required();
  cl->add_flag("--exhaustive", cl_exh);
  cl->add_option("--converse-check", cl_conv, "max period for the converse fiber test");
  cl->add_option("--rationality", cl_rat, "max period for the multiplier scan");
  cl->add_flag("--json", cfg.json, "emit JSON");
  cl->callback([&] { action = [&] { return cmd_classify(cfg, cl_map, cl_exh, cl_conv, cl_rat); }; });

  auto* vi = app.add_subcommand("verify-identities", "exact Dickson identity suite");
  int vi_deg = 12, vi_prod = 36, vi_laurent = 10;
  vi->add_option("--max-degree", vi_deg);
  vi->add_option("--max-product", vi_prod);
  vi->add_option("--max-laurent-degree", vi_laurent);
  vi->callback([&] { action = [&] { return cmd_identities(cfg, vi_deg, vi_prod, std::min(vi_laurent, vi_deg)); }; });

  auto* sc = app.add_subcommand("semiconjugacy", "check f o pi = pi o g");
  std::string sc_f, sc_pi, sc_g;
  sc->add_option("--f", sc_f)->required();
  sc->add_option("--pi", sc_pi)->required();
  sc->add_option("--g", sc_g)->required();
  sc->callback([&] { action = [&] { return cmd_semiconjugacy(cfg, sc_f, sc_pi, sc_g); }; });

  for (auto* sub : {dk, de, it, pe, mu, vi, sc}) sub->add_flag("--json", cfg.json, "emit JSON");
  // global options may follow the subcommand
  for (auto* sub : {dk, de, it, pe, mu, cl, vi, sc}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }
  try {
    if (cfg.mode == "float" && cfg.precision_bits < 16) throw Error("precision must be at least 16 bits");
    return action();
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitAmbiguous;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
