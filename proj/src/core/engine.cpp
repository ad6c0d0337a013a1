#include "core/engine.hpp"

#include <json.hpp>

#include <cmath>
#include <sstream>

#include "core/fd_oracle.hpp"
#include "core/report.hpp"

namespace fbh {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw UsageError("bad number '" + s + "'");
    return v;
  } catch (const std::exception&) {
    throw UsageError("bad number '" + s + "'");
  }
}

// Everything run_verify needs, resolved from a family or custom input.
struct VerifySetup {
  ConformalSpace space;
  ImmersionChart chart;
  Expr f;
  Box box;
  std::optional<VerdictKind> expected;
  std::string label;
};

VerifySetup build_setup(const RunConfig& cfg) {
  VerifySetup vs;
  if (!cfg.family.empty()) {
    FamilySpec fs = catalog(cfg.family, cfg.m, cfg.params);
    vs.space = fs.space;
    vs.chart = fs.chart;
    vs.f = fs.f;
    vs.box = fs.default_box;
    vs.expected = fs.expected;
    vs.label = fs.name;
  } else {
    if (cfg.sigma_text.empty())
      throw UsageError("verify needs --family or --sigma");
    if (cfg.m < 1 || cfg.m > 9) throw UsageError("verify needs --m in [1, 9]");
    Bindings params;
    params.params = cfg.params;
    Expr sigma = parse(cfg.sigma_text);
    std::vector<Expr> guards;
    for (const auto& g : cfg.guard_texts) guards.push_back(parse(g));
    vs.space = ConformalSpace::make(cfg.m + 1, sigma, params, guards);
    if (!cfg.hyperplane_text.empty()) {
      auto halves = split(cfg.hyperplane_text, ';');
      if (halves.size() != 2)
        throw UsageError("--hyperplane wants \"a1,...,am;a_{m+1}\"");
      auto parts = split(halves[0], ',');
      if (static_cast<int>(parts.size()) != cfg.m)
        throw UsageError("--hyperplane wants exactly m slope coefficients");
      std::vector<double> a;
      for (const auto& p : parts) a.push_back(parse_double(p));
      a.push_back(parse_double(halves[1]));
      vs.chart = ImmersionChart::hyperplane(cfg.m, a);
    } else if (!cfg.immersion_text.empty()) {
      auto parts = split(cfg.immersion_text, '|');
      if (static_cast<int>(parts.size()) != cfg.m + 1)
        throw UsageError("--immersion wants m+1 expressions separated by '|'");
      std::vector<Expr> comps;
      for (const auto& p : parts) comps.push_back(parse(p));
      vs.chart = ImmersionChart::general(cfg.m, comps, params);
    } else {
      throw UsageError("custom verify needs --hyperplane or --immersion");
    }
    vs.chart.params = params;
    vs.f = cfg.f_text.empty() ? Expr::number(1.0) : parse(cfg.f_text);
    vs.box = Box::cube(cfg.m, -2.0, 2.0);
    vs.label = "custom";
  }
  if (cfg.box) {
    vs.box = Box::cube(vs.chart.m, cfg.box->first, cfg.box->second);
  }
  return vs;
}

void write_config(JsonWriter& w, const RunConfig& cfg) {
  w.key("config");
  w.begin_object();
  w.key("command");
  w.value(cfg.command);
  if (!cfg.family.empty()) {
    w.key("family");
    w.value(cfg.family);
  }
  if (cfg.m > 0) {
    w.key("m");
    w.value(cfg.m);
  }
  if (cfg.n > 0) {
    w.key("n");
    w.value(cfg.n);
  }
  if (!cfg.sigma_text.empty()) {
    w.key("sigma");
    w.value(cfg.sigma_text);
  }
  if (!cfg.hyperplane_text.empty()) {
    w.key("hyperplane");
    w.value(cfg.hyperplane_text);
  }
  if (!cfg.immersion_text.empty()) {
    w.key("immersion");
    w.value(cfg.immersion_text);
  }
  if (!cfg.f_text.empty()) {
    w.key("f");
    w.value(cfg.f_text);
  }
  if (!cfg.guard_texts.empty()) {
    w.key("guards");
    w.begin_array();
    for (const auto& g : cfg.guard_texts) w.value(g);
    w.end_array();
  }
  if (!cfg.params.empty()) {
    w.key("params");
    w.begin_object();
    for (const auto& [k, v] : cfg.params) {
      w.key(k);
      w.value(v);
    }
    w.end_object();
  }
  if (!cfg.equation.empty()) {
    w.key("equation");
    w.value(cfg.equation);
  }
  if (!cfg.expect.empty()) {
    w.key("expect");
    w.value(cfg.expect);
  }
  if (cfg.command == "verify" || cfg.command == "curvature") {
    w.key("samples");
    w.value(cfg.samples);
    w.key("seed");
    w.value(static_cast<unsigned long long>(cfg.seed));
  }
  if (cfg.command == "verify") {
    w.key("tol_verify");
    w.value(cfg.tol_verify);
    w.key("tol_falsify");
    w.value(cfg.tol_falsify);
  }
  if (cfg.command == "curvature") {
    w.key("tol_zero");
    w.value(cfg.tol_zero);
  }
  if (cfg.box) {
    w.key("box");
    w.begin_array();
    w.value(cfg.box->first);
    w.value(cfg.box->second);
    w.end_array();
  }
  w.key("format");
  w.value(cfg.format);
  w.end_object();
}

void write_point(JsonWriter& w, const ResidualReport& r) {
  w.begin_object();
  w.key("x");
  w.value_array(r.x);
  w.key("H");
  w.value(r.H);
  w.key("normA2");
  w.value(r.normA2);
  w.key("ric_nn");
  w.value(r.ric_nn);
  w.key("r1_f");
  w.value(r.r1_f);
  w.key("r2_f_norm");
  w.value(r.r2_f_norm);
  w.key("r1_bi");
  w.value(r.r1_bi);
  w.key("r2_bi_norm");
  w.value(r.r2_bi_norm);
  w.key("n1");
  w.value(r.n1);
  w.key("n2");
  w.value(r.n2);
  w.key("f");
  w.value(r.f_value);
  w.end_object();
}

RunResult run_verify(const RunConfig& cfg) {
  VerifySetup vs = build_setup(cfg);
  Tols tols;
  tols.verify = cfg.tol_verify;
  tols.falsify = cfg.tol_falsify;
  SampleSpec ss{cfg.samples, cfg.seed, vs.box};
  std::vector<ResidualReport> reports;
  Verdict v = classify(vs.space, vs.chart, vs.f, ss, tols, cfg.jobs, &reports);

  bool pass = vs.expected ? v.kind == *vs.expected : v.kind != VerdictKind::NotFBiharmonic;

  RunResult out;
  out.exit_code = pass ? kPass : kClaimFailed;
  if (cfg.format == "json") {
    JsonWriter w;
    w.begin_object();
    write_config(w, cfg);
    w.key("points");
    w.begin_array();
    for (const auto& r : reports) write_point(w, r);
    w.end_array();
    w.key("summary");
    w.begin_object();
    w.key("verdict");
    w.value(verdict_name(v.kind));
    w.key("max_norm_residual");
    w.value(v.max_f_residual);
    if (!pass && v.worst_index >= 0) {
      w.key("counterexample");
      w.begin_object();
      w.key("index");
      w.value(v.worst_index);
      w.key("x");
      w.value_array(reports[v.worst_index].x);
      w.key("term");
      w.value(v.worst_term);
      w.key("normalized_residual");
      w.value(v.max_f_residual);
      w.end_object();
    }
    w.end_object();
    w.end_object();
    out.report = w.take();
    return out;
  }
  if (cfg.format == "csv") {
    std::string s = "index";
    for (int i = 1; i <= vs.chart.m; ++i) s += ",x" + std::to_string(i);
    s += ",H,normA2,ric_nn,r1_f,r2_f_norm,r1_bi,r2_bi_norm,n1,n2,f\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const auto& r = reports[i];
      s += std::to_string(i);
      for (double c : r.x) s += "," + fmt_double(c);
      for (double vv : {r.H, r.normA2, r.ric_nn, r.r1_f, r.r2_f_norm, r.r1_bi, r.r2_bi_norm,
                        r.n1, r.n2, r.f_value})
        s += "," + fmt_double(vv);
      s += "\n";
    }
    s += "# verdict=" + std::string(verdict_name(v.kind)) +
         " max_norm_residual=" + fmt_double(v.max_f_residual) + "\n";
    out.report = s;
    return out;
  }
  // text
  std::ostringstream os;
  os << "verify " << vs.label;
  if (cfg.m > 0) os << " (m=" << vs.chart.m << ")";
  os << ": verdict " << verdict_name(v.kind);
  if (vs.expected) os << " [expected " << verdict_name(*vs.expected) << "]";
  os << "\n";
  os << "points " << v.points << ", max normalized residuals: f-biharmonic "
     << fmt_double(v.max_f_residual) << ", biharmonic " << fmt_double(v.max_bi_residual)
     << "\n";
  os << "f nonconstant: " << (v.f_nonconstant ? "yes" : "no") << "\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    os << "[" << i << "] x=(";
    for (std::size_t j = 0; j < r.x.size(); ++j) os << (j ? "," : "") << fmt_double(r.x[j]);
    os << ") H=" << fmt_double(r.H) << " nr1_f=" << fmt_double(r.nr1_f())
       << " nr2_f=" << fmt_double(r.nr2_f()) << " nr1_bi=" << fmt_double(r.nr1_bi())
       << " nr2_bi=" << fmt_double(r.nr2_bi()) << "\n";
  }
  if (!pass && v.worst_index >= 0) {
    const auto& r = reports[v.worst_index];
    os << "violation at point " << v.worst_index << " x=(";
    for (std::size_t j = 0; j < r.x.size(); ++j) os << (j ? "," : "") << fmt_double(r.x[j]);
    os << ") term " << v.worst_term << " normalized residual "
       << fmt_double(v.max_f_residual) << "\n";
  }
  out.report = os.str();
  return out;
}

RunResult run_curvature(const RunConfig& cfg) {
  if (cfg.sigma_text.empty()) throw UsageError("curvature needs --sigma");
  if (cfg.n < 2 || cfg.n > 10) throw UsageError("curvature needs --n in [2, 10]");
  if (cfg.expect != "negative" && cfg.expect != "zero" && cfg.expect != "positive")
    throw UsageError("curvature needs --expect negative|zero|positive");
  Bindings params;
  params.params = cfg.params;
  std::vector<Expr> guards;
  for (const auto& g : cfg.guard_texts) guards.push_back(parse(g));
  ConformalSpace space =
      ConformalSpace::make(cfg.n, parse(cfg.sigma_text), params, guards);
  Box box = cfg.box ? Box::cube(cfg.n, cfg.box->first, cfg.box->second)
                    : Box::cube(cfg.n, 0.5, 2.5);

  double kmin = 0, kmax = 0;
  std::vector<double> argmin, argmax;
  bool have = false;
  for (int i = 0; i < cfg.samples; ++i) {
    Rng rng = stream_rng(cfg.seed, static_cast<std::uint64_t>(i));
    std::vector<double> p(cfg.n), X(cfg.n), Y(cfg.n);
    double K = 0;
    bool got = false;
    for (int attempt = 0; attempt < 4000 && !got; ++attempt) {
      for (int a = 0; a < cfg.n; ++a) p[a] = rng.uniform(box.lo[a], box.hi[a]);
      if (!space.admissible(p)) continue;
      for (int a = 0; a < cfg.n; ++a) X[a] = rng.uniform(-1.0, 1.0);
      for (int a = 0; a < cfg.n; ++a) Y[a] = rng.uniform(-1.0, 1.0);
      try {
        K = sectional(space, p, X, Y);
        got = true;
      } catch (const DegeneratePlaneError&) {
        continue;
      } catch (const DomainError&) {
        continue;
      }
    }
    if (!got) throw UsageError("curvature sampling found no admissible point/plane");
    if (!have || K < kmin) {
      kmin = K;
      argmin = p;
    }
    if (!have || K > kmax) {
      kmax = K;
      argmax = p;
    }
    have = true;
  }

  bool pass = false;
  if (cfg.expect == "negative") pass = kmax < 0;
  if (cfg.expect == "positive") pass = kmin > 0;
  if (cfg.expect == "zero") pass = std::max(std::abs(kmin), std::abs(kmax)) < cfg.tol_zero;

  RunResult out;
  out.exit_code = pass ? kPass : kClaimFailed;
  if (cfg.format == "json") {
    JsonWriter w;
    w.begin_object();
    write_config(w, cfg);
    w.key("summary");
    w.begin_object();
    w.key("samples");
    w.value(cfg.samples);
    w.key("min_K");
    w.value(kmin);
    w.key("max_K");
    w.value(kmax);
    w.key("argmin");
    w.value_array(argmin);
    w.key("argmax");
    w.value_array(argmax);
    w.key("expect");
    w.value(cfg.expect);
    w.key("pass");
    w.value(pass);
    w.end_object();
    w.end_object();
    out.report = w.take();
    return out;
  }
  std::ostringstream os;
  os << "curvature sigma=" << cfg.sigma_text << " n=" << cfg.n << ": K in ["
     << fmt_double(kmin) << ", " << fmt_double(kmax) << "] over " << cfg.samples
     << " samples; expect " << cfg.expect << ": " << (pass ? "PASS" : "FAIL") << "\n";
  out.report = os.str();
  return out;
}

RunResult run_ansatz(const RunConfig& cfg) {
  if (cfg.equation != "pq1" && cfg.equation != "pc1")
    throw UsageError("ansatz needs --equation pq1|pc1");
  if (cfg.m < 2) throw UsageError("ansatz needs integer --m >= 2");
  AnsatzEq eq = cfg.equation == "pq1" ? AnsatzEq::PQ1Power : AnsatzEq::Pc1AffinePower;
  AnsatzReduction red = ansatz_reduce(eq, Rational(cfg.m));
  RunResult out;
  out.exit_code = kPass;
  if (cfg.format == "json") {
    JsonWriter w;
    w.begin_object();
    write_config(w, cfg);
    w.key("quadratic");
    w.begin_object();
    w.key("a");
    w.value(red.a.str());
    w.key("b");
    w.value(red.b.str());
    w.key("c");
    w.value(red.c.str());
    w.end_object();
    w.key("roots");
    w.begin_array();
    w.value(red.roots.first.str());
    w.value(red.roots.second.str());
    w.end_array();
    w.key("base_exponent");
    w.value(red.z_exp_tcoef.str() + "t" + (red.z_exp_const.sign() < 0 ? "" : "+") +
            red.z_exp_const.str());
    w.key("line");
    w.value(red.equation_line());
    w.end_object();
    out.report = w.take();
    return out;
  }
  out.report = red.equation_line() + "\n";
  return out;
}

RunResult run_selftest_cmd(const RunConfig& cfg) {
  auto suites = run_selftest_suites(cfg.seed);
  bool all = true;
  for (const auto& s : suites) all = all && s.pass;
  RunResult out;
  out.exit_code = all ? kPass : kClaimFailed;
  if (cfg.format == "json") {
    JsonWriter w;
    w.begin_object();
    write_config(w, cfg);
    w.key("suites");
    w.begin_array();
    for (const auto& s : suites) {
      w.begin_object();
      w.key("name");
      w.value(s.name);
      w.key("pass");
      w.value(s.pass);
      w.key("detail");
      w.value(s.detail);
      w.end_object();
    }
    w.end_array();
    w.key("summary");
    w.begin_object();
    w.key("pass");
    w.value(all);
    w.end_object();
    w.end_object();
    out.report = w.take();
    return out;
  }
  std::ostringstream os;
  for (const auto& s : suites)
    os << s.name << ": " << (s.pass ? "PASS" : "FAIL") << " (" << s.detail << ")\n";
  os << (all ? "selftest PASS" : "selftest FAIL") << "\n";
  out.report = os.str();
  return out;
}

}  // namespace

RunConfig RunConfig::from_json(const std::string& command, const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text.empty() ? "{}" : json_text);
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad config JSON: ") + e.what());
  }
  RunConfig cfg;
  cfg.command = command;
  try {
    cfg.family = j.value("family", "");
    cfg.m = j.value("m", 0);
    cfg.n = j.value("n", 0);
    cfg.sigma_text = j.value("sigma", "");
    cfg.f_text = j.value("f", "");
    cfg.hyperplane_text = j.value("hyperplane", "");
    cfg.immersion_text = j.value("immersion", "");
    if (j.contains("params"))
      for (auto it = j["params"].begin(); it != j["params"].end(); ++it)
        cfg.params[it.key()] = it.value().get<double>();
    if (j.contains("guards"))
      for (const auto& g : j["guards"]) cfg.guard_texts.push_back(g.get<std::string>());
    cfg.samples = j.value("samples", 100);
    cfg.seed = j.value("seed", static_cast<std::uint64_t>(1));
    cfg.tol_verify = j.value("tol_verify", 1e-8);
    cfg.tol_falsify = j.value("tol_falsify", 1e-3);
    cfg.tol_zero = j.value("tol_zero", 1e-10);
    if (j.contains("box")) {
      auto b = j["box"];
      if (!b.is_array() || b.size() != 2) throw UsageError("box wants [lo, hi]");
      cfg.box = std::make_pair(b[0].get<double>(), b[1].get<double>());
    }
    cfg.jobs = j.value("jobs", 1);
    cfg.expect = j.value("expect", "");
    cfg.equation = j.value("equation", "");
    cfg.format = j.value("format", "text");
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad config value: ") + e.what());
  }
  if (cfg.format != "text" && cfg.format != "json" && cfg.format != "csv")
    throw UsageError("format must be text, json or csv");
  if (cfg.samples < 1) throw UsageError("samples must be >= 1");
  if (cfg.jobs < 1) throw UsageError("jobs must be >= 1");
  return cfg;
}

RunResult run(const RunConfig& cfg) {
  if (cfg.command == "verify") return run_verify(cfg);
  if (cfg.command == "curvature") return run_curvature(cfg);
  if (cfg.command == "ansatz") return run_ansatz(cfg);
  if (cfg.command == "selftest") return run_selftest_cmd(cfg);
  throw UsageError("unknown command '" + cfg.command + "'");
}

// ---- selftest suites --------------------------------------------------------

namespace {

struct CorpusEntry {
  const char* text;
  int n_vars;
  double lo, hi;
};

// every elementary function, rational powers included
const CorpusEntry kAdCorpus[] = {
    {"z^2+3*z", 1, 0.6, 2.5},
    {"z^(2/5)", 1, 0.8, 3.0},
    {"z^(-1)", 1, 0.6, 2.5},
    {"z^(3/13)", 1, 0.8, 3.0},
    {"exp(z)*sin(z)", 1, -1.0, 1.0},
    {"ln(1+z^2)", 1, 0.5, 2.0},
    {"sqrt(1+z^2)", 1, -1.5, 1.5},
    {"atan(z/2)", 1, -1.5, 1.5},
    {"abs(z)*z", 1, 0.5, 2.0},
    {"cos(z)/(2+sin(z))", 1, -1.5, 1.5},
    {"1/(x1*x2+3)", 2, 0.5, 1.8},
    {"exp(x1-x2)*atan(x1*x2)", 2, 0.5, 1.5},
    {"(x1+x2+z+10)^(3/13)", 3, -1.0, 1.0},
    {"sqrt(x1^2+x2^2+1)*ln(2+z)", 3, 0.5, 1.5},
    {"sin(x1)*cos(x2)*exp(z/3)", 3, -1.2, 1.2},
};

SuiteResult suite_jet_vs_fd(std::uint64_t seed) {
  SuiteResult res{"jet_vs_fd_oracle", true, ""};
  Bindings none;
  int checked = 0;
  double worst = 0;
  for (const auto& entry : kAdCorpus) {
    Expr e = parse(entry.text);
    auto js = JetSpace::get(entry.n_vars, 3);
    for (int rep = 0; rep < 5; ++rep) {
      Rng rng = stream_rng(seed + checked, rep);
      std::vector<double> p(entry.n_vars);
      for (auto& c : p) c = rng.uniform(entry.lo, entry.hi);
      EvalEnv<Jet> env;
      env.bindings = &none;
      env.exemplar = Jet::constant(js, 0.0);
      for (int i = 0; i < entry.n_vars; ++i) {
        Jet s = Jet::seed_value(js, i, p[i]);
        if (i + 1 < entry.n_vars) env.vars["x" + std::to_string(i + 1)] = s;
        if (i + 1 == entry.n_vars) {
          env.vars["z"] = s;
          env.vars["x" + std::to_string(entry.n_vars)] = s;
        }
      }
      Jet val;
      try {
        val = evaluate(e, env);
      } catch (const DomainError&) {
        continue;
      }
      for (int idx = 1; idx < js->size(); ++idx) {
        const MultiIndex& alpha = js->multi_index(idx);
        int order = alpha.degree();
        double fact = 1;
        for (int ee : alpha.exponents)
          for (int q = 2; q <= ee; ++q) fact *= q;
        double jet_deriv = val.coeff(idx) * fact;
        double steps[4] = {0, 1e-5, 2e-4, 1e-3};
        double scale = 1.0;
        for (int i = 0; i < entry.n_vars; ++i)
          if (alpha.exponents[i] > 0) scale = std::max(scale, std::abs(p[i]));
        double fd = fd_oracle(e, none, p, alpha, steps[order] * scale);
        double tol = order <= 2 ? 1e-6 : 1e-4;
        double rel = std::abs(jet_deriv - fd) /
                     std::max({1.0, std::abs(jet_deriv), std::abs(fd)});
        worst = std::max(worst, rel / tol);
        if (rel > tol) {
          res.pass = false;
          res.detail = std::string(entry.text) + " order " + std::to_string(order) +
                       " rel " + fmt_double(rel);
          return res;
        }
        ++checked;
      }
    }
  }
  res.detail = std::to_string(checked) + " derivatives, worst margin " + fmt_double(worst);
  return res;
}

SuiteResult suite_tensor_symmetries(std::uint64_t seed) {
  SuiteResult res{"tensor_symmetries", true, ""};
  struct Case {
    const char* sigma;
    int n;
  };
  const Case cases[] = {
      {"z", 3}, {"(1+x1^2+x2^2+z^2)/2", 3}, {"z^(3/13)", 4}, {"1/(z+1)", 4},
      {"(x1+x2+x3+z+2)^(3/13)", 4}};
  for (const auto& c : cases) {
    ConformalSpace space = ConformalSpace::make(c.n, parse(c.sigma), {}, {parse("z")});
    auto pts = sample_ambient_points(space, Box::cube(c.n, 0.5, 2.0), 6, seed + 11);
    for (const auto& p : pts) {
      CurvatureData cd = curvature_at(space, p);
      double maxR = 1e-300;
      for (double v : cd.riemann) maxR = std::max(maxR, std::abs(v));
      auto nrm = [&](double v) { return std::abs(v) / maxR; };
      for (int i = 0; i < c.n; ++i)
        for (int j = 0; j < c.n; ++j)
          for (int k = 0; k < c.n; ++k)
            for (int l = 0; l < c.n; ++l) {
              double r = cd.riem(i, j, k, l);
              double checks[4] = {nrm(r + cd.riem(j, i, k, l)), nrm(r + cd.riem(i, j, l, k)),
                                  nrm(r - cd.riem(k, l, i, j)),
                                  nrm(r + cd.riem(i, k, l, j) + cd.riem(i, l, j, k))};
              for (double chk : checks)
                if (chk > 1e-9) {
                  res.pass = false;
                  res.detail = std::string("sigma=") + c.sigma + " broke a symmetry: " +
                               fmt_double(chk);
                  return res;
                }
            }
      for (int i = 0; i < c.n; ++i)
        for (int j = 0; j < c.n; ++j)
          if (std::abs(cd.ric(i, j) - cd.ric(j, i)) >
              1e-9 * std::max(1.0, std::abs(cd.ric(i, j)))) {
            res.pass = false;
            res.detail = "ricci asymmetry";
            return res;
          }
    }
  }
  res.detail = "antisymmetry, pair symmetry, Bianchi, Ricci symmetry";
  return res;
}

SuiteResult suite_constant_curvature(std::uint64_t seed) {
  SuiteResult res{"constant_curvature", true, ""};
  struct Case {
    const char* sigma;
    double K;
  };
  for (int n : {3, 4}) {
    std::string sph = "(1";
    for (int i = 1; i < n; ++i) sph += "+x" + std::to_string(i) + "^2";
    sph += "+z^2)/2";
    const Case cases[] = {{"1", 0.0}, {"z", -1.0}, {sph.c_str(), 1.0}};
    for (const auto& c : cases) {
      ConformalSpace space = ConformalSpace::make(n, parse(c.sigma));
      auto pts = sample_ambient_points(space, Box::cube(n, 0.5, 2.0), 40, seed + 5 * n);
      auto planes = sample_planes(n, 40, seed + 5 * n);
      for (int i = 0; i < 40; ++i) {
        double K;
        try {
          K = sectional(space, pts[i], planes[i].first, planes[i].second);
        } catch (const DegeneratePlaneError&) {
          continue;
        }
        if (std::abs(K - c.K) > 1e-8) {
          res.pass = false;
          res.detail = std::string("sigma=") + c.sigma + " n=" + std::to_string(n) + " K=" +
                       fmt_double(K);
          return res;
        }
      }
    }
  }
  res.detail = "flat 0, hyperbolic -1, round sphere +1 (n=3,4)";
  return res;
}

SuiteResult suite_family_catalog(std::uint64_t seed) {
  SuiteResult res{"family_catalog", true, ""};
  struct Case {
    const char* name;
    int m;
    std::map<std::string, double> params;
  };
  const Case cases[] = {
      {"flat_plane", 3, {}},
      {"tr1", 2, {}},
      {"tr4", 2, {}},
      {"pqe1_i", 3, {}},
      {"pqe1_ii", 5, {}},
      {"pc2_i", 3, {}},
      {"pc2_ii", 5, {}},
      {"tr6_sphere_slice", 2, {}},
      {"cylinder_cs", 2, {}},
      {"sphere_slice_biharmonic", 2, {{"z0", 1.0}}},
      {"sphere_slice_biharmonic", 2, {{"z0", 0.0}}},
      {"sphere_slice_biharmonic", 2, {{"z0", 0.5}}},
      {"m4_biharmonic", 4, {}},
  };
  for (const auto& c : cases) {
    FamilySpec fs = catalog(c.name, c.m, c.params);
    SampleSpec ss{40, seed + 3, fs.default_box};
    Verdict v = classify(fs.space, fs.chart, fs.f, ss, Tols{});
    if (v.kind != fs.expected) {
      res.pass = false;
      res.detail = std::string(c.name) + " m=" + std::to_string(c.m) + " got " +
                   verdict_name(v.kind) + " want " + verdict_name(fs.expected);
      return res;
    }
  }
  res.detail = "all catalog families classify as expected";
  return res;
}

}  // namespace

std::vector<SuiteResult> run_selftest_suites(std::uint64_t seed) {
  return {suite_jet_vs_fd(seed), suite_tensor_symmetries(seed), suite_constant_curvature(seed),
          suite_family_catalog(seed)};
}

}  // namespace fbh
