// fbh command line: verify families or custom immersions, scan sectional
// curvature, print exact power-ansatz reductions, run the built-in checks.
// All the work happens behind the C API of libfbh.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "fbh.h"

namespace {

struct CommonOpts {
  int samples = 100;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string format = "text";
  std::string output;
  std::vector<double> box;
  int jobs = 1;
  std::vector<std::string> params;  // name=value
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--samples", o.samples, "number of sample points");
  cmd->add_option("--seed", o.seed, "RNG seed (default: FBH_SEED or 1)")
      ->each([&](const std::string&) { o.seed_set = true; });
  cmd->add_option("--format", o.format, "text|json|csv")->default_str("text");
  cmd->add_option("--output", o.output, "write the report to a file instead of stdout");
  cmd->add_option("--box", o.box, "sampling box lo hi (uniform per coordinate)")
      ->expected(2);
  cmd->add_option("--jobs", o.jobs, "parallel evaluation workers");
  cmd->add_option("--param", o.params, "family/expression parameter name=value")
      ->take_all();
}

std::uint64_t default_seed(const CommonOpts& o) {
  if (o.seed_set) return o.seed;
  if (const char* env = std::getenv("FBH_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      std::fprintf(stderr, "fbh: ignoring unparseable FBH_SEED\n");
    }
  }
  return 1;
}

void fill_common(nlohmann::json& j, const CommonOpts& o) {
  j["samples"] = o.samples;
  j["seed"] = default_seed(o);
  j["format"] = o.format;
  j["jobs"] = o.jobs;
  if (!o.box.empty()) j["box"] = {o.box[0], o.box[1]};
  if (!o.params.empty()) {
    nlohmann::json p;
    for (const auto& kv : o.params) {
      std::size_t eq = kv.find('=');
      if (eq == std::string::npos || eq == 0)
        throw CLI::ValidationError("--param", "wants name=value, got '" + kv + "'");
      std::string k = kv.substr(0, eq);
      std::string v = kv.substr(eq + 1);
      try {
        std::size_t used = 0;
        double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        p[k] = d;
      } catch (...) {
        throw CLI::ValidationError("--param", "value of " + k + " is not a number");
      }
    }
    j["params"] = p;
  }
}

int emit(const CommonOpts& o, const char* report) {
  if (!report) return 0;
  if (!o.output.empty()) {
    std::ofstream out(o.output, std::ios::binary);
    if (!out) {
      std::fprintf(stderr, "fbh: cannot write %s\n", o.output.c_str());
      return FBH_USAGE;
    }
    out << report;
    return 0;
  }
  std::fputs(report, stdout);
  return 0;
}

int run_command(const std::string& command, const nlohmann::json& cfg, const CommonOpts& o) {
  fbh_session* session = fbh_session_new();
  char* report = nullptr;
  int code = fbh_run(session, command.c_str(), cfg.dump().c_str(), &report);
  int emit_code = emit(o, report);
  if (code != FBH_PASS) {
    const char* msg = fbh_session_last_error(session);
    if (msg && *msg) std::fprintf(stderr, "fbh: %s\n", msg);
  }
  fbh_string_free(report);
  fbh_session_free(session);
  return code != FBH_PASS ? code : emit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification engine for f-biharmonic hypersurfaces in conformally flat spaces"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "check the f-biharmonic system on a hypersurface");
  CommonOpts vo;
  std::string family, sigma, f_text, hyperplane, immersion;
  int m = 0;
  double tol_verify = 1e-8, tol_falsify = 1e-3;
  std::vector<std::string> guards;
  verify->add_option("--family", family, "catalog family name");
  verify->add_option("--sigma", sigma, "conformal factor expression in x1..xm, z");
  verify->add_option("--f", f_text, "weight function expression in chart variables");
  verify->add_option("--hyperplane", hyperplane, "\"a1,...,am;a_{m+1}\"");
  verify->add_option("--immersion", immersion, "m+1 chart expressions separated by '|'");
  verify->add_option("--m", m, "hypersurface dimension");
  verify->add_option("--tol-verify", tol_verify, "verification tolerance");
  verify->add_option("--tol-falsify", tol_falsify, "falsification margin");
  verify->add_option("--guard", guards, "ambient expression that must stay positive")
      ->take_all();
  add_common(verify, vo);

  // curvature
  auto* curvature = app.add_subcommand("curvature", "sample sectional curvatures of the ambient");
  CommonOpts co;
  std::string c_sigma, expect;
  int n = 0;
  double tol_zero = 1e-10;
  std::vector<std::string> c_guards;
  curvature->add_option("--sigma", c_sigma, "conformal factor expression")->required();
  curvature->add_option("--n", n, "ambient dimension")->required();
  curvature->add_option("--expect", expect, "negative|zero|positive")->required();
  curvature->add_option("--tol-zero", tol_zero, "tolerance for --expect zero");
  curvature->add_option("--guard", c_guards, "ambient expression that must stay positive")
      ->take_all();
  add_common(curvature, co);

  // ansatz
  auto* ansatz = app.add_subcommand("ansatz", "exact power-ansatz reduction to the root quadratic");
  CommonOpts ao;
  std::string equation = "pq1";
  int am = 0;
  ansatz->add_option("--equation", equation, "pq1|pc1");
  ansatz->add_option("--m", am, "hypersurface dimension (integer >= 2)")->required();
  add_common(ansatz, ao);

  // selftest
  auto* selftest = app.add_subcommand("selftest", "run the built-in verification suites");
  CommonOpts so;
  add_common(selftest, so);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : FBH_USAGE;
  }

  try {
    if (verify->parsed()) {
      nlohmann::json cfg;
      if (!family.empty()) cfg["family"] = family;
      if (!sigma.empty()) cfg["sigma"] = sigma;
      if (!f_text.empty()) cfg["f"] = f_text;
      if (!hyperplane.empty()) cfg["hyperplane"] = hyperplane;
      if (!immersion.empty()) cfg["immersion"] = immersion;
      if (m > 0) cfg["m"] = m;
      cfg["tol_verify"] = tol_verify;
      cfg["tol_falsify"] = tol_falsify;
      if (!guards.empty()) cfg["guards"] = guards;
      fill_common(cfg, vo);
      return run_command("verify", cfg, vo);
    }
    if (curvature->parsed()) {
      nlohmann::json cfg;
      cfg["sigma"] = c_sigma;
      cfg["n"] = n;
      cfg["expect"] = expect;
      cfg["tol_zero"] = tol_zero;
      if (!c_guards.empty()) cfg["guards"] = c_guards;
      fill_common(cfg, co);
      return run_command("curvature", cfg, co);
    }
    if (ansatz->parsed()) {
      nlohmann::json cfg;
      cfg["equation"] = equation;
      cfg["m"] = am;
      fill_common(cfg, ao);
      return run_command("ansatz", cfg, ao);
    }
    nlohmann::json cfg;
    fill_common(cfg, so);
    return run_command("selftest", cfg, so);
  } catch (const CLI::Error& e) {
    std::fprintf(stderr, "fbh: %s\n", e.what());
    return FBH_USAGE;
  }
}
