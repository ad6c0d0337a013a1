#include "fbh.h"

#include <json.hpp>

#include <cstring>
#include <string>

#include "core/engine.hpp"
#include "core/expr.hpp"

using namespace fbh;

struct fbh_session {
  std::string last_error;
};

struct fbh_expr {
  Expr expr;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int guard(fbh_session* s, const std::function<int()>& body) {
  if (!s) return FBH_USAGE;
  try {
    s->last_error.clear();
    return body();
  } catch (const UsageError& e) {
    s->last_error = e.what();
    return FBH_USAGE;
  } catch (const Error& e) {
    s->last_error = e.what();
    return FBH_FAIL;
  } catch (const std::exception& e) {
    s->last_error = e.what();
    return FBH_FAIL;
  }
}

}  // namespace

extern "C" {

fbh_session* fbh_session_new(void) { return new fbh_session(); }

void fbh_session_free(fbh_session* s) { delete s; }

const char* fbh_session_last_error(const fbh_session* s) {
  return s ? s->last_error.c_str() : "";
}

int fbh_run(fbh_session* s, const char* command, const char* config_json, char** report_out) {
  if (report_out) *report_out = nullptr;
  return guard(s, [&]() -> int {
    if (!command) throw UsageError("command is null");
    RunConfig cfg = RunConfig::from_json(command, config_json ? config_json : "{}");
    RunResult res = run(cfg);
    if (report_out) *report_out = dup_string(res.report);
    if (res.exit_code == kClaimFailed && s)
      s->last_error = "claim violated (see report)";
    return res.exit_code;
  });
}

void fbh_string_free(char* str) { delete[] str; }

int fbh_expr_parse(fbh_session* s, const char* text, fbh_expr** out) {
  if (out) *out = nullptr;
  return guard(s, [&]() -> int {
    if (!text) throw UsageError("expression text is null");
    Expr e = parse(text);
    if (out) *out = new fbh_expr{e};
    return FBH_PASS;
  });
}

int fbh_expr_eval(fbh_session* s, const fbh_expr* e, const char* bindings_json,
                  double* value_out) {
  return guard(s, [&]() -> int {
    if (!e) throw UsageError("expression handle is null");
    Bindings b;
    std::map<std::string, double> vars;
    if (bindings_json && *bindings_json) {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(bindings_json);
      } catch (const std::exception& err) {
        throw UsageError(std::string("bad bindings JSON: ") + err.what());
      }
      for (auto it = j.begin(); it != j.end(); ++it) {
        double v = it.value().get<double>();
        if (is_variable_name(it.key()))
          vars[it.key()] = v;
        else
          b.params[it.key()] = v;
      }
    }
    double v = evaluate_real(e->expr, b, vars);
    if (value_out) *value_out = v;
    return FBH_PASS;
  });
}

int fbh_expr_print(fbh_session* s, const fbh_expr* e, char** text_out) {
  if (text_out) *text_out = nullptr;
  return guard(s, [&]() -> int {
    if (!e) throw UsageError("expression handle is null");
    if (text_out) *text_out = dup_string(to_string(e->expr));
    return FBH_PASS;
  });
}

void fbh_expr_free(fbh_expr* e) { delete e; }

const char* fbh_version(void) { return "1.0.0"; }

}  // extern "C"
