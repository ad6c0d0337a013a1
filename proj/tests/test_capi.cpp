#include <doctest.h>

#include <cmath>
#include <string>

#include "fbh.h"

TEST_CASE("session lifecycle and expression round trip") {
  fbh_session* s = fbh_session_new();
  REQUIRE(s != nullptr);
  CHECK(std::string(fbh_session_last_error(s)).empty());

  fbh_expr* e = nullptr;
  CHECK(fbh_expr_parse(s, "1/(c1*z+c2)", &e) == FBH_PASS);
  REQUIRE(e != nullptr);

  double v = 0;
  CHECK(fbh_expr_eval(s, e, R"({"z":1.0,"c1":1.0,"c2":1.0})", &v) == FBH_PASS);
  CHECK(v == doctest::Approx(0.5));

  char* text = nullptr;
  CHECK(fbh_expr_print(s, e, &text) == FBH_PASS);
  CHECK(std::string(text) == "1/(c1*z+c2)");
  fbh_string_free(text);

  CHECK(fbh_expr_eval(s, e, R"({"z":1.0})", &v) != FBH_PASS);
  CHECK(std::string(fbh_session_last_error(s)).find("c1") != std::string::npos);

  fbh_expr_free(e);
  fbh_session_free(s);
}

TEST_CASE("parse errors surface as usage failures with messages") {
  fbh_session* s = fbh_session_new();
  fbh_expr* e = nullptr;
  CHECK(fbh_expr_parse(s, "1+", &e) == FBH_USAGE);
  CHECK(e == nullptr);
  CHECK(!std::string(fbh_session_last_error(s)).empty());
  fbh_session_free(s);
}

TEST_CASE("fbh_run verify honors the exit-code contract") {
  fbh_session* s = fbh_session_new();
  char* report = nullptr;

  CHECK(fbh_run(s, "verify", R"({"family":"flat_plane","m":3,"samples":10})", &report) ==
        FBH_PASS);
  REQUIRE(report != nullptr);
  CHECK(std::string(report).find("totally_geodesic") != std::string::npos);
  fbh_string_free(report);
  report = nullptr;

  CHECK(fbh_run(s, "verify", R"({"family":"no_such","m":3})", &report) == FBH_USAGE);
  CHECK(report == nullptr);
  CHECK(std::string(fbh_session_last_error(s)).find("no_such") != std::string::npos);

  CHECK(fbh_run(s, "verify", "{not json", &report) == FBH_USAGE);

  // a genuine claim failure still renders a report
  CHECK(fbh_run(s, "verify",
                R"json({"sigma":"z^(1/2)","hyperplane":"1,1;1","m":2,"f":"1","samples":10,"guards":["z"]})json",
                &report) == FBH_FAIL);
  REQUIRE(report != nullptr);
  CHECK(std::string(report).find("not_f_biharmonic") != std::string::npos);
  fbh_string_free(report);
  fbh_session_free(s);
}

TEST_CASE("fbh_run ansatz and curvature") {
  fbh_session* s = fbh_session_new();
  char* report = nullptr;
  CHECK(fbh_run(s, "ansatz", R"({"equation":"pq1","m":3})", &report) == FBH_PASS);
  CHECK(std::string(report) == "13t^2+10t-3=0; t=-1, t=3/13\n");
  fbh_string_free(report);
  report = nullptr;

  CHECK(fbh_run(s, "ansatz", R"({"equation":"pq1","m":1})", &report) == FBH_USAGE);

  CHECK(fbh_run(s, "curvature",
                R"json({"sigma":"z^(3/13)","n":4,"expect":"negative","samples":60,"seed":2})json",
                &report) == FBH_PASS);
  fbh_string_free(report);
  fbh_session_free(s);
}

TEST_CASE("byte-identical reports through the C surface") {
  fbh_session* s = fbh_session_new();
  const char* cfg = R"({"family":"pqe1_ii","m":3,"samples":12,"seed":5,"format":"json"})";
  char* a = nullptr;
  char* b = nullptr;
  CHECK(fbh_run(s, "verify", cfg, &a) == FBH_PASS);
  CHECK(fbh_run(s, "verify", cfg, &b) == FBH_PASS);
  CHECK(std::string(a) == std::string(b));
  fbh_string_free(a);
  fbh_string_free(b);
  fbh_session_free(s);
}

TEST_CASE("version string") {
  CHECK(fbh_version() != nullptr);
  CHECK(std::string(fbh_version()).find('.') != std::string::npos);
}
