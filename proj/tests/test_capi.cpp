#include <doctest.h>

#include <cstring>
#include <string>

#include "kummer/kummer.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  kmr_string_free(s);
  return out;
}

struct Alg {
  kmr_algebra* a = nullptr;
  ~Alg() { kmr_algebra_destroy(a); }
};

struct Elem {
  kmr_element* e = nullptr;
  ~Elem() { kmr_element_destroy(e); }
};

}  // namespace

TEST_CASE("algebra lifecycle and info") {
  Alg h;
  REQUIRE(kmr_algebra_create(2, 6, &h.a) == KMR_OK);
  CHECK(kmr_algebra_a(h.a) == 2);
  CHECK(kmr_algebra_n(h.a) == 6);
  CHECK(kmr_algebra_phi(h.a) == 2);
  CHECK(kmr_algebra_dim(h.a) == 12);
  CHECK(kmr_algebra_field_status(h.a) == KMR_FIELD_CERTIFIED);

  char* s = nullptr;
  REQUIRE(kmr_algebra_info_json(h.a, &s) == KMR_OK);
  std::string j = take(s);
  CHECK(j.find("\"dim\":12") != std::string::npos);
  CHECK(j.find("certified_field") != std::string::npos);
}

TEST_CASE("error codes and messages") {
  kmr_algebra* a = nullptr;
  CHECK(kmr_algebra_create(4, 3, &a) == KMR_ERR_PERFECT_POWER_RADICAND);
  CHECK(std::strlen(kmr_last_error()) > 0);
  CHECK(kmr_algebra_create(0, 3, &a) == KMR_ERR_INVALID_ARGUMENT);

  Alg h;
  REQUIRE(kmr_algebra_create(2, 2, &h.a) == KMR_OK);
  kmr_element* e = nullptr;
  CHECK(kmr_element_parse(h.a, "1 + ?", &e) == KMR_ERR_PARSE);
  CHECK(std::string(kmr_last_error()).find("position") != std::string::npos);
}

TEST_CASE("delta and measure through the C boundary") {
  Alg h;
  REQUIRE(kmr_algebra_create(2, 2, &h.a) == KMR_OK);
  char* s = nullptr;
  REQUIRE(kmr_delta(h.a, &s) == KMR_OK);
  CHECK(take(s) == "64");

  Elem e;
  REQUIRE(kmr_element_parse(h.a, "1 + r", &e.e) == KMR_OK);
  REQUIRE(kmr_element_measure_json(e.e, 64, &s) == KMR_OK);
  std::string j = take(s);
  CHECK(j.find("\"house\"") != std::string::npos);
  CHECK(j.find("\"msq\"") != std::string::npos);
  CHECK(j.find("\"field_status\":\"certified_field\"") != std::string::npos);

  REQUIRE(kmr_element_to_string(e.e, &s) == KMR_OK);
  CHECK(take(s) == "1 + r");

  REQUIRE(kmr_element_eval_json(e.e, 96, &s) == KMR_OK);
  j = take(s);
  CHECK(j.find("\"values\":[") != std::string::npos);
  CHECK(j.find("\"radius\"") != std::string::npos);
}

TEST_CASE("minrep and decompose through the C boundary") {
  Alg h;
  REQUIRE(kmr_algebra_create(2, 2, &h.a) == KMR_OK);
  Elem e;
  REQUIRE(kmr_element_parse(h.a, "(3 + 2*r)/64", &e.e) == KMR_OK);
  char* s = nullptr;
  REQUIRE(kmr_element_minrep_json(e.e, 6, &s) == KMR_OK);
  std::string j = take(s);
  CHECK(j.find("\"status\":\"found\"") != std::string::npos);
  CHECK(j.find("\"count\":5") != std::string::npos);

  REQUIRE(kmr_element_decompose_json(e.e, 2, &s) == KMR_OK);
  j = take(s);
  CHECK(j.find("\"scale\":\"1/64\"") != std::string::npos);
  CHECK(j.find("\"integral\":true") != std::string::npos);

  Elem half;
  REQUIRE(kmr_element_parse(h.a, "1/128", &half.e) == KMR_OK);
  REQUIRE(kmr_element_minrep_json(half.e, 6, &s) == KMR_OK);
  CHECK(take(s).find("not_in_span") != std::string::npos);
}

TEST_CASE("verify: deterministic reports and exit codes") {
  char* s = nullptr;
  REQUIRE(kmr_verify("lemma3.4", "{\"k\":\"1\"}", 20, 9, 0, &s) == KMR_OK);
  std::string a = take(s);
  REQUIRE(kmr_verify("lemma3.4", "{\"k\":\"1\"}", 20, 9, 0, &s) == KMR_OK);
  std::string b = take(s);
  CHECK(a == b);

  int code = -1;
  REQUIRE(kmr_report_exit_code(a.c_str(), &code) == KMR_OK);
  CHECK(code == 0);

  REQUIRE(kmr_verify("lemma3.4", "{\"k\":\"1\"}", 10, 9, 1, &s) == KMR_OK);
  std::string csv = take(s);
  CHECK(csv.rfind("trial,verdict,", 0) == 0);

  CHECK(kmr_verify("nope", "{}", 1, 1, 0, &s) == KMR_ERR_UNKNOWN_SUITE);
}

TEST_CASE("derive constants through the C boundary") {
  char* s = nullptr;
  REQUIRE(kmr_derive_constants_json("1", "1/5", "512", &s) == KMR_OK);
  std::string j = take(s);
  CHECK(j.find("\"c1\":\"2048\"") != std::string::npos);
  CHECK(j.find("\"c2\":\"1/4098\"") != std::string::npos);
  CHECK(kmr_derive_constants_json("1/2", "1/5", "512", &s) == KMR_ERR_INVALID_ARGUMENT);
}

TEST_CASE("null handles are rejected, not dereferenced") {
  char* s = nullptr;
  CHECK(kmr_delta(nullptr, &s) == KMR_ERR_INVALID_ARGUMENT);
  CHECK(kmr_element_measure_json(nullptr, 64, &s) == KMR_ERR_INVALID_ARGUMENT);
  kmr_element* e = nullptr;
  CHECK(kmr_element_parse(nullptr, "1", &e) == KMR_ERR_INVALID_ARGUMENT);
  kmr_element_destroy(nullptr);  // no-op
  kmr_algebra_destroy(nullptr);
}
