#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <string>

#include "w2n/w2n_c.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  w2n_string_free(s);
  return out;
}

} // namespace

TEST_CASE("realizations and generators through the C surface") {
  w2n_realization* rd = nullptr;
  REQUIRE(w2n_realization_new(2, 1, &rd) == W2N_OK);

  w2n_field* e = nullptr;
  REQUIRE(w2n_generator(rd, "E", 0, &e) == W2N_OK);
  char* txt = nullptr;
  REQUIRE(w2n_field_render(e, W2N_FORMAT_TEXT, &txt) == W2N_OK);
  CHECK(take(txt) == "Q- exp(+Xi)");

  w2n_field* e_fact = nullptr;
  REQUIRE(w2n_generator(rd, "E", 1, &e_fact) == W2N_OK);
  CHECK(w2n_field_equal(e, e_fact) == 1);

  w2n_field* f = nullptr;
  REQUIRE(w2n_generator(rd, "F", 0, &f) == W2N_OK);

  w2n_expansion* o = nullptr;
  REQUIRE(w2n_ope(e, f, 1, &o) == W2N_OK);
  CHECK(w2n_expansion_max_pole(o) == 2);
  w2n_field* pole2 = nullptr;
  REQUIRE(w2n_expansion_pole(o, 2, &pole2) == W2N_OK);
  char* p2 = nullptr;
  REQUIRE(w2n_field_render(pole2, W2N_FORMAT_TEXT, &p2) == W2N_OK);
  CHECK(take(p2) == "k");

  char* js = nullptr;
  REQUIRE(w2n_expansion_render(o, W2N_FORMAT_JSON, &js) == W2N_OK);
  std::string j = take(js);
  CHECK(j.find("\"offset\": \"0\"") != std::string::npos);
  CHECK(j.find("\"order\": 2") != std::string::npos);

  w2n_field_free(pole2);
  w2n_expansion_free(o);
  w2n_field_free(f);
  w2n_field_free(e_fact);
  w2n_field_free(e);
  w2n_realization_free(rd);
}

TEST_CASE("errors surface as status codes with messages") {
  w2n_realization* rd = nullptr;
  CHECK(w2n_realization_new(3, 7, &rd) == W2N_ERR_DOMAIN);
  CHECK(std::strlen(w2n_last_error()) > 0);

  w2n_field* f = nullptr;
  CHECK(w2n_field_parse("E(3,0", -1, -1, &f) == W2N_ERR_PARSE);

  REQUIRE(w2n_field_parse("E(3,0)", -1, -1, &f) == W2N_OK);
  w2n_field* bad = nullptr;
  CHECK(w2n_field_specialize(f, "-3", &bad) == W2N_ERR_DOMAIN);  // excluded level
  w2n_field* ok = nullptr;
  REQUIRE(w2n_field_specialize(f, "1", &ok) == W2N_OK);
  w2n_field_free(ok);
  w2n_field_free(f);
}

TEST_CASE("expression parsing with an explicit realization") {
  w2n_field* q = nullptr;
  REQUIRE(w2n_field_parse("prod(A1, d^1(Q))", 3, 0, &q) == W2N_OK);
  char* txt = nullptr;
  REQUIRE(w2n_field_render(q, W2N_FORMAT_TEXT, &txt) == W2N_OK);
  CHECK(take(txt) == "A1 d^1(Q)");
  w2n_field_free(q);
}

TEST_CASE("suites run through the C surface") {
  w2n_suite_options opt;
  w2n_suite_options_init(&opt);
  opt.n_max = 2;
  w2n_report* rep = nullptr;
  REQUIRE(w2n_run_suite("duality", &opt, &rep) == W2N_OK);
  CHECK(w2n_report_failed(rep) == 0);
  CHECK(w2n_report_passed(rep) > 0);

  char* js = nullptr;
  REQUIRE(w2n_report_render(rep, W2N_FORMAT_JSON, &js) == W2N_OK);
  std::string j = take(js);
  w2n_report* back = nullptr;
  REQUIRE(w2n_report_parse(j.c_str(), &back) == W2N_OK);
  CHECK(w2n_report_failed(back) == w2n_report_failed(rep));
  w2n_report_free(back);
  w2n_report_free(rep);
}

TEST_CASE("Y Y expansion serializes with an empty singular part") {
  w2n_field* y = nullptr;
  REQUIRE(w2n_field_parse("Y", 3, 0, &y) == W2N_OK);
  w2n_expansion* o = nullptr;
  REQUIRE(w2n_ope(y, y, 2, &o) == W2N_OK);
  char* js = nullptr;
  REQUIRE(w2n_expansion_render(o, W2N_FORMAT_JSON, &js) == W2N_OK);
  std::string j = take(js);
  CHECK(j.find("\"offset\": \"0\"") != std::string::npos);
  CHECK(j.find("\"poles\": []") != std::string::npos);
  w2n_expansion_free(o);
  w2n_field_free(y);
}

TEST_CASE("reports are byte-identical across runs") {
  w2n_suite_options opt;
  w2n_suite_options_init(&opt);
  w2n_report *r1 = nullptr, *r2 = nullptr;
  REQUIRE(w2n_run_suite("duality", &opt, &r1) == W2N_OK);
  opt.jobs = 2;
  REQUIRE(w2n_run_suite("duality", &opt, &r2) == W2N_OK);
  char *a = nullptr, *b = nullptr;
  REQUIRE(w2n_report_render(r1, W2N_FORMAT_JSON, &a) == W2N_OK);
  REQUIRE(w2n_report_render(r2, W2N_FORMAT_JSON, &b) == W2N_OK);
  CHECK(take(a) == take(b));
  w2n_report_free(r1);
  w2n_report_free(r2);
}
