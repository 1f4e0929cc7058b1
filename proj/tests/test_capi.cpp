#include <doctest.h>

#include <cstring>
#include <string>

#include "wsck/wsck.h"

TEST_CASE("run a command through the C surface") {
  wsck_report* r = wsck_run("{\"command\":\"axioms\",\"algebra\":\"Vir\"}");
  REQUIRE(r != nullptr);
  CHECK(wsck_report_status(r) == 0);
  std::string j = wsck_report_json(r);
  CHECK(j.find("\"command\": \"axioms\"") != std::string::npos);
  std::string t = wsck_report_text(r);
  CHECK(t.find("[pass]") != std::string::npos);
  wsck_report_free(r);

  wsck_report* bad = wsck_run("{\"command\":\"axioms\",\"n\":99}");
  CHECK(wsck_report_status(bad) == 2);
  wsck_report_free(bad);
}

TEST_CASE("algebra handles") {
  wsck_algebra* w2 = wsck_algebra_create("W", 2, nullptr);
  REQUIRE(w2 != nullptr);
  CHECK(wsck_algebra_rank(w2) == 12);
  CHECK(wsck_algebra_verify(w2) == 0);
  char* table = wsck_algebra_table_json(w2);
  REQUIRE(table != nullptr);
  CHECK(std::strstr(table, "\"gen\"") != nullptr);
  wsck_string_free(table);
  wsck_algebra_free(w2);

  wsck_algebra* sb = wsck_algebra_create("Sb", 2, "1/2");
  REQUIRE(sb != nullptr);
  CHECK(wsck_algebra_rank(sb) == 8);
  CHECK(wsck_algebra_verify(sb) == 0);
  wsck_algebra_free(sb);

  wsck_algebra* bad = wsck_algebra_create("Q", 2, nullptr);
  CHECK(bad == nullptr);
  CHECK(std::strlen(wsck_last_error()) > 0);

  wsck_algebra* st_odd = wsck_algebra_create("Stilde", 3, nullptr);
  CHECK(st_odd == nullptr);
}

TEST_CASE("version string") {
  CHECK(std::strlen(wsck_version()) > 0);
}
