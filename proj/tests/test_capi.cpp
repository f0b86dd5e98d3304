#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include <json.hpp>

#include "ergoshift.h"

TEST_CASE("version string") {
  CHECK(std::string(es_version()) == "1.0.0");
}

TEST_CASE("invalid inputs map to config errors") {
  es_report* rep = reinterpret_cast<es_report*>(0x1);
  CHECK(es_run("not json", &rep) == ES_CONFIG_ERROR);
  CHECK(rep == nullptr);
  CHECK(std::strlen(es_last_error()) > 0);

  CHECK(es_run(R"({"experiment":"nope"})", &rep) == ES_CONFIG_ERROR);
  CHECK(es_run(nullptr, &rep) == ES_CONFIG_ERROR);
  CHECK(es_run(R"({"experiment":"classify"})", &rep) == ES_CONFIG_ERROR);  // no matrix
  CHECK(es_acceptance(9, 1, nullptr, &rep) == ES_CONFIG_ERROR);
  CHECK(es_suite("bogus", 1, nullptr, &rep) == ES_CONFIG_ERROR);
  CHECK(es_run(R"({"experiment":"classify"})", nullptr) == ES_CONFIG_ERROR);
}

TEST_CASE("case restrictions map to config errors") {
  es_report* rep = nullptr;
  // delta growth needs |det| > 1
  CHECK(es_run(R"({"experiment":"delta","matrix":"fibonacci"})", &rep) ==
        ES_CONFIG_ERROR);
  CHECK(rep == nullptr);
}

TEST_CASE("successful run returns a parsable passing report") {
  es_report* rep = nullptr;
  es_status st = es_run(R"({"experiment":"classify","matrix":"fibonacci"})", &rep);
  REQUIRE(st == ES_OK);
  REQUIRE(rep != nullptr);
  CHECK(es_report_passed(rep) == 1);
  nlohmann::json j = nlohmann::json::parse(es_report_json(rep));
  CHECK(j.at("schema") == 1);
  CHECK(j.at("experiment") == "classify");
  CHECK(j.at("passed") == true);
  CHECK(j.at("constants").at("tag") == "ErgodicBilateral");
  for (const auto& c : j.at("checks")) {
    CHECK(c.contains("lhs"));
    CHECK(c.contains("rhs"));
    CHECK(c.contains("pass"));
  }
  es_report_free(rep);
}

TEST_CASE("witness experiment through the C API") {
  es_report* rep = nullptr;
  REQUIRE(es_run(R"({"experiment":"witness","N":4,"H":[10,1000,100000]})",
                 &rep) == ES_OK);
  nlohmann::json j = nlohmann::json::parse(es_report_json(rep));
  // exact ratios serialized as decimal strings
  const auto& ratios = j.at("constants").at("ratios");
  CHECK(ratios.size() == 3);
  for (const auto& r : ratios) CHECK(r.at("ratio_sq").is_string());
  es_report_free(rep);
}

TEST_CASE("null report accessors are safe") {
  CHECK(std::string(es_report_json(nullptr)).empty());
  CHECK(es_report_passed(nullptr) == 0);
  es_report_free(nullptr);
}
