#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "stabring/verify.hpp"

using namespace stabring;

TEST_CASE("every acceptance criterion passes within its time cap") {
  for (const CriterionResult& res : run_all_criteria()) {
    INFO("criterion " << res.number << " (" << res.name << "): " << res.detail);
    CHECK(res.passed);
    CHECK(res.seconds <= res.cap_seconds);
  }
}

TEST_CASE("named suites dispatch to their criteria") {
  CHECK(verify_suite("formula").at(0).number == 1);
  CHECK(verify_suite("almkvist-fossum").at(0).number == 2);
  CHECK(verify_suite("dichotomy").at(0).number == 4);
  CHECK(verify_suite("cp").at(0).number == 9);
  CHECK(verify_suite("c4").at(0).number == 8);
  CHECK(verify_suite("main").at(0).number == 10);
  CHECK(verify_suite("super").at(0).number == 11);
  CHECK(verify_suite("all").size() == 13);

  bool caught = false;
  try {
    verify_suite("nope");
  } catch (const error& e) {
    caught = true;
    CHECK(e.kind() == errc::unknown_command);
  }
  CHECK(caught);
}

TEST_CASE("the catalog-match criterion surfaces the twisted-form finding") {
  CriterionResult res = criterion_catalog_match();
  REQUIRE(res.passed);
  CHECK(res.detail.find("UNMATCHED") != std::string::npos);
}
