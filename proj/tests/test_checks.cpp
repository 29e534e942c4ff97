#include <doctest.h>

#include "latkit/checks.hpp"

using namespace latkit;

TEST_CASE("every replayed reference check passes") {
  auto results = run_checks();
  CHECK(results.size() > 30);
  for (const auto& r : results) {
    INFO(r.group << ": " << r.name << " -> " << r.detail);
    CHECK(r.pass);
  }
}

TEST_CASE("check filter selects groups") {
  auto only = run_checks("jgamma");
  REQUIRE_FALSE(only.empty());
  for (const auto& r : only) CHECK(r.group == "jgamma");
  CHECK(run_checks("no such group").empty());
}
