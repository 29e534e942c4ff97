#pragma once

#include <string>
#include <vector>

#include "latkit/classify.hpp"

namespace latkit {

// Replays the numeric facts the library is expected to reproduce.
struct CheckResult {
  std::string group;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

// group names: rootdata, jgamma, section2, lnu, resolutions, rank2, classify
const std::vector<std::string>& check_groups();
// runs every group whose name contains `filter` (all groups when empty)
std::vector<CheckResult> run_checks(const std::string& filter = "", const ClassifyOptions& opt = {});

}  // namespace latkit
