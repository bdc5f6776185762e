#pragma once

#include <string>
#include <vector>

namespace sharp::cli {

struct SelftestCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Quick invariant corpus; each check runs in well under a second.
std::vector<SelftestCheck> run_selftest();

}  // namespace sharp::cli
