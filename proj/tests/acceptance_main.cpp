// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance            all criteria
//   acceptance 4 7c ...   selected ones ("7" = 7a..7d)
#include <cstdio>
#include <string>
#include <vector>

#include "gibbsfrag/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> ids;
  for (int i = 1; i < argc; ++i) ids.emplace_back(argv[i]);
  if (ids.empty()) ids.push_back("all");
  int failed = 0;
  for (const auto& id : ids) {
    std::vector<gibbsfrag::CriterionResult> results;
    try {
      results = gibbsfrag::run_acceptance(id);
    } catch (const std::exception& e) {
      std::printf("[FAIL] %s: %s\n", id.c_str(), e.what());
      ++failed;
      continue;
    }
    for (const auto& r : results) {
      std::printf("[%s] %-3s %s (%.1fs): %s\n", r.pass ? "PASS" : "FAIL", r.id.c_str(), r.title.c_str(), r.seconds,
                  r.detail.c_str());
      std::fflush(stdout);
      if (!r.pass) ++failed;
    }
  }
  return failed == 0 ? 0 : 1;
}
