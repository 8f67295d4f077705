// Runs every acceptance criterion with the default options and prints one
// line per criterion. Exits nonzero when any criterion fails.

#include <cstdlib>
#include <iomanip>
#include <iostream>

#include "whitesurf/acceptance.hpp"

int main(int argc, char** argv) {
  whitesurf::AcceptanceOptions opt;
  if (argc > 1) opt.trials = std::atoi(argv[1]);
  opt.on_result = [](const whitesurf::CriterionResult& r) {
    std::cout << (r.pass ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.name << ": " << r.detail << " ("
              << std::fixed << std::setprecision(1) << r.seconds << " s)" << std::endl;
  };
  opt.on_warning = [](const std::string& w) { std::cout << "warning: " << w << std::endl; };
  try {
    const whitesurf::AcceptanceOutcome out = whitesurf::run_acceptance(opt);
    std::size_t passed = 0;
    for (const auto& r : out.results) passed += r.pass;
    std::cout << passed << "/" << out.results.size() << " criteria pass" << std::endl;
    return out.all_pass() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cout << "error: " << e.what() << std::endl;
    return 2;
  }
}
