// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
#include <iostream>

#include "fracheat/acceptance.hpp"

int main() {
  const auto report = fracheat::run_acceptance({}, &std::cout);
  std::cout << (report.all_passed() ? "all criteria PASS" : "some criteria FAIL") << std::endl;
  return report.all_passed() ? 0 : 1;
}
