#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#include "sl2fusion/testing/acceptance.hpp"

int main(int argc, char** argv) {
  sl2f::acceptance::Options opts;
  for (int k = 1; k + 1 < argc; ++k) {
    if (std::string(argv[k]) == "--max-n") opts.max_n = std::atoi(argv[k + 1]);
  }
  int failed = 0;
  sl2f::acceptance::run_all(opts, [&](const sl2f::acceptance::CriterionResult& r) {
    std::cout << sl2f::acceptance::format_line(r) << std::endl;
    if (!r.pass) ++failed;
  });
  std::cout << (failed == 0 ? "all 10 criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
