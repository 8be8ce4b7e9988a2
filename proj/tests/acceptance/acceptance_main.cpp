#include <cstdio>
#include <cstdlib>
#include <string>

#include "criteria.hpp"

int main(int argc, char** argv) {
  poisrd::acceptance::Options options;
  if (const char* seed = std::getenv("POISRD_SEED")) options.seed = std::stoull(seed);
  if (argc > 1) options.workers = std::stoul(argv[1]);

  int failed = 0;
  for (const auto& outcome : poisrd::acceptance::run_all(options)) {
    std::printf("%s\n", poisrd::acceptance::format_line(outcome).c_str());
    std::fflush(stdout);
    failed += outcome.passed ? 0 : 1;
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
