// Runs every acceptance criterion with root seed 1 and prints one line per
// criterion. Exit status is nonzero if any criterion fails.
#include <cstdlib>
#include <iostream>

#include "mmlab/acceptance.hpp"

int main(int argc, char** argv) {
  mmlab::AcceptanceOptions opts;
  opts.seed = 1;
  opts.progress = &std::cout;
  const std::string suite = argc > 1 ? argv[1] : "all";
  if (argc > 2) opts.out_dir = argv[2];
  bool ok = true;
  for (const auto& r : mmlab::run_acceptance(suite, opts)) ok = ok && r.pass();
  std::cout << (ok ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL") << std::endl;
  return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
