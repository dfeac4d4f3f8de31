// Standalone acceptance gate: one line per numbered criterion, nonzero exit
// on any failure.  Usage: acceptance [--bound B] [--seed S] [--only K ...]

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "thetacat/suite.hpp"

int main(int argc, char** argv) {
  thetacat::SuiteOptions opt;
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--bound" && i + 1 < argc) {
      opt.bound = std::atoi(argv[++i]);
    } else if (a == "--seed" && i + 1 < argc) {
      opt.seed = static_cast<unsigned>(std::atoi(argv[++i]));
    } else if (a == "--only" && i + 1 < argc) {
      only.push_back(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr,
                   "usage: acceptance [--bound B] [--seed S] [--only K ...]\n");
      return 2;
    }
  }
  const std::vector<int>& run =
      only.empty() ? thetacat::suite_group("all") : only;
  bool ok = true;
  for (int k : run) {
    thetacat::CriterionResult r = thetacat::run_criterion(k, opt);
    std::printf("%s %2d %-36s %7.2fs  %s\n", r.pass ? "PASS" : "FAIL",
                r.number, r.name.c_str(), r.seconds, r.detail.c_str());
    std::fflush(stdout);
    ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}
