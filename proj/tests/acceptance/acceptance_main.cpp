#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "acceptance.hpp"

// tfp_acceptance [--criterion N]... [--threads T] [--quiet]
int main(int argc, char** argv) {
  tfp::acceptance::Options opt;
  if (const char* d = std::getenv("TFP_CACHE_DIR")) opt.cache_dir = d;
  opt.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) ids.push_back(std::stoi(argv[++i]));
    else if (a == "--threads" && i + 1 < argc) opt.threads = std::stoi(argv[++i]);
    else if (a == "--quiet") opt.verbose = false;
    else {
      std::cerr << "usage: tfp_acceptance [--criterion N]... [--threads T] [--quiet]\n";
      return 2;
    }
  }
  if (ids.empty())
    for (int i = 1; i <= tfp::acceptance::kCriteria; ++i) ids.push_back(i);
  for (int id : ids)
    if (id < 1 || id > tfp::acceptance::kCriteria) {
      std::cerr << "criterion out of range: " << id << '\n';
      return 2;
    }
  return tfp::acceptance::run_suite(ids, opt, std::cout) ? 1 : 0;
}
