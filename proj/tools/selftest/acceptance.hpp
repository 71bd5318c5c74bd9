#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace tfp::acceptance {

struct Options {
  std::filesystem::path cache_dir;  // empty: no atlas cache
  int threads = 1;
  bool verbose = true;  // detail lines under each verdict
};

struct Result {
  int id = 0;
  std::string title;
  bool pass = false;
  double seconds = 0;
  std::vector<std::string> details;
};

inline constexpr int kCriteria = 13;

Result run_criterion(int id, const Options& opt);

// Atlases served from the cache equal fresh enumeration (checksums of the
// serialized text); prints one line.
bool check_cache_coherence(const Options& opt, std::ostream& os);

// One "PASS|FAIL [id] title (seconds)" line per criterion, details indented.
// Returns the number of failures.
int run_suite(const std::vector<int>& ids, const Options& opt, std::ostream& os);

}  // namespace tfp::acceptance
