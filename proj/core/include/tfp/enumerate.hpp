#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tfp/canonical.hpp"
#include "tfp/comb_map.hpp"

namespace tfp {

inline constexpr int kDefaultEnumerationCap = 16;

// One representative per rooted class of connected maps with n vertices of
// degree p, in canonical form, sorted by code. Throws ResourceError if p*n > cap.
std::vector<CombMap> enumerate_bn(int p, int n, int cap = kDefaultEnumerationCap);

// Rooted relabelings h -> g(h) for n vertices of degree p with block rotation:
// vertex 0 fixed pointwise, others renumbered and rotated. (n-1)! p^(n-1) of them.
std::vector<std::vector<int>> rooted_relabelings(int p, int n);

// Calls f with the pairing of every relabeling of rep by the rooted group
// (non-root vertices renumbered and rotated). rep must have block rotation
// and uniform degree. For connected rep the images are pairwise distinct.
void for_each_rooted_image(const CombMap& rep, const std::function<void(const std::vector<int>&)>& f);

struct AtlasEntry {
  CombMap map;
  CanonicalCode code;
};

struct Atlas {
  int p = 0;
  int n = 0;
  int convention = kConventionVersion;
  std::vector<AtlasEntry> entries;
};

Atlas build_atlas(int p, int n, int cap = kDefaultEnumerationCap);

// Deterministic JSON text, one record per line, 1-based labels.
std::string atlas_to_json(const Atlas& a);
Atlas atlas_from_json(const std::string& text);

// $TFP_CACHE_DIR, else $XDG_CACHE_HOME/tfp, else $HOME/.cache/tfp.
std::filesystem::path default_cache_dir();
std::filesystem::path atlas_cache_path(const std::filesystem::path& dir, int p, int n);

// Reads the cached atlas if present (and well-formed), otherwise enumerates and
// writes it atomically. An empty dir disables caching.
Atlas load_or_build_atlas(int p, int n, const std::filesystem::path& dir, int cap = kDefaultEnumerationCap);

}  // namespace tfp
