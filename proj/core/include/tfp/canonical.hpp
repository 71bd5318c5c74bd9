#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "tfp/comb_map.hpp"

namespace tfp {

// Bumped whenever the code layout or the equivalence convention changes;
// part of the atlas cache key.
inline constexpr int kConventionVersion = 1;

// Complete invariant of a map under rooted equivalence: half-edge 0 fixed,
// non-root vertices may be renumbered and rotated. Compared lexicographically.
struct CanonicalCode {
  std::vector<int> words;

  // "d,d,...:a,a,..." per component, components joined by '/'.
  std::string str() const;
  static CanonicalCode parse(std::string_view s);

  friend auto operator<=>(const CanonicalCode&, const CanonicalCode&) = default;
  friend bool operator==(const CanonicalCode&, const CanonicalCode&) = default;
};

CanonicalCode canonical_code(const CombMap& m);

// Relabeled representative of a connected map's class: vertices numbered in
// discovery order, each a block of consecutive labels. Throws on disconnected input.
CombMap canonical_form(const CombMap& m);

// Map whose components are the decoded code blocks laid side by side.
// Validates the pairing; canonical_code(map_from_code(c)) == c for valid codes.
CombMap map_from_code(const CanonicalCode& c);

// Number of rooted relabelings for n vertices of degree p: (n-1)! p^(n-1).
long long rooted_group_size(int p, int n);

}  // namespace tfp
