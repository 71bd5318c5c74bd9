#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tfp/comb_map.hpp"
#include "tfp/enumerate.hpp"
#include "tfp/rational.hpp"

namespace tfp {

enum class Representation { cumulant_rule, moment_rule };

// A distribution on trace maps of degree p. Values are polynomials in the
// law's parameter t (constants for parameter-free laws). The rule gives the
// value of the cumulant on a connected map, labeled 0..m-1; evaluation on an
// arbitrary map sums products of the rule over its down-set.
class MapDistribution {
 public:
  using Rule = std::function<QPoly(const CombMap& component)>;

  MapDistribution(std::string name, int p, Representation rep, Rule kappa, bool rotation_invariant);

  const std::string& name() const { return name_; }
  int order() const { return p_; }
  Representation representation() const { return rep_; }
  // Rule value unchanged by rotating non-root vertices; class values then need
  // no orbit average.
  bool rotation_invariant() const { return invariant_; }

  // Memoized rule value on a connected map.
  QPoly kappa(const CombMap& component) const;
  const Rule& rule() const { return rule_; }

 private:
  struct Memo;
  std::string name_;
  int p_;
  Representation rep_;
  Rule rule_;
  bool invariant_;
  std::shared_ptr<Memo> memo_;
};

// Cumulant 1/(p-1)! on melons, 0 elsewhere. Odd p is stored as a moment rule.
MapDistribution semicircular_map(int p);
// Order p even: t/((p/2)!)^n on multicycles with n vertices, 0 elsewhere.
MapDistribution free_poisson_map(int p);
// t/(p-1)!! on single-vertex maps of even degree p.
MapDistribution identity_map(int p);
MapDistribution delta0_map(int p);
MapDistribution free_sum(const MapDistribution& a, const MapDistribution& b);
// Same evaluations, but cumulants are recovered through Moebius inversion.
MapDistribution as_moment_rule(const MapDistribution& d);

// Multicycle test on a connected map (see free_poisson_map).
bool is_multicycle(const CombMap& component);

QPoly eval(const MapDistribution& d, const CombMap& b);
// Cumulant-rule: product of rule values over components. Moment-rule: sum of
// Moeb(b', b) eval(b') over the down-set; UnsupportedError for odd degree.
QPoly cumulant_of_map(const MapDistribution& d, const CombMap& b);

// Value of a rooted class (average over the rooted group when the rule is not
// rotation invariant). rep must be in canonical form.
QPoly class_value(const MapDistribution& d, const CombMap& rep);
QPoly class_cumulant(const MapDistribution& d, const CombMap& rep);

QPoly moment_n(const MapDistribution& d, const Atlas& atlas);
QPoly cumulant_n(const MapDistribution& d, const Atlas& atlas);

std::size_t count_melonic_classes(const Atlas& atlas);

struct MapMomentRow {
  int n;
  QPoly moment;
  std::optional<QPoly> cumulant;  // absent where Moebius inversion is undefined
};

// Rows n = 1..n_max using cached atlases.
std::vector<MapMomentRow> map_moment_table(const MapDistribution& d, int n_max,
                                           const std::filesystem::path& cache_dir,
                                           int cap = kDefaultEnumerationCap);

// "n,m_n,kappa_n" with rationals as num/den; t substituted by the given value;
// an absent cumulant is an empty field.
std::string map_moment_csv(const std::vector<MapMomentRow>& rows, const Rational& t);

}  // namespace tfp
