#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "conemorse/geodesics.hpp"
#include "conemorse/homology.hpp"
#include "conemorse/series.hpp"

namespace conemorse {

class MorseError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A critical energy and the geodesics sitting on it (indices into the
/// GeodesicSet). More than one member means the level is tied.
struct CriticalLevel {
  double energy = 0.0;
  std::vector<std::size_t> members;

  bool tied() const noexcept { return members.size() > 1; }
};

/// Groups geodesics whose energies agree to kTieTolerance into one level.
std::vector<CriticalLevel> critical_levels(const GeodesicSet& set);

/// Distance from `level` to the nearest other critical energy; the level
/// itself (at least 1) if there is no other.
double clean_radius(std::span<const CriticalLevel> levels, std::size_t level);

/// Sampled stand-in for the space of paths: the complex plus the critical
/// levels it is read against.
struct MorseInput {
  GeodesicSet geodesics;
  std::vector<CriticalLevel> levels;
  FilteredComplex complex;
};

/// Rank series of the pair (sublevel c+eps, sublevel c-eps). Throws
/// MorseError("strip not clean ...") if another critical energy lies in
/// [c-eps, c+eps].
FormalSeries index_of_level(const MorseInput& in, double level, double eps);

/// True iff both strips give the same pair series. Dirty strips throw.
bool epsilon_independence_check(const MorseInput& in, double level, double eps1,
                                double eps2);

/// Index of geodesic `i` (into in.geodesics). Throws MorseError
/// ("isolated-geodesic hypothesis fails") when its level is tied.
FormalSeries index_of_geodesic(const MorseInput& in, std::size_t i, double eps);

/// i(gamma) at lambda = 1.
FormalSeries::Coefficient multiplicity(const MorseInput& in, std::size_t i, double eps);

/// The space of paths on a cone is contractible, so its series is 1.
FormalSeries space_series();

/// Outcome of total = space + (1 + lambda) Q.
struct MorseRelation {
  std::optional<FormalSeries> quotient;
  std::string violation;  // empty when the quotient exists

  bool holds() const noexcept { return quotient.has_value(); }
};

MorseRelation morse_relation(const FormalSeries& total, const FormalSeries& space);

struct GeodesicIndex {
  std::size_t geodesic = 0;
  std::optional<FormalSeries> index;  // empty for tied levels
  std::optional<FormalSeries::Coefficient> multiplicity;
  std::string diagnostic;
};

struct LevelIndex {
  double energy = 0.0;
  std::vector<std::size_t> members;
  std::vector<double> eps;
  std::vector<FormalSeries> pairs;  // one per eps
  bool eps_independent = false;
};

struct MorseReport {
  std::string scenario;
  std::vector<LevelIndex> levels;
  std::vector<GeodesicIndex> geodesics;
  FormalSeries total;
  FormalSeries space;
  MorseRelation relation;
  int essential_components = 0;  // measured; should match space's constant term
  /// mult(broken) against the lower bound n - 1 (n classical geodesics).
  std::optional<FormalSeries::Coefficient> broken_multiplicity;
  std::size_t classical_count = 0;

  bool broken_bound_holds() const noexcept;
  bool space_consistent() const noexcept;
};

/// Strip half-widths per level: fractions of the level's clean radius, or
/// absolute values (which throw MorseError on a dirty strip).
struct EpsRule {
  std::vector<double> values{0.3, 0.45};
  bool relative = true;
};

/// Indices of every level (one pair series per eps), per-geodesic indices
/// for untied levels, the total over levels and the relation check. Relation
/// violations are report content, never thrown.
MorseReport morse_relation_check(const MorseInput& in, std::string scenario,
                                 const EpsRule& eps = {});

struct LemmaPl {
  bool holds = false;
  FormalSeries xa, ab, xb;  // pairs (c, b), (b, a), (c, a)
  std::optional<FormalSeries> quotient;
};

/// P(X, A) + P(A, B) = P(X, B) + (1 + lambda) Q with X, A, B the sublevels
/// at c >= b >= a and Q >= 0.
LemmaPl lemma_pl_check(const FilteredComplex& complex, double a, double b, double c);

}  // namespace conemorse
