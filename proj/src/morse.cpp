#include "conemorse/morse.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace conemorse {

namespace {

FormalSeries from_ranks(std::span<const int> ranks) {
  FormalSeries s;
  for (std::size_t q = 0; q < ranks.size(); ++q) {
    s.set_coefficient(static_cast<int>(q), static_cast<FormalSeries::Coefficient>(ranks[q]));
  }
  return s;
}

FormalSeries full_pair(const FilteredComplex& k, double upper, double lower) {
  const auto r = relative_ranks(k, upper, lower);
  return from_ranks(r);
}

void require_clean(const MorseInput& in, double level, double eps) {
  if (!(eps > 0.0)) throw MorseError("strip half-width must be positive");
  for (const auto& l : in.levels) {
    if (std::abs(l.energy - level) <= kTieTolerance * std::max(1.0, level)) continue;
    if (l.energy >= level - eps && l.energy <= level + eps) {
      std::ostringstream msg;
      msg << "strip not clean: critical energy " << l.energy << " lies in [" << level - eps
          << ", " << level + eps << "]";
      throw MorseError(msg.str());
    }
  }
}

const CriticalLevel& level_of(const MorseInput& in, std::size_t i) {
  for (const auto& l : in.levels) {
    if (std::find(l.members.begin(), l.members.end(), i) != l.members.end()) return l;
  }
  throw MorseError("geodesic " + std::to_string(i) + " is not on any critical level");
}

}  // namespace

std::vector<CriticalLevel> critical_levels(const GeodesicSet& set) {
  std::vector<CriticalLevel> out;
  for (std::size_t i = 0; i < set.geodesics.size(); ++i) {
    const double e = set.geodesics[i].energy;
    if (!out.empty() &&
        std::abs(out.back().energy - e) <= kTieTolerance * std::max(1.0, e)) {
      out.back().members.push_back(i);
    } else {
      out.push_back(CriticalLevel{e, {i}});
    }
  }
  return out;
}

double clean_radius(std::span<const CriticalLevel> levels, std::size_t level) {
  if (level >= levels.size()) throw MorseError("level index out of range");
  double r = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < levels.size(); ++j) {
    if (j != level) r = std::min(r, std::abs(levels[j].energy - levels[level].energy));
  }
  if (std::isinf(r)) r = std::max(1.0, levels[level].energy);
  return r;
}

FormalSeries index_of_level(const MorseInput& in, double level, double eps) {
  require_clean(in, level, eps);
  return poincare_pair(in.complex, level + eps, level - eps);
}

bool epsilon_independence_check(const MorseInput& in, double level, double eps1,
                                double eps2) {
  return index_of_level(in, level, eps1) == index_of_level(in, level, eps2);
}

FormalSeries index_of_geodesic(const MorseInput& in, std::size_t i, double eps) {
  if (i >= in.geodesics.geodesics.size()) throw MorseError("geodesic index out of range");
  const auto& l = level_of(in, i);
  if (l.tied()) {
    throw MorseError("isolated-geodesic hypothesis fails: " +
                     std::to_string(l.members.size()) + " geodesics share energy " +
                     std::to_string(l.energy));
  }
  return index_of_level(in, l.energy, eps);
}

FormalSeries::Coefficient multiplicity(const MorseInput& in, std::size_t i, double eps) {
  return index_of_geodesic(in, i, eps).at_one();
}

FormalSeries space_series() { return FormalSeries{1}; }

MorseRelation morse_relation(const FormalSeries& total, const FormalSeries& space) {
  MorseRelation r;
  try {
    r.quotient = divide_one_plus_lambda(series_sub_checked(total, space));
  } catch (const SeriesError& e) {
    r.violation = e.what();
  }
  return r;
}

bool MorseReport::broken_bound_holds() const noexcept {
  if (!broken_multiplicity) return false;
  return classical_count == 0 || *broken_multiplicity + 1 >= classical_count;
}

bool MorseReport::space_consistent() const noexcept {
  return static_cast<FormalSeries::Coefficient>(essential_components) == space.coefficient(0);
}

MorseReport morse_relation_check(const MorseInput& in, std::string scenario,
                                 const EpsRule& eps) {
  if (eps.values.empty()) throw MorseError("no strip half-widths given");
  for (double f : eps.values) {
    if (!(f > 0.0) || (eps.relative && !(f < 1.0))) {
      throw MorseError("eps fraction must lie in (0, 1)");
    }
  }
  MorseReport rep;
  rep.scenario = std::move(scenario);
  rep.space = space_series();
  rep.classical_count = in.geodesics.classical_count();

  for (std::size_t li = 0; li < in.levels.size(); ++li) {
    const auto& l = in.levels[li];
    LevelIndex out;
    out.energy = l.energy;
    out.members = l.members;
    const double radius = clean_radius(in.levels, li);
    for (double f : eps.values) {
      const double e = eps.relative ? f * radius : f;
      out.eps.push_back(e);
      out.pairs.push_back(index_of_level(in, l.energy, e));
    }
    out.eps_independent = std::all_of(out.pairs.begin(), out.pairs.end(),
                                      [&](const auto& s) { return s == out.pairs.front(); });
    rep.total = rep.total + out.pairs.front();

    for (std::size_t g : l.members) {
      GeodesicIndex gi;
      gi.geodesic = g;
      if (l.tied()) {
        gi.diagnostic = "tied level: " + std::to_string(l.members.size()) +
                        " geodesics share this energy; per-geodesic index skipped";
      } else {
        gi.index = out.pairs.front();
        gi.multiplicity = gi.index->at_one();
        if (in.geodesics.geodesics[g].kind.is_broken()) rep.broken_multiplicity = gi.multiplicity;
      }
      rep.geodesics.push_back(std::move(gi));
    }
    rep.levels.push_back(std::move(out));
  }
  std::sort(rep.geodesics.begin(), rep.geodesics.end(),
            [](const auto& a, const auto& b) { return a.geodesic < b.geodesic; });

  rep.relation = morse_relation(rep.total, rep.space);
  const auto pairs = persistence0(in.complex);
  rep.essential_components = static_cast<int>(std::count_if(
      pairs.begin(), pairs.end(), [](const auto& p) { return p.essential(); }));
  return rep;
}

LemmaPl lemma_pl_check(const FilteredComplex& complex, double a, double b, double c) {
  if (!(a <= b && b <= c)) throw MorseError("levels must satisfy a <= b <= c");
  LemmaPl out;
  out.xa = full_pair(complex, c, b);
  out.ab = full_pair(complex, b, a);
  out.xb = full_pair(complex, c, a);
  try {
    out.quotient = divide_one_plus_lambda(series_sub_checked(out.xa + out.ab, out.xb));
    out.holds = true;
  } catch (const SeriesError&) {
    out.holds = false;
  }
  return out;
}

}  // namespace conemorse
