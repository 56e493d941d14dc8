#include "conemorse/geodesics.hpp"

#include <algorithm>
#include <cmath>

namespace conemorse {

namespace {

void require_off_vertex(const ConePoint& p, const ConePoint& q) {
  // Geodesics leaving the vertex form a continuum; the critical set would not
  // be finite.
  if (p.is_vertex() || q.is_vertex()) {
    throw GeometryError("vertex endpoint unsupported");
  }
}

}  // namespace

std::size_t GeodesicSet::classical_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(geodesics.begin(), geodesics.end(),
                    [](const Geodesic& g) { return !g.kind.is_broken(); }));
}

bool GeodesicSet::is_tied(std::size_t i) const noexcept {
  return std::any_of(ties.begin(), ties.end(), [i](const auto& t) {
    return t.first == i || t.second == i;
  });
}

std::vector<Geodesic> enumerate_classical(const ConeSurface& surface,
                                          const ConePoint& p,
                                          const ConePoint& q) {
  require_off_vertex(p, q);
  std::vector<Geodesic> out;
  const SheetRange range = candidate_sheets(surface, p, q);
  for (int k = range.first; k <= range.last; ++k) {
    const double delta = chord_angle(surface, p, q, k);
    if (!chord_admissible(delta)) continue;
    const double s = std::sin(0.5 * delta);
    const double dr = p.r - q.r;
    const double length = std::sqrt(dr * dr + 4.0 * p.r * q.r * s * s);
    out.push_back(Geodesic{GeodesicKind::classical(k), delta, length,
                           length * length, p, q});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Geodesic& a, const Geodesic& b) {
                     return a.energy < b.energy;
                   });
  return out;
}

Geodesic broken_geodesic(const ConeSurface& /*surface*/, const ConePoint& p,
                         const ConePoint& q) {
  require_off_vertex(p, q);
  const double length = p.r + q.r;
  return Geodesic{GeodesicKind::broken(), 0.0, length, length * length, p, q};
}

GeodesicSet enumerate_all(const ConeSurface& surface, const ConePoint& p,
                          const ConePoint& q) {
  GeodesicSet set;
  set.geodesics = enumerate_classical(surface, p, q);
  set.geodesics.push_back(broken_geodesic(surface, p, q));
  std::stable_sort(set.geodesics.begin(), set.geodesics.end(),
                   [](const Geodesic& a, const Geodesic& b) {
                     return a.energy < b.energy;
                   });
  const auto& g = set.geodesics;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      const double scale = std::max(1.0, std::max(g[i].energy, g[j].energy));
      if (std::abs(g[i].energy - g[j].energy) <= kTieTolerance * scale) {
        set.ties.emplace_back(i, j);
      }
    }
  }
  return set;
}

int geodesic_count(const ConeSurface& surface, const ConePoint& p,
                   const ConePoint& q) {
  return static_cast<int>(enumerate_classical(surface, p, q).size());
}

std::string to_string(const GeodesicKind& kind) {
  if (kind.is_broken()) return "broken";
  return "classical(" + std::to_string(kind.sheet) + ")";
}

}  // namespace conemorse
