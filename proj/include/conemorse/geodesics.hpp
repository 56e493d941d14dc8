#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "conemorse/cone_geometry.hpp"

namespace conemorse {

enum class GeodesicType { Classical, Broken };

/// Classical geodesics are labelled by their winding sheet; the broken one
/// (p -> vertex -> q) is counted once up to reparametrization.
struct GeodesicKind {
  GeodesicType type = GeodesicType::Broken;
  int sheet = 0;

  static GeodesicKind classical(int k) { return {GeodesicType::Classical, k}; }
  static GeodesicKind broken() { return {GeodesicType::Broken, 0}; }

  bool is_broken() const noexcept { return type == GeodesicType::Broken; }
  bool operator==(const GeodesicKind&) const = default;
};

struct Geodesic {
  GeodesicKind kind;
  double delta = 0.0;  // developed angle; 0 for the broken geodesic
  double length = 0.0;
  double energy = 0.0;  // length^2 for the constant-speed parametrization on [0,1]
  ConePoint p;
  ConePoint q;
};

/// All geodesics between two points, sorted by energy (ties by sheet, broken
/// last among equals).
struct GeodesicSet {
  std::vector<Geodesic> geodesics;
  /// Index pairs (into geodesics) whose energies coincide to kTieTolerance.
  std::vector<std::pair<std::size_t, std::size_t>> ties;

  bool has_ties() const noexcept { return !ties.empty(); }
  std::size_t classical_count() const noexcept;
  /// True if geodesics[i] shares its level with another geodesic.
  bool is_tied(std::size_t i) const noexcept;
};

inline constexpr double kTieTolerance = 1e-9;

std::vector<Geodesic> enumerate_classical(const ConeSurface& surface,
                                          const ConePoint& p,
                                          const ConePoint& q);

Geodesic broken_geodesic(const ConeSurface& surface, const ConePoint& p,
                         const ConePoint& q);

GeodesicSet enumerate_all(const ConeSurface& surface, const ConePoint& p,
                          const ConePoint& q);

int geodesic_count(const ConeSurface& surface, const ConePoint& p,
                   const ConePoint& q);

std::string to_string(const GeodesicKind& kind);

}  // namespace conemorse
