#pragma once

#include <numbers>
#include <stdexcept>
#include <string>

namespace conemorse {

inline constexpr double kPi = std::numbers::pi;

/// Half-width of the open sheet window: a developed angle Delta admits a
/// chord iff |Delta| < kPi - kChordMargin.
inline constexpr double kChordMargin = 1e-12;

class GeometryError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A Euclidean cone with a single apex of total angle alpha.
/// alpha == 2*pi is the flat plane with a marked vertex at the origin.
class ConeSurface {
public:
  explicit ConeSurface(double alpha);

  double alpha() const noexcept { return alpha_; }
  bool is_plane() const noexcept;

  bool operator==(const ConeSurface&) const = default;

private:
  double alpha_;
};

/// Intrinsic polar coordinates. r == 0 is the vertex, whose theta is 0.
struct ConePoint {
  double r = 0.0;
  double theta = 0.0;

  bool is_vertex() const noexcept { return r == 0.0; }
  bool operator==(const ConePoint&) const = default;
};

struct PlanarPoint {
  double x = 0.0;
  double y = 0.0;
};

double normalize_angle(const ConeSurface& surface, double theta);

/// Builds a canonical point: theta reduced to [0, alpha), vertex theta = 0.
ConePoint make_point(const ConeSurface& surface, double r, double theta);

/// Places p at developed angle theta + sheet * alpha.
PlanarPoint develop(const ConeSurface& surface, const ConePoint& p, int sheet);

/// Developed angle between p and the sheet-`sheet` copy of q:
/// normalize(theta_q - theta_p) + sheet * alpha, with the difference taken in
/// [0, alpha) before the shift. Throws GeometryError at the vertex.
double chord_angle(const ConeSurface& surface, const ConePoint& p,
                   const ConePoint& q, int sheet);

/// True iff the developed angle gives a straight chord that misses the apex.
inline bool chord_admissible(double delta) noexcept {
  return (delta < 0 ? -delta : delta) < kPi - kChordMargin;
}

/// Inclusive range of sheets worth scanning for admissible chords.
struct SheetRange {
  int first = 0;
  int last = -1;
};
SheetRange candidate_sheets(const ConeSurface& surface, const ConePoint& p,
                            const ConePoint& q);

enum class RouteKind { Chord, ThroughVertex };

struct Route {
  RouteKind kind = RouteKind::ThroughVertex;
  int sheet = 0;     // meaningful for Chord only
  double delta = 0;  // developed angle of the chord; 0 for ThroughVertex

  bool operator==(const Route&) const = default;
};

struct LocalDistance {
  double length = 0.0;
  Route route;
};

/// Intrinsic distance on the cone together with the geodesic that realizes
/// it: the shortest admissible chord, or p -> vertex -> q.
LocalDistance local_distance(const ConeSurface& surface, const ConePoint& p,
                             const ConePoint& q);

/// Point at fraction t in [0, 1] along the given minimizing route from a to b.
ConePoint point_along(const ConeSurface& surface, const ConePoint& a,
                      const ConePoint& b, const Route& route, double t);

/// Convenience: point_along the local_distance route.
ConePoint geodesic_midpoint(const ConeSurface& surface, const ConePoint& a,
                            const ConePoint& b);

std::string to_string(const Route& route);

}  // namespace conemorse
