#include "conemorse/cone_geometry.hpp"

#include <cmath>
#include <limits>

namespace conemorse {

namespace {

double chord_length(double ra, double rb, double delta) {
  const double s = std::sin(0.5 * delta);
  const double dr = ra - rb;
  return std::sqrt(dr * dr + 4.0 * ra * rb * s * s);
}

}  // namespace

ConeSurface::ConeSurface(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw GeometryError("cone angle must be a finite positive number");
  }
}

bool ConeSurface::is_plane() const noexcept {
  return std::abs(alpha_ - 2.0 * kPi) < 1e-12;
}

double normalize_angle(const ConeSurface& surface, double theta) {
  const double alpha = surface.alpha();
  double t = std::fmod(theta, alpha);
  if (t < 0.0) t += alpha;
  if (t >= alpha) t -= alpha;  // fmod rounding can land exactly on alpha
  if (t < 0.0 || t >= alpha) t = 0.0;
  return t;
}

ConePoint make_point(const ConeSurface& surface, double r, double theta) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw GeometryError("radial coordinate must be finite and nonnegative");
  }
  if (!std::isfinite(theta)) {
    throw GeometryError("angular coordinate must be finite");
  }
  if (r == 0.0) return ConePoint{0.0, 0.0};
  return ConePoint{r, normalize_angle(surface, theta)};
}

PlanarPoint develop(const ConeSurface& surface, const ConePoint& p, int sheet) {
  if (p.is_vertex()) return PlanarPoint{0.0, 0.0};
  const double phi = p.theta + sheet * surface.alpha();
  return PlanarPoint{p.r * std::cos(phi), p.r * std::sin(phi)};
}

double chord_angle(const ConeSurface& surface, const ConePoint& p,
                   const ConePoint& q, int sheet) {
  if (p.is_vertex() || q.is_vertex()) {
    throw GeometryError("vertex has no angle");
  }
  return normalize_angle(surface, q.theta - p.theta) + sheet * surface.alpha();
}

SheetRange candidate_sheets(const ConeSurface& surface, const ConePoint& p,
                            const ConePoint& q) {
  const double d = normalize_angle(surface, q.theta - p.theta);
  const double alpha = surface.alpha();
  return SheetRange{static_cast<int>(std::ceil((-kPi - d) / alpha)),
                    static_cast<int>(std::floor((kPi - d) / alpha))};
}

LocalDistance local_distance(const ConeSurface& surface, const ConePoint& p,
                             const ConePoint& q) {
  const double broken = p.r + q.r;
  if (p.is_vertex() || q.is_vertex()) {
    return LocalDistance{broken, Route{}};
  }
  const double d = normalize_angle(surface, q.theta - p.theta);
  const SheetRange range = candidate_sheets(surface, p, q);
  LocalDistance best{std::numeric_limits<double>::infinity(), Route{}};
  for (int k = range.first; k <= range.last; ++k) {
    const double delta = d + k * surface.alpha();
    if (!chord_admissible(delta)) continue;
    const double len = chord_length(p.r, q.r, delta);
    if (len < best.length) {
      best = LocalDistance{len, Route{RouteKind::Chord, k, delta}};
    }
  }
  if (best.route.kind == RouteKind::Chord && best.length < broken) return best;
  return LocalDistance{broken, Route{}};
}

ConePoint point_along(const ConeSurface& surface, const ConePoint& a,
                      const ConePoint& b, const Route& route, double t) {
  if (t <= 0.0) return a;
  if (t >= 1.0) return b;
  if (route.kind == RouteKind::Chord && !a.is_vertex() && !b.is_vertex()) {
    const double x = (1.0 - t) * a.r + t * b.r * std::cos(route.delta);
    const double y = t * b.r * std::sin(route.delta);
    const double r = std::hypot(x, y);
    if (r == 0.0) return ConePoint{};
    return make_point(surface, r, a.theta + std::atan2(y, x));
  }
  const double s = t * (a.r + b.r);
  if (s < a.r) return ConePoint{a.r - s, a.theta};
  if (s == a.r) return ConePoint{};
  return ConePoint{s - a.r, b.theta};
}

ConePoint geodesic_midpoint(const ConeSurface& surface, const ConePoint& a,
                            const ConePoint& b) {
  return point_along(surface, a, b, local_distance(surface, a, b).route, 0.5);
}

std::string to_string(const Route& route) {
  if (route.kind == RouteKind::ThroughVertex) return "through_vertex";
  return "chord(" + std::to_string(route.sheet) + ")";
}

}  // namespace conemorse
