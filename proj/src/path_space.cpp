#include "conemorse/path_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace conemorse {

namespace {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
double norm(Vec2 a) { return std::hypot(a.x, a.y); }

// Planar chart in which p sits at angle 0 on the positive x axis. Points are
// mapped back to the cone with a lifted polar angle so that polylines which
// wind around the origin keep their winding. The chart need not be isometric
// near the apex: if the lifted end angle is not a representative of
// theta_q - theta_p mod alpha, all angles are scaled onto the nearest one so
// the polyline still ends on q's ray.
class DevelopedFrame {
public:
  DevelopedFrame(const ConeSurface& surface, const ConePoint& p, const ConePoint& q)
      : surface_(surface),
        theta0_(p.theta),
        gap_(q.is_vertex() || p.is_vertex() ? 0.0
                                            : normalize_angle(surface, q.theta - p.theta)) {}

  std::vector<ConePoint> to_cone(const std::vector<Vec2>& pts) const {
    std::vector<double> phi(pts.size(), 0.0);
    double prev = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (norm(pts[i]) == 0.0) continue;
      double a = std::atan2(pts[i].y, pts[i].x);
      a += 2.0 * kPi * std::round((prev - a) / (2.0 * kPi));
      phi[i] = prev = a;
    }
    const double end = phi.back();
    const double alpha = surface_.alpha();
    const double target = gap_ + alpha * std::round((end - gap_) / alpha);
    const double scale =
        std::abs(target - end) > 1e-9 && std::abs(end) > 1e-12 ? target / end : 1.0;
    std::vector<ConePoint> out;
    out.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double r = norm(pts[i]);
      out.push_back(r == 0.0 ? ConePoint{} : make_point(surface_, r, theta0_ + scale * phi[i]));
    }
    return out;
  }

private:
  ConeSurface surface_;
  double theta0_;
  double gap_;
};

Vec2 polar(double r, double phi) { return {r * std::cos(phi), r * std::sin(phi)}; }

// Resamples the polyline through `corners` at N + 1 points equally spaced in
// arc length.
std::vector<Vec2> resample(const std::vector<Vec2>& corners, int segments) {
  std::vector<double> cum(corners.size(), 0.0);
  for (std::size_t i = 1; i < corners.size(); ++i) {
    cum[i] = cum[i - 1] + norm(corners[i] - corners[i - 1]);
  }
  const double total = cum.back();
  std::vector<Vec2> out;
  out.reserve(segments + 1);
  out.push_back(corners.front());
  std::size_t leg = 1;
  for (int i = 1; i < segments; ++i) {
    const double s = total * i / segments;
    while (leg + 1 < corners.size() && cum[leg] < s) ++leg;
    const double span = cum[leg] - cum[leg - 1];
    const double t = span > 0.0 ? (s - cum[leg - 1]) / span : 0.0;
    out.push_back(corners[leg - 1] + t * (corners[leg] - corners[leg - 1]));
  }
  out.push_back(corners.back());
  return out;
}

struct Family {
  Vec2 start;   // p in the frame
  Vec2 target;  // the sheet copy of q
  Vec2 anchor;  // point on the chord that is pulled to the origin
};

// One homotopy per classical geodesic, from the chord (s = 1) to the broken
// line (s = 0): the chord point splitting it in the ratio r_p : r_q is pulled
// straight to the apex.
std::vector<Family> homotopy_families(const ConePoint& p, const ConePoint& q,
                                      const std::vector<Geodesic>& classical) {
  std::vector<Family> out;
  const Vec2 start{p.r, 0.0};
  const double balance = p.r / (p.r + q.r);
  for (const Geodesic& g : classical) {
    const Vec2 target = polar(q.r, g.delta);
    out.push_back(Family{start, target, start + balance * (target - start)});
  }
  return out;
}

std::vector<Vec2> family_member(const Family& f, double s, int segments) {
  return resample({f.start, s * f.anchor, f.target}, segments);
}

// The broken line drawn with its second leg at a planar angle below pi: the
// gap itself, the gap the other way round the apex, or (cones wider than 2 pi)
// a compressed stand-in that to_cone scales back.
std::vector<Vec2> broken_planar(const ConeSurface& surface, const ConePoint& p,
                                const ConePoint& q, int segments) {
  const double d = normalize_angle(surface, q.theta - p.theta);
  double psi = d;
  if (d > kPi) psi = surface.alpha() - d <= kPi ? d - surface.alpha() : 0.9 * kPi;
  return resample({Vec2{p.r, 0.0}, Vec2{}, polar(q.r, psi)}, segments);
}

std::vector<Vec2> chord_planar(const ConePoint& p, const ConePoint& q,
                               double delta, int segments) {
  return resample({Vec2{p.r, 0.0}, polar(q.r, delta)}, segments);
}

// Largest-remainder split of `total` proportional to `weights`, at least one
// each when total allows it.
std::vector<int> apportion(int total, const std::vector<double>& weights) {
  const int n = static_cast<int>(weights.size());
  std::vector<int> out(n, 0);
  if (n == 0 || total <= 0) return out;
  if (total < n) {
    for (int i = 0; i < total; ++i) out[i] = 1;
    return out;
  }
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<std::pair<double, int>> rema;
  int used = 0;
  for (int i = 0; i < n; ++i) {
    const double exact = (total - n) * weights[i] / sum;
    out[i] = 1 + static_cast<int>(std::floor(exact));
    used += out[i];
    rema.emplace_back(exact - std::floor(exact), i);
  }
  std::stable_sort(rema.begin(), rema.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (int i = 0; used < total; ++i, ++used) ++out[rema[i % n].second];
  return out;
}

DiscretePath make_path(const ConeSurface& surface, const ConePoint& p,
                       const ConePoint& q, const std::vector<Vec2>& planar) {
  auto nodes = DevelopedFrame(surface, p, q).to_cone(planar);
  // Pin endpoints exactly; the round trip through the frame is not bit-exact.
  nodes.front() = p;
  nodes.back() = q;
  return DiscretePath(surface, std::move(nodes));
}

}  // namespace

DiscretePath::DiscretePath(ConeSurface surface, std::vector<ConePoint> nodes)
    : surface_(surface), nodes_(std::move(nodes)) {
  if (nodes_.size() < 3) {
    throw PathError("a discrete path needs at least 2 segments");
  }
  for (const ConePoint& n : nodes_) {
    if (!(n.r >= 0.0) || !std::isfinite(n.r) || !std::isfinite(n.theta) ||
        (n.r == 0.0 && n.theta != 0.0) ||
        (n.r > 0.0 && (n.theta < 0.0 || n.theta >= surface_.alpha()))) {
      throw PathError("path node is not a canonical cone point");
    }
  }
}

double discrete_energy(const DiscretePath& path) {
  const auto nodes = path.nodes();
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double d = local_distance(path.surface(), nodes[i], nodes[i + 1]).length;
    sum += d * d;
  }
  return path.segments() * sum;
}

double discrete_length(const DiscretePath& path) {
  const auto nodes = path.nodes();
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    sum += local_distance(path.surface(), nodes[i], nodes[i + 1]).length;
  }
  return sum;
}

namespace {

// Relaxes nodes in place; `seg` holds the current segment lengths.
void relax_sweep(const ConeSurface& surface, std::vector<ConePoint>& nodes,
                 std::vector<double>& seg, double step) {
  for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
    const ConePoint& a = nodes[i - 1];
    const ConePoint& b = nodes[i + 1];
    const double before = seg[i - 1] * seg[i - 1] + seg[i] * seg[i];
    const ConePoint mid =
        point_along(surface, a, b, local_distance(surface, a, b).route, 0.5);

    const auto try_move = [&](const ConePoint& cand) {
      const double d1 = local_distance(surface, a, cand).length;
      const double d2 = local_distance(surface, cand, b).length;
      if (d1 * d1 + d2 * d2 < before) {
        nodes[i] = cand;
        seg[i - 1] = d1;
        seg[i] = d2;
        return true;
      }
      return false;
    };

    if (step < 1.0) {
      const ConePoint& c = nodes[i];
      const ConePoint cand =
          point_along(surface, c, mid, local_distance(surface, c, mid).route, step);
      if (try_move(cand)) continue;
    }
    try_move(mid);
  }
}

std::vector<double> segment_lengths(const ConeSurface& surface,
                                    const std::vector<ConePoint>& nodes) {
  std::vector<double> seg(nodes.size() - 1);
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    seg[i] = local_distance(surface, nodes[i], nodes[i + 1]).length;
  }
  return seg;
}

double energy_of(const std::vector<double>& seg) {
  double sum = 0.0;
  for (double d : seg) sum += d * d;
  return static_cast<double>(seg.size()) * sum;
}

void check_step(double step) {
  if (!(step > 0.0 && step <= 1.0)) {
    throw PathError("relaxation step must lie in (0, 1]");
  }
}

}  // namespace

DiscretePath curve_shorten_step(const DiscretePath& path, double step) {
  check_step(step);
  std::vector<ConePoint> nodes(path.nodes().begin(), path.nodes().end());
  std::vector<double> seg = segment_lengths(path.surface(), nodes);
  const double before = energy_of(seg);
  relax_sweep(path.surface(), nodes, seg, step);
  if (energy_of(seg) > before) return path;  // rounding in the summation
  return DiscretePath(path.surface(), std::move(nodes));
}

FlowResult flow_to_critical(const DiscretePath& path, const FlowOptions& options) {
  check_step(options.step);
  if (!(options.tol > 0.0)) throw PathError("flow tolerance must be positive");
  const ConeSurface& surface = path.surface();
  std::vector<ConePoint> nodes(path.nodes().begin(), path.nodes().end());
  std::vector<double> seg = segment_lengths(surface, nodes);
  std::vector<double> trace{energy_of(seg)};
  bool converged = false;
  int iter = 0;
  std::vector<ConePoint> saved_nodes;
  std::vector<double> saved_seg;
  while (iter < options.max_iter) {
    saved_nodes = nodes;
    saved_seg = seg;
    relax_sweep(surface, nodes, seg, options.step);
    ++iter;
    const double prev = trace.back();
    const double now = energy_of(seg);
    if (now >= prev) {
      // No representable decrease left: undo and stop.
      nodes.swap(saved_nodes);
      seg.swap(saved_seg);
      trace.push_back(prev);
      converged = true;
      break;
    }
    trace.push_back(now);
    if ((prev - now) <= options.tol * prev) {
      converged = true;
      break;
    }
  }
  return FlowResult{DiscretePath(surface, std::move(nodes)), std::move(trace),
                    iter, converged};
}

std::optional<double> winding_angle(const DiscretePath& path) {
  const auto nodes = path.nodes();
  double sweep = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const LocalDistance ld = local_distance(path.surface(), nodes[i], nodes[i + 1]);
    if (ld.route.kind == RouteKind::ThroughVertex) return std::nullopt;
    sweep += ld.route.delta;
  }
  return sweep;
}

bool touches_vertex(const DiscretePath& path) {
  const auto nodes = path.nodes();
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (nodes[i].is_vertex()) return true;
    const LocalDistance ld = local_distance(path.surface(), nodes[i], nodes[i + 1]);
    if (ld.route.kind == RouteKind::ThroughVertex && ld.length > 0.0) return true;
  }
  return nodes.back().is_vertex();
}

std::optional<GeodesicKind> classify_limit(const FlowResult& result,
                                           std::span<const Geodesic> geodesics,
                                           double energy_tol) {
  const double e = result.energy();
  const bool at_vertex = touches_vertex(result.final);
  const std::optional<double> sweep =
      at_vertex ? std::nullopt : winding_angle(result.final);
  const double alpha = result.final.surface().alpha();
  std::optional<GeodesicKind> match;
  int matches = 0;
  for (const Geodesic& g : geodesics) {
    if (std::abs(e - g.energy) > energy_tol) continue;
    if (g.kind.is_broken()) {
      if (!at_vertex) continue;
    } else {
      if (!sweep || std::abs(*sweep - g.delta) > 0.25 * std::min(alpha, kPi)) {
        continue;
      }
    }
    match = g.kind;
    ++matches;
  }
  if (matches != 1) return std::nullopt;
  return match;
}

double path_distance(const DiscretePath& a, const DiscretePath& b) {
  if (a.segments() != b.segments()) {
    throw PathError("path_distance: segment counts differ");
  }
  if (!(a.surface() == b.surface())) {
    throw PathError("path_distance: paths live on different surfaces");
  }
  if (!(a.start() == b.start()) || !(a.end() == b.end())) {
    throw PathError("path_distance: endpoints differ");
  }
  double worst = 0.0;
  const auto na = a.nodes();
  const auto nb = b.nodes();
  for (std::size_t i = 1; i + 1 < na.size(); ++i) {
    worst = std::max(worst, local_distance(a.surface(), na[i], nb[i]).length);
  }
  return worst;
}

DiscretePath sample_geodesic(const ConeSurface& surface, const Geodesic& g,
                             int segments) {
  if (g.kind.is_broken()) {
    return make_path(surface, g.p, g.q, broken_planar(surface, g.p, g.q, segments));
  }
  return make_path(surface, g.p, g.q, chord_planar(g.p, g.q, g.delta, segments));
}

DiscretePath polar_interpolation(const ConeSurface& surface, const ConePoint& p,
                                 const ConePoint& q, int segments) {
  if (segments < 2) throw PathError("a discrete path needs at least 2 segments");
  const double d = normalize_angle(surface, q.theta - p.theta);
  std::vector<ConePoint> nodes;
  nodes.reserve(segments + 1);
  for (int i = 0; i <= segments; ++i) {
    const double t = static_cast<double>(i) / segments;
    nodes.push_back(make_point(surface, (1.0 - t) * p.r + t * q.r, p.theta + t * d));
  }
  nodes.front() = p;
  nodes.back() = q;
  return DiscretePath(surface, std::move(nodes));
}

DiscretePath chord_interpolation(const ConeSurface& surface, const ConePoint& p,
                                 const ConePoint& q, int segments) {
  const double d0 = chord_angle(surface, p, q, 0);
  const double d1 = chord_angle(surface, p, q, -1);
  const double delta = std::abs(d1) < std::abs(d0) ? d1 : d0;
  if (!chord_admissible(delta)) {
    throw PathError("no straight chord joins the endpoints in the development");
  }
  return make_path(surface, p, q, chord_planar(p, q, delta, segments));
}

std::vector<DiscretePath> sample_paths(const ConeSurface& surface,
                                       const ConePoint& p, const ConePoint& q,
                                       int count, SampleStrategy strategy,
                                       std::uint64_t seed,
                                       const SampleOptions& options) {
  if (count < 1) throw PathError("sample count must be at least 1");
  if (options.segments < 2) throw PathError("a discrete path needs at least 2 segments");
  const int n_seg = options.segments;
  const std::vector<Geodesic> classical = enumerate_classical(surface, p, q);
  std::vector<DiscretePath> out;

  switch (strategy) {
    case SampleStrategy::ChordInterpolation: {
      const std::size_t n = std::min<std::size_t>(count, classical.size());
      for (std::size_t j = 0; j < n; ++j) {
        out.push_back(sample_geodesic(surface, classical[j], n_seg));
      }
      break;
    }
    case SampleStrategy::VertexRouted: {
      out.push_back(make_path(surface, p, q, broken_planar(surface, p, q, n_seg)));
      const auto families = homotopy_families(p, q, classical);
      std::vector<double> travel;
      for (const Family& f : families) travel.push_back(norm(f.anchor));
      const std::vector<int> share = apportion(count - 1, travel);
      for (std::size_t j = 0; j < families.size(); ++j) {
        for (int i = 1; i <= share[j]; ++i) {
          const double s = static_cast<double>(i) / share[j];
          out.push_back(make_path(surface, p, q, family_member(families[j], s, n_seg)));
        }
      }
      break;
    }
    case SampleStrategy::Perturbed: {
      std::vector<std::vector<Vec2>> pool;
      for (const Geodesic& g : classical) pool.push_back(chord_planar(p, q, g.delta, n_seg));
      pool.push_back(broken_planar(surface, p, q, n_seg));
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      std::normal_distribution<double> gauss(0.0, 1.0);
      const double scale = options.amplitude * std::max(p.r, q.r);
      constexpr int kModes = 3;
      for (int c = 0; c < count; ++c) {
        std::vector<Vec2> pts = pool[pick(rng)];
        Vec2 coeff[kModes];
        for (int m = 0; m < kModes; ++m) {
          coeff[m] = Vec2{gauss(rng), gauss(rng)};
          coeff[m] = (scale / (m + 1)) * coeff[m];
        }
        for (int i = 1; i < n_seg; ++i) {
          const double t = static_cast<double>(i) / n_seg;
          for (int m = 0; m < kModes; ++m) {
            pts[i] = pts[i] + std::sin((m + 1) * kPi * t) * coeff[m];
          }
        }
        out.push_back(make_path(surface, p, q, pts));
      }
      break;
    }
  }
  return out;
}

}  // namespace conemorse
