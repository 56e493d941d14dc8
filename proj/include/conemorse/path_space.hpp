#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "conemorse/cone_geometry.hpp"
#include "conemorse/geodesics.hpp"

namespace conemorse {

class PathError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Fixed-endpoint polyline with N >= 2 segments; a finite-dimensional slice
/// of the space of H^1 paths from p to q. Immutable.
class DiscretePath {
public:
  DiscretePath(ConeSurface surface, std::vector<ConePoint> nodes);

  const ConeSurface& surface() const noexcept { return surface_; }
  std::span<const ConePoint> nodes() const noexcept { return nodes_; }
  int segments() const noexcept { return static_cast<int>(nodes_.size()) - 1; }
  const ConePoint& start() const noexcept { return nodes_.front(); }
  const ConePoint& end() const noexcept { return nodes_.back(); }

private:
  ConeSurface surface_;
  std::vector<ConePoint> nodes_;
};

/// N * sum_i d_i^2 with d_i the intrinsic distance between consecutive nodes.
/// A uniform sampling of a constant-speed geodesic of length L gives L^2.
double discrete_energy(const DiscretePath& path);

/// Length of the polyline, sum_i d_i.
double discrete_length(const DiscretePath& path);

/// One Gauss-Seidel sweep of midpoint relaxation. Each interior node moves the
/// fraction `step` of the way to the midpoint of the local geodesic joining
/// its neighbours; a move is kept only if it lowers the local energy, so the
/// discrete energy never increases.
DiscretePath curve_shorten_step(const DiscretePath& path, double step = 1.0);

struct FlowOptions {
  double tol = 1e-10;     // relative energy decrease that counts as converged
  int max_iter = 100000;
  double step = 1.0;
};

struct FlowResult {
  DiscretePath final;
  std::vector<double> energy_trace;  // initial energy, then one per sweep
  int iterations = 0;
  bool converged = false;

  double energy() const { return energy_trace.back(); }
};

FlowResult flow_to_critical(const DiscretePath& path,
                            const FlowOptions& options = {});

/// Total developed angle swept by the path, or nullopt if some segment passes
/// through the vertex (the winding is then undefined).
std::optional<double> winding_angle(const DiscretePath& path);

/// True if a node sits on the vertex or a segment is routed through it.
bool touches_vertex(const DiscretePath& path);

/// Matches a flow limit to an enumerated geodesic by energy (absolute
/// tolerance) and, for classical candidates, by winding sheet. Returns
/// nullopt when no unique candidate matches.
std::optional<GeodesicKind> classify_limit(const FlowResult& result,
                                           std::span<const Geodesic> geodesics,
                                           double energy_tol);

/// max_i d(a_i, b_i). Paths must share surface, endpoints and N.
double path_distance(const DiscretePath& a, const DiscretePath& b);

enum class SampleStrategy {
  ChordInterpolation,  // sampled classical geodesics, one per sheet
  VertexRouted,        // broken path plus homotopies pulling each chord to it
  Perturbed,           // random smooth perturbations of the two kinds above
};

struct SampleOptions {
  int segments = 64;
  double amplitude = 0.25;  // perturbation size relative to max(r_p, r_q)
};

/// Deterministic given seed. ChordInterpolation returns min(count, n) paths
/// for n classical geodesics; VertexRouted returns the broken path first and
/// spreads the remaining count - 1 samples over the per-sheet homotopies.
std::vector<DiscretePath> sample_paths(const ConeSurface& surface,
                                       const ConePoint& p, const ConePoint& q,
                                       int count, SampleStrategy strategy,
                                       std::uint64_t seed,
                                       const SampleOptions& options = {});

/// Uniform samples of a geodesic: the chord for classical ones, the
/// arc-length parametrized broken line otherwise.
DiscretePath sample_geodesic(const ConeSurface& surface, const Geodesic& g,
                             int segments);

/// Straight interpolation in the (r, theta) chart, sweeping the canonical
/// angle difference in [0, alpha).
DiscretePath polar_interpolation(const ConeSurface& surface,
                                 const ConePoint& p, const ConePoint& q,
                                 int segments);

/// Uniform chord interpolation toward the copy of q nearest in angle: sheet 0
/// of the canonical representative, or sheet -1 when that chord is shorter.
DiscretePath chord_interpolation(const ConeSurface& surface,
                                 const ConePoint& p, const ConePoint& q,
                                 int segments);

}  // namespace conemorse
