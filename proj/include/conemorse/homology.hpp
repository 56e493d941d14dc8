#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "conemorse/path_space.hpp"
#include "conemorse/series.hpp"

namespace conemorse {

class HomologyError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct Edge {
  int a = 0;
  int b = 0;
  double value = 0.0;
};

struct Triangle {
  int a = 0;
  int b = 0;
  int c = 0;
  std::array<int, 3> edges{};  // indices into the edge list
  double value = 0.0;
};

/// Simplicial complex of dimension <= 2 with a filtration value per simplex.
/// Every face is present with a value no larger than its coface's.
class FilteredComplex {
public:
  int add_vertex(double value);
  /// Edge valued at the max of its endpoints.
  int add_edge(int a, int b);
  int add_edge(int a, int b, double value);
  /// Triangle valued at the max of its edges; all three edges must exist.
  int add_triangle(int a, int b, int c);
  int add_triangle(int a, int b, int c, double value);

  std::span<const double> vertices() const noexcept { return vertices_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Triangle> triangles() const noexcept { return triangles_; }
  std::size_t size() const noexcept {
    return vertices_.size() + edges_.size() + triangles_.size();
  }
  /// Index of edge {a, b}, or -1.
  int find_edge(int a, int b) const;

private:
  std::vector<double> vertices_;
  std::vector<Edge> edges_;
  std::vector<Triangle> triangles_;
  std::unordered_map<std::uint64_t, int> edge_index_;
  std::unordered_map<std::uint64_t, int> triangle_index_;
};

/// Twice the mean nearest-neighbour path_distance; tolerant of duplicates
/// only in that they pull the mean down.
double default_rips_scale(std::span<const DiscretePath> samples);
/// Same rule on an n x n precomputed distance matrix.
double default_rips_scale(std::span<const double> distances, std::size_t n);

/// Pairwise path_distance matrix, row-major.
std::vector<double> pairwise_distances(std::span<const DiscretePath> samples);

/// Vietoris-Rips complex (up to triangles) on sampled paths: vertex values are
/// discrete energies, edges join samples within `scale`, and every simplex is
/// valued at the max energy of its vertices.
FilteredComplex build_rips(std::span<const DiscretePath> samples, double scale);

/// Same, from precomputed energies and a distance matrix.
FilteredComplex build_rips(std::span<const double> energies,
                           std::span<const double> distances, double scale);

/// Betti numbers (over GF(2)) of the subcomplex with values <= level.
int sublevel_betti(const FilteredComplex& complex, double level, int q);

/// Ranks of H_q(K_upper, K_lower; GF(2)) for q = 0, 1, 2. Degree 2 is exact
/// because the complex stops at triangles; the Rips estimate of it is not
/// meaningful, but the algebra (exact sequences) needs it.
std::array<int, 3> relative_ranks(const FilteredComplex& complex, double upper,
                                  double lower);
int relative_betti(const FilteredComplex& complex, double upper, double lower, int q);

inline constexpr double kNoLowerLevel = -std::numeric_limits<double>::infinity();

struct PersistencePair {
  double birth = 0.0;
  double death = std::numeric_limits<double>::infinity();
  int dimension = 0;

  bool essential() const noexcept { return death == std::numeric_limits<double>::infinity(); }
};

using PersistencePairs = std::vector<PersistencePair>;

/// 0-dimensional persistence by union-find over the edge order; the younger
/// component dies at a merge (elder rule). Sorted by (birth, death).
PersistencePairs persistence0(const FilteredComplex& complex);

/// Components alive at `level`: birth <= level < death.
int alive_at(const PersistencePairs& pairs, double level);

/// Merges with positive persistence whose death lies in [lo, hi].
int merge_deaths(const PersistencePairs& pairs, double lo, double hi);

/// sum_{q in {0,1}} rank H_q(upper, lower) * lambda^q. Degrees >= 2 are not
/// computed.
FormalSeries poincare_pair(const FilteredComplex& complex, double upper, double lower);

}  // namespace conemorse
