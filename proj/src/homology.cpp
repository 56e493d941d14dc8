#include "conemorse/homology.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace conemorse {

namespace {

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

std::uint64_t triangle_key(int a, int b, int c) {
  int v[3] = {a, b, c};
  std::sort(v, v + 3);
  return (static_cast<std::uint64_t>(v[0]) << 42) |
         (static_cast<std::uint64_t>(v[1]) << 21) | static_cast<std::uint64_t>(v[2]);
}

// Columns over GF(2) as sorted row-index lists. Returns the rank.
int gf2_rank(std::vector<std::vector<int>> columns) {
  std::unordered_map<int, int> pivot_owner;  // low row -> column index
  int rank = 0;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    auto& col = columns[j];
    std::vector<int> scratch;
    while (!col.empty()) {
      const auto it = pivot_owner.find(col.back());
      if (it == pivot_owner.end()) break;
      const auto& other = columns[it->second];
      scratch.clear();
      std::set_symmetric_difference(col.begin(), col.end(), other.begin(),
                                    other.end(), std::back_inserter(scratch));
      col.swap(scratch);
    }
    if (!col.empty()) {
      pivot_owner.emplace(col.back(), static_cast<int>(j));
      ++rank;
    }
  }
  return rank;
}

void check_degree(int q) {
  if (q != 0 && q != 1) {
    throw HomologyError("homology degree " + std::to_string(q) +
                        " is not computed (only 0 and 1)");
  }
}

}  // namespace

int FilteredComplex::add_vertex(double value) {
  vertices_.push_back(value);
  return static_cast<int>(vertices_.size()) - 1;
}

int FilteredComplex::add_edge(int a, int b) {
  const int n = static_cast<int>(vertices_.size());
  if (a < 0 || b < 0 || a >= n || b >= n) throw HomologyError("edge vertex out of range");
  return add_edge(a, b, std::max(vertices_[a], vertices_[b]));
}

int FilteredComplex::add_edge(int a, int b, double value) {
  const int n = static_cast<int>(vertices_.size());
  if (a < 0 || b < 0 || a >= n || b >= n) throw HomologyError("edge vertex out of range");
  if (a == b) throw HomologyError("degenerate edge");
  if (value < vertices_[a] || value < vertices_[b]) {
    throw HomologyError("edge value below one of its vertices");
  }
  const auto key = edge_key(a, b);
  if (edge_index_.count(key)) throw HomologyError("duplicate edge");
  edges_.push_back(Edge{std::min(a, b), std::max(a, b), value});
  const int id = static_cast<int>(edges_.size()) - 1;
  edge_index_.emplace(key, id);
  return id;
}

int FilteredComplex::find_edge(int a, int b) const {
  const auto it = edge_index_.find(edge_key(a, b));
  return it == edge_index_.end() ? -1 : it->second;
}

int FilteredComplex::add_triangle(int a, int b, int c) {
  const int e0 = find_edge(a, b), e1 = find_edge(a, c), e2 = find_edge(b, c);
  if (e0 < 0 || e1 < 0 || e2 < 0) throw HomologyError("triangle is missing an edge");
  const double v = std::max({edges_[e0].value, edges_[e1].value, edges_[e2].value});
  return add_triangle(a, b, c, v);
}

int FilteredComplex::add_triangle(int a, int b, int c, double value) {
  if (a == b || b == c || a == c) throw HomologyError("degenerate triangle");
  const int e0 = find_edge(a, b), e1 = find_edge(a, c), e2 = find_edge(b, c);
  if (e0 < 0 || e1 < 0 || e2 < 0) throw HomologyError("triangle is missing an edge");
  if (value < edges_[e0].value || value < edges_[e1].value || value < edges_[e2].value) {
    throw HomologyError("triangle value below one of its edges");
  }
  const auto key = triangle_key(a, b, c);
  if (triangle_index_.count(key)) throw HomologyError("duplicate triangle");
  int v[3] = {a, b, c};
  std::sort(v, v + 3);
  triangles_.push_back(Triangle{v[0], v[1], v[2],
                                {find_edge(v[0], v[1]), find_edge(v[0], v[2]),
                                 find_edge(v[1], v[2])},
                                value});
  const int id = static_cast<int>(triangles_.size()) - 1;
  triangle_index_.emplace(key, id);
  return id;
}

std::vector<double> pairwise_distances(std::span<const DiscretePath> samples) {
  const std::size_t n = samples.size();
  std::vector<double> dist(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = path_distance(samples[i], samples[j]);
      dist[i * n + j] = d;
      dist[j * n + i] = d;
    }
  }
  return dist;
}

double default_rips_scale(std::span<const double> distances, std::size_t n) {
  if (distances.size() != n * n) throw HomologyError("distance matrix has the wrong size");
  if (n < 2) return 1.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double nn = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) nn = std::min(nn, distances[i * n + j]);
    }
    sum += nn;
  }
  const double scale = 2.0 * sum / static_cast<double>(n);
  return scale > 0.0 ? scale : 1.0;
}

double default_rips_scale(std::span<const DiscretePath> samples) {
  if (samples.size() < 2) return 1.0;
  return default_rips_scale(pairwise_distances(samples), samples.size());
}

FilteredComplex build_rips(std::span<const double> energies,
                           std::span<const double> distances, double scale) {
  const std::size_t n = energies.size();
  if (n < 1) throw HomologyError("a Rips complex needs at least one sample");
  if (distances.size() != n * n) throw HomologyError("distance matrix has the wrong size");
  if (!(scale > 0.0)) throw HomologyError("Rips scale must be positive");
  FilteredComplex k;
  for (double e : energies) k.add_vertex(e);
  std::vector<std::vector<int>> nbr(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (distances[i * n + j] <= scale) {
        k.add_edge(static_cast<int>(i), static_cast<int>(j));
        nbr[i].push_back(static_cast<int>(j));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& ni = nbr[i];
    for (std::size_t x = 0; x < ni.size(); ++x) {
      const auto& nj = nbr[ni[x]];
      for (std::size_t y = x + 1; y < ni.size(); ++y) {
        if (std::binary_search(nj.begin(), nj.end(), ni[y])) {
          k.add_triangle(static_cast<int>(i), ni[x], ni[y]);
        }
      }
    }
  }
  return k;
}

FilteredComplex build_rips(std::span<const DiscretePath> samples, double scale) {
  if (samples.empty()) throw HomologyError("a Rips complex needs at least one sample");
  std::vector<double> energies;
  energies.reserve(samples.size());
  for (const auto& s : samples) energies.push_back(discrete_energy(s));
  return build_rips(energies, pairwise_distances(samples), scale);
}

std::array<int, 3> relative_ranks(const FilteredComplex& complex, double upper,
                                  double lower) {
  if (lower > upper) throw HomologyError("lower level exceeds upper level");
  const auto in_pair = [&](double v) { return v <= upper && !(v <= lower); };

  const auto verts = complex.vertices();
  std::vector<int> vrow(verts.size(), -1);
  int n0 = 0;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (in_pair(verts[i])) vrow[i] = n0++;
  }

  const auto edges = complex.edges();
  std::vector<int> erow(edges.size(), -1);
  std::vector<std::vector<int>> d1;
  int n1 = 0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!in_pair(edges[e].value)) continue;
    erow[e] = n1++;
    std::vector<int> col;
    for (int v : {edges[e].a, edges[e].b}) {
      if (vrow[v] >= 0) col.push_back(vrow[v]);
    }
    std::sort(col.begin(), col.end());
    d1.push_back(std::move(col));
  }

  std::vector<std::vector<int>> d2;
  int n2 = 0;
  for (const Triangle& t : complex.triangles()) {
    if (!in_pair(t.value)) continue;
    ++n2;
    std::vector<int> col;
    for (int e : t.edges) {
      if (erow[e] >= 0) col.push_back(erow[e]);
    }
    std::sort(col.begin(), col.end());
    d2.push_back(std::move(col));
  }

  const int r1 = gf2_rank(std::move(d1));
  const int r2 = gf2_rank(std::move(d2));
  return {n0 - r1, n1 - r1 - r2, n2 - r2};  // nothing above dimension 2
}

int relative_betti(const FilteredComplex& complex, double upper, double lower, int q) {
  check_degree(q);
  return relative_ranks(complex, upper, lower)[q];
}

int sublevel_betti(const FilteredComplex& complex, double level, int q) {
  check_degree(q);
  return relative_ranks(complex, level, kNoLowerLevel)[q];
}

PersistencePairs persistence0(const FilteredComplex& complex) {
  const auto verts = complex.vertices();
  const int n = static_cast<int>(verts.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  // Elder: earlier birth, then smaller index.
  const auto elder = [&](int a, int b) {
    return verts[a] < verts[b] || (verts[a] == verts[b] && a < b);
  };
  const auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };

  const auto edges = complex.edges();
  std::vector<int> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return edges[x].value < edges[y].value;
  });

  PersistencePairs pairs;
  for (int e : order) {
    int ra = find(edges[e].a);
    int rb = find(edges[e].b);
    if (ra == rb) continue;
    if (elder(rb, ra)) std::swap(ra, rb);  // ra is the elder root
    pairs.push_back(PersistencePair{verts[rb], edges[e].value, 0});
    parent[rb] = ra;
  }
  for (int v = 0; v < n; ++v) {
    if (find(v) == v) pairs.push_back(PersistencePair{verts[v]});
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
    return a.birth < b.birth || (a.birth == b.birth && a.death < b.death);
  });
  return pairs;
}

int alive_at(const PersistencePairs& pairs, double level) {
  return static_cast<int>(std::count_if(pairs.begin(), pairs.end(), [&](const auto& p) {
    return p.birth <= level && level < p.death;
  }));
}

int merge_deaths(const PersistencePairs& pairs, double lo, double hi) {
  return static_cast<int>(std::count_if(pairs.begin(), pairs.end(), [&](const auto& p) {
    return !p.essential() && p.death > p.birth && p.death >= lo && p.death <= hi;
  }));
}

FormalSeries poincare_pair(const FilteredComplex& complex, double upper, double lower) {
  const auto ranks = relative_ranks(complex, upper, lower);
  FormalSeries s;
  s.set_coefficient(0, static_cast<FormalSeries::Coefficient>(ranks[0]));
  s.set_coefficient(1, static_cast<FormalSeries::Coefficient>(ranks[1]));
  return s;
}

}  // namespace conemorse
