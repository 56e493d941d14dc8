#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace oracle {

using conemorse::ConePoint;
using conemorse::ConeSurface;
using conemorse::kPi;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Distance in the universal cover of the punctured plane: straight when the
// angular gap is below pi, through the apex otherwise.
double cover_distance(double r1, double phi1, double r2, double phi2) {
  const double d = std::abs(phi1 - phi2);
  if (d >= kPi) return r1 + r2;
  return std::sqrt(std::max(0.0, r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * std::cos(d)));
}

class RingGrid {
public:
  RingGrid(double step, double lo, double hi, double rmax, int reach, bool apex)
      : step_(step), reach_(reach) {
    rings_ = static_cast<int>(std::ceil(rmax / step));
    jlo_.assign(rings_ + 1, 0);
    offset_.assign(rings_ + 2, 0);
    for (int i = 1; i <= rings_; ++i) {
      jlo_[i] = static_cast<int>(std::ceil(lo * i));
      const int jhi = static_cast<int>(std::floor(hi * i));
      offset_[i + 1] = offset_[i] + std::max(0, jhi - jlo_[i] + 1);
    }
    apex_ = apex ? offset_[rings_ + 1] : -1;
    size_ = offset_[rings_ + 1] + (apex ? 1 : 0);
  }

  long size() const { return size_; }
  long apex() const { return apex_; }
  int rings() const { return rings_; }

  long id(int i, int j) const {
    if (i < 1 || i > rings_) return -1;
    const long k = j - jlo_[i];
    if (k < 0 || offset_[i] + k >= offset_[i + 1]) return -1;
    return offset_[i] + k;
  }

  // (ring, angle index) of a non-apex node.
  std::pair<int, int> locate(long n) const {
    const int i = static_cast<int>(
        std::upper_bound(offset_.begin() + 1, offset_.end(), n) - offset_.begin() - 1);
    return {i, static_cast<int>(n - offset_[i]) + jlo_[i]};
  }

  double radius(int i) const { return i * step_; }
  static double angle(int i, int j) { return static_cast<double>(j) / i; }

  template <class F>
  void neighbours(long n, F&& visit) const {
    const double limit = reach_ * step_;
    if (n == apex_) {
      for (int i = 1; i <= std::min(reach_, rings_); ++i) {
        for (long m = offset_[i]; m < offset_[i + 1]; ++m) visit(m, radius(i));
      }
      return;
    }
    const auto [i, j] = locate(n);
    const double r = radius(i), phi = angle(i, j);
    if (apex_ >= 0 && r <= limit) visit(apex_, r);
    for (int i2 = std::max(1, i - reach_); i2 <= std::min(rings_, i + reach_); ++i2) {
      const double r2 = radius(i2);
      const double c = (r * r + r2 * r2 - limit * limit) / (2.0 * r * r2);
      const double gap = c <= -1.0 ? kPi : std::acos(std::min(1.0, c));
      const int j0 = static_cast<int>(std::ceil((phi - gap) * i2));
      const int j1 = static_cast<int>(std::floor((phi + gap) * i2));
      for (int j2 = j0; j2 <= j1; ++j2) {
        const long m = id(i2, j2);
        if (m < 0 || m == n) continue;
        const double phi2 = angle(i2, j2);
        if (std::abs(phi2 - phi) >= kPi - 1e-12) continue;  // would cross the apex
        const double w = cover_distance(r, phi, r2, phi2);
        if (w <= limit) visit(m, w);
      }
    }
  }

private:
  double step_;
  int reach_;
  int rings_ = 0;
  std::vector<int> jlo_;
  std::vector<long> offset_;
  long apex_ = -1;
  long size_ = 0;
};

std::optional<double> astar(const ConeSurface& surface, const ConePoint& p, const ConePoint& q,
                            int sheet, double step, int reach, bool allow_apex, double cutoff) {
  const double delta = conemorse::chord_angle(surface, p, q, sheet);
  const double lo = std::min(0.0, delta) - 0.3, hi = std::max(0.0, delta) + 0.3;
  const double rmax = 1.25 * std::max(p.r, q.r);
  RingGrid grid(step, lo, hi, rmax, reach, allow_apex);

  const int ip = static_cast<int>(std::lround(p.r / step));
  const int iq = static_cast<int>(std::lround(q.r / step));
  const int jq = static_cast<int>(std::lround(delta * iq));
  if (ip < 1 || iq < 1) throw OracleError("endpoint snap failure: radius below half a step");
  if (std::abs(ip * step - p.r) > 0.5 * step + 1e-15 ||
      std::abs(iq * step - q.r) > 0.5 * step + 1e-15 ||
      std::abs(RingGrid::angle(iq, jq) - delta) * iq * step > 0.5 * step + 1e-15) {
    throw OracleError("endpoint snap failure");
  }
  const long src = grid.id(ip, 0), dst = grid.id(iq, jq);
  if (src < 0 || dst < 0) throw OracleError("endpoint snap failure: outside the grid window");
  const double tr = grid.radius(iq), tphi = RingGrid::angle(iq, jq);

  const auto h = [&](long n) {
    if (n == grid.apex()) return tr;
    const auto [i, j] = grid.locate(n);
    return cover_distance(grid.radius(i), RingGrid::angle(i, j), tr, tphi);
  };

  std::vector<double> dist(grid.size(), kInf);
  std::vector<char> done(grid.size(), 0);
  using Item = std::pair<double, long>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  dist[src] = 0.0;
  open.emplace(h(src), src);
  while (!open.empty()) {
    const auto [f, n] = open.top();
    open.pop();
    if (done[n]) continue;
    done[n] = 1;
    if (n == dst) break;
    if (f >= cutoff) break;
    const double g = dist[n];
    grid.neighbours(n, [&](long m, double w) {
      const double g2 = g + w;
      if (g2 < dist[m]) {
        const double f2 = g2 + h(m);
        if (f2 < cutoff) {
          dist[m] = g2;
          open.emplace(f2, m);
        }
      }
    });
  }
  if (dist[dst] < cutoff) return dist[dst];
  return std::nullopt;
}

}  // namespace

std::optional<double> grid_shortest(const ConeSurface& surface, const ConePoint& p,
                                    const ConePoint& q, int sheet, const GridSpec& spec,
                                    bool allow_apex, double cutoff) {
  if (p.is_vertex() || q.is_vertex()) throw OracleError("endpoint at the apex");
  if (!(spec.step > 0.0) || !(spec.reach >= 1.0)) throw OracleError("bad grid spec");
  return astar(surface, p, q, sheet, spec.step, static_cast<int>(spec.reach), allow_apex,
               cutoff);
}

std::vector<SheetLength> grid_shortest_per_sheet(const ConeSurface& surface, const ConePoint& p,
                                                 const ConePoint& q, const GridSpec& spec) {
  const int window = static_cast<int>(std::ceil(2.0 * kPi / surface.alpha())) + 1;
  const double broken = p.r + q.r;
  // A coarse pass discards copies of q the grid cannot reach below ~r_p + r_q;
  // grid lengths never undercut the cover distance, so this loses nothing
  // beyond the 2% margin.
  GridSpec coarse = spec;
  coarse.step = std::max(spec.step, 1e-2);
  std::vector<SheetLength> out;
  for (int k = -window; k <= window; ++k) {
    SheetLength s;
    s.sheet = k;
    s.delta = conemorse::chord_angle(surface, p, q, k);
    if (coarse.step > spec.step &&
        !grid_shortest(surface, p, q, k, coarse, false, 1.02 * broken)) {
      out.push_back(s);
      continue;
    }
    s.length = grid_shortest(surface, p, q, k, spec, false, broken);
    out.push_back(s);
  }
  return out;
}

int grid_count(const std::vector<SheetLength>& sheets) {
  return static_cast<int>(
      std::count_if(sheets.begin(), sheets.end(), [](const auto& s) { return s.length.has_value(); }));
}

namespace {

// Rank over GF(2) of a dense 0/1 matrix, plain row reduction.
int dense_rank(std::vector<std::vector<char>> m) {
  if (m.empty()) return 0;
  const std::size_t cols = m.front().size();
  int rank = 0;
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(m.size()); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.size() && !m[pivot][c]) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r != static_cast<std::size_t>(rank) && m[r][c]) {
        for (std::size_t k = 0; k < cols; ++k) m[r][k] ^= m[rank][k];
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace

std::array<int, 3> exhaustive_homology(const conemorse::FilteredComplex& complex, double upper,
                                       double lower) {
  if (complex.size() > 64) throw OracleError("exhaustive_homology: more than 64 simplices");
  const auto in = [&](double v) { return v <= upper && v > lower; };
  const auto verts = complex.vertices();
  const auto edges = complex.edges();
  const auto tris = complex.triangles();

  std::vector<int> vs, es, ts;
  for (std::size_t i = 0; i < verts.size(); ++i) if (in(verts[i])) vs.push_back(static_cast<int>(i));
  for (std::size_t i = 0; i < edges.size(); ++i) if (in(edges[i].value)) es.push_back(static_cast<int>(i));
  for (std::size_t i = 0; i < tris.size(); ++i) if (in(tris[i].value)) ts.push_back(static_cast<int>(i));

  // Rows are faces inside the pair, columns are cofaces; faces in the lower
  // sublevel are quotiented away by simply leaving them out.
  std::vector<std::vector<char>> d1(vs.size(), std::vector<char>(es.size(), 0));
  for (std::size_t c = 0; c < es.size(); ++c) {
    for (std::size_t r = 0; r < vs.size(); ++r) {
      if (edges[es[c]].a == vs[r] || edges[es[c]].b == vs[r]) d1[r][c] = 1;
    }
  }
  std::vector<std::vector<char>> d2(es.size(), std::vector<char>(ts.size(), 0));
  for (std::size_t c = 0; c < ts.size(); ++c) {
    const auto& t = tris[ts[c]];
    for (std::size_t r = 0; r < es.size(); ++r) {
      const auto& e = edges[es[r]];
      const bool a = e.a == t.a || e.a == t.b || e.a == t.c;
      const bool b = e.b == t.a || e.b == t.b || e.b == t.c;
      if (a && b) d2[r][c] = 1;
    }
  }
  const int r1 = dense_rank(d1), r2 = dense_rank(d2);
  return {static_cast<int>(vs.size()) - r1, static_cast<int>(es.size()) - r1 - r2,
          static_cast<int>(ts.size()) - r2};
}

}  // namespace oracle
