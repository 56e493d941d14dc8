#pragma once

// Brute-force cross-checks kept apart from the library: shortest paths on a
// dense polar grid of the developed cone, and dense GF(2) homology.

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "conemorse/cone_geometry.hpp"
#include "conemorse/homology.hpp"

namespace oracle {

class OracleError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct GridSpec {
  double step = 1e-3;  // ring spacing, and arc spacing along each ring
  double reach = 5.0;  // neighbour radius, in steps
};

// Grid on the universal cover of the punctured development: ring i has radius
// i * step and nodes every 1/i radians of lifted angle, so p (angle 0) is a
// node and q snaps within half a step. Edges join nodes closer than
// reach * step whose angular gap is below pi; their weight is the straight
// developed length. The apex is a node only when allowed, joined to every
// node within reach.
struct SheetLength {
  int sheet = 0;
  double delta = 0.0;             // developed angle of this copy of q
  std::optional<double> length;   // none if no grid path beats the cutoff
};

/// Apex-free grid distance from p to the sheet-k copy of q, if below `cutoff`.
std::optional<double> grid_shortest(const conemorse::ConeSurface& surface,
                                    const conemorse::ConePoint& p,
                                    const conemorse::ConePoint& q, int sheet,
                                    const GridSpec& spec, bool allow_apex, double cutoff);

/// Every sheet with |k| <= ceil(2 pi / alpha) + 1 (k relative to the canonical
/// angle difference). Lengths are only reported below r_p + r_q: a copy of q
/// that no chord reaches is never closer than the broken line.
std::vector<SheetLength> grid_shortest_per_sheet(const conemorse::ConeSurface& surface,
                                                 const conemorse::ConePoint& p,
                                                 const conemorse::ConePoint& q,
                                                 const GridSpec& spec);

/// Sheets whose apex-free grid path is shorter than r_p + r_q.
int grid_count(const std::vector<SheetLength>& sheets);

/// Ranks of H_q(K_upper, K_lower) for q = 0, 1, 2 by dense elimination of the
/// full boundary matrices. At most 64 simplices.
std::array<int, 3> exhaustive_homology(const conemorse::FilteredComplex& complex,
                                       double upper, double lower);

}  // namespace oracle
