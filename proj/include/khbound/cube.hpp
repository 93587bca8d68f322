#pragma once

#include <cstdint>
#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

#include "khbound/diagram.hpp"
#include "khbound/laurent.hpp"
#include "khbound/sparse_matrix.hpp"

namespace khbound {

/// Crossing smoothings. The 0-smoothing joins edges[0]-edges[1] and
/// edges[2]-edges[3]; the 1-smoothing joins edges[0]-edges[3] and
/// edges[1]-edges[2]. For a positive crossing the 0-smoothing is the
/// oriented one.
struct ResolutionState {
  std::vector<bool> choices;
  int n_circles = 0;
  /// Circle index of every edge label. Explicit circles take the indices
  /// after those carrying edges.
  std::unordered_map<int, int> circle_of_edge;
};

/// Throws InputError if the choice vector has the wrong length.
ResolutionState resolve(const Diagram& d, const std::vector<bool>& choices);

/// Generator of the cube complex: a resolution (bitmask over crossings) and
/// a labelling of its circles (bit set = v-, clear = v+).
struct CubeGenerator {
  std::uint32_t state = 0;
  std::uint32_t labels = 0;
  int q = 0;  ///< normalized quantum degree
};

/// The cube-of-resolutions complex over Q.
///
/// groups[r] lists the generators with r one-smoothings; differentials[r]
/// maps C_r -> C_{r+1} (rows index C_{r+1}). Normalized degrees are
/// i = r - c_minus and j = #v+ - #v- + r + c_plus - 2 c_minus.
struct ChainComplex {
  std::vector<std::vector<CubeGenerator>> groups;
  std::vector<SparseMatrix> differentials;
  int c_plus = 0;
  int c_minus = 0;

  int homological_degree(int r) const { return r - c_minus; }
};

inline constexpr int kDefaultNaiveLimit = 14;

/// Builds the full cube. Throws ResourceError when the diagram has more than
/// `crossing_limit` crossings. Debug builds verify d∘d = 0.
ChainComplex build_cube(const Diagram& d, int crossing_limit = kDefaultNaiveLimit);

/// Throws InvariantError if some composite d_{r+1} d_r is nonzero.
void verify_d_squared(const ChainComplex& c);

/// sum (-1)^i q^j dim C^{i,j}
Laurent euler_characteristic(const ChainComplex& c);

/// Betti numbers of the complex keyed by normalized (i, j), from exact ranks
/// of the differential restricted to each quantum degree.
std::map<std::pair<int, int>, long long> cube_homology(const ChainComplex& c);

}  // namespace khbound
