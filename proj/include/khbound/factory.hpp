#pragma once

#include <utility>
#include <vector>

#include "khbound/diagram.hpp"

namespace khbound {

/// Cabling parameters for K(p, pt): p parallel strands whose pairwise
/// linking number is t. All strands are oriented parallel to the companion.
struct CableSpec {
  int p = 1;
  int t = 0;
};

/// One braid letter: sigma_{position+1}^{sign} acting on strands
/// (position, position+1), positions counted from 0 on the left.
struct BraidLetter {
  int position = 0;
  int sign = 1;
};

/// Closure of a braid on `strands` strands drawn bottom to top. Positive
/// letters give positive crossings.
Diagram braid_closure(int strands, const std::vector<BraidLetter>& word);

/// (sigma_1 ... sigma_{p-1})^{|q|}, inverted when q < 0, closed up: T(p, q).
Diagram torus_diagram(int p, int q);

/// Blackboard p-parallel of a knot diagram with t - writhe full twists
/// inserted on the highest-labelled edge, a diagram of K(p, pt).
/// Throws InputError if d is not a one-component diagram or p < 1.
Diagram cable_diagram(const Diagram& d, CableSpec spec);

/// Side-by-side union; labels of d2 are shifted past d1's.
Diagram disjoint_union(const Diagram& d1, const Diagram& d2);

/// Connected sum of two knot diagrams, splicing edge e1 of d1 with edge e2
/// of d2 (defaults: the highest labels). Throws InputError for links.
Diagram connected_sum(const Diagram& d1, const Diagram& d2, int e1 = 0, int e2 = 0);

}  // namespace khbound
