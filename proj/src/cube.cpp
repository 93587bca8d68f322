#include "khbound/cube.hpp"

#include <bit>
#include <numeric>
#include <string>

#include "khbound/errors.hpp"

namespace khbound {

namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

// Edge labels mapped to dense indices 0..E-1 in sorted label order.
struct EdgeIndex {
  std::vector<int> labels;
  std::unordered_map<int, int> index;
  std::vector<std::array<int, 4>> crossing_edges;

  explicit EdgeIndex(const Diagram& d) : labels(d.edge_labels()) {
    for (int i = 0; i < static_cast<int>(labels.size()); ++i) index[labels[i]] = i;
    for (const auto& x : d.crossings()) {
      crossing_edges.push_back({index[x.edges[0]], index[x.edges[1]], index[x.edges[2]], index[x.edges[3]]});
    }
  }
};

// Circle id per edge for one state; ids are dense and ordered by smallest edge.
int smooth(const EdgeIndex& ei, std::uint32_t state, std::vector<int>& circle) {
  const int e = static_cast<int>(ei.labels.size());
  UnionFind uf(e);
  for (std::size_t x = 0; x < ei.crossing_edges.size(); ++x) {
    const auto& c = ei.crossing_edges[x];
    if (state >> x & 1U) {
      uf.unite(c[0], c[3]);
      uf.unite(c[1], c[2]);
    } else {
      uf.unite(c[0], c[1]);
      uf.unite(c[2], c[3]);
    }
  }
  circle.assign(e, -1);
  std::vector<int> id(e, -1);
  int count = 0;
  for (int i = 0; i < e; ++i) {
    int root = uf.find(i);
    if (id[root] < 0) id[root] = count++;
    circle[i] = id[root];
  }
  return count;
}

}  // namespace

ResolutionState resolve(const Diagram& d, const std::vector<bool>& choices) {
  if (static_cast<int>(choices.size()) != d.num_crossings()) {
    throw InputError("resolve: expected " + std::to_string(d.num_crossings()) + " choices, got " +
                     std::to_string(choices.size()));
  }
  EdgeIndex ei(d);
  std::uint32_t state = 0;
  for (std::size_t x = 0; x < choices.size(); ++x) {
    if (choices[x]) state |= 1U << x;
  }
  std::vector<int> circle;
  int n = smooth(ei, state, circle);
  ResolutionState rs;
  rs.choices = choices;
  rs.n_circles = n + d.circles();
  for (std::size_t i = 0; i < ei.labels.size(); ++i) rs.circle_of_edge[ei.labels[i]] = circle[i];
  return rs;
}

ChainComplex build_cube(const Diagram& d, int crossing_limit) {
  const int n = d.num_crossings();
  if (n > crossing_limit || n > 24) {
    throw ResourceError("naive cube limited to " + std::to_string(crossing_limit) + " crossings, diagram has " +
                        std::to_string(n) + "; use the scan backend");
  }
  const DiagramStats st = stats(d);
  const EdgeIndex ei(d);
  const std::uint32_t n_states = 1U << n;
  const int extra = d.circles();

  std::vector<std::vector<int>> circles(n_states);
  std::vector<int> n_edge_circles(n_states);
  for (std::uint32_t s = 0; s < n_states; ++s) n_edge_circles[s] = smooth(ei, s, circles[s]);

  ChainComplex cc;
  cc.c_plus = st.c_plus;
  cc.c_minus = st.c_minus;
  cc.groups.resize(n + 1);
  std::vector<std::size_t> offset(n_states);
  for (std::uint32_t s = 0; s < n_states; ++s) {
    const int r = std::popcount(s);
    const int k = n_edge_circles[s] + extra;
    offset[s] = cc.groups[r].size();
    for (std::uint32_t labels = 0; labels < (1U << k); ++labels) {
      const int minus = std::popcount(labels);
      const int q = (k - 2 * minus) + r + st.c_plus - 2 * st.c_minus;
      cc.groups[r].push_back(CubeGenerator{s, labels, q});
    }
  }
  for (int r = 0; r < n; ++r) cc.differentials.emplace_back(cc.groups[r + 1].size(), cc.groups[r].size());

  for (std::uint32_t s = 0; s < n_states; ++s) {
    const int r = std::popcount(s);
    const int ks = n_edge_circles[s];
    for (int x = 0; x < n; ++x) {
      if (s >> x & 1U) continue;
      const std::uint32_t t = s | (1U << x);
      const int kt = n_edge_circles[t];
      const Rational sign = (std::popcount(s & ((1U << x) - 1U)) % 2 == 0) ? Rational(1) : Rational(-1);
      const auto& ce = ei.crossing_edges[x];
      const int ca = circles[s][ce[0]];
      const int cc_ = circles[s][ce[2]];
      const bool merge = ca != cc_;

      // Image of each circle of s other than the ones at the crossing.
      std::vector<int> image(ks + extra, -1);
      for (int e = 0; e < static_cast<int>(ei.labels.size()); ++e) image[circles[s][e]] = circles[t][e];
      for (int i = 0; i < extra; ++i) image[ks + i] = kt + i;

      SparseMatrix& dm = cc.differentials[r];
      const std::uint32_t n_labels = 1U << (ks + extra);
      for (std::uint32_t labels = 0; labels < n_labels; ++labels) {
        std::uint32_t base = 0;
        for (int i = 0; i < ks + extra; ++i) {
          if (i == ca || i == cc_) continue;
          if (labels >> i & 1U) base |= 1U << image[i];
        }
        const std::size_t col = offset[s] + labels;
        if (merge) {
          const bool la = labels >> ca & 1U;
          const bool lc = labels >> cc_ & 1U;
          if (la && lc) continue;
          const std::uint32_t out = base | ((la || lc) ? 1U << circles[t][ce[0]] : 0U);
          dm.add(offset[t] + out, col, sign);
        } else {
          const int a = circles[t][ce[0]];
          const int b = circles[t][ce[1]];
          if (labels >> ca & 1U) {
            dm.add(offset[t] + (base | 1U << a | 1U << b), col, sign);
          } else {
            dm.add(offset[t] + (base | 1U << a), col, sign);
            dm.add(offset[t] + (base | 1U << b), col, sign);
          }
        }
      }
    }
  }
#ifndef NDEBUG
  verify_d_squared(cc);
#endif
  return cc;
}

void verify_d_squared(const ChainComplex& c) {
  for (std::size_t r = 0; r + 1 < c.differentials.size(); ++r) {
    if (!(c.differentials[r + 1] * c.differentials[r]).is_zero()) {
      throw InvariantError("d∘d != 0 at r = " + std::to_string(r));
    }
  }
}

Laurent euler_characteristic(const ChainComplex& c) {
  Laurent chi;
  for (std::size_t r = 0; r < c.groups.size(); ++r) {
    const int i = c.homological_degree(static_cast<int>(r));
    for (const auto& g : c.groups[r]) chi.add_term(g.q, i % 2 == 0 ? 1 : -1);
  }
  return chi;
}

std::map<std::pair<int, int>, long long> cube_homology(const ChainComplex& c) {
  const int top = static_cast<int>(c.groups.size()) - 1;
  // rank of d_r restricted to quantum degree j
  std::vector<std::map<int, long long>> ranks(c.groups.size());
  for (int r = 0; r < top; ++r) {
    const SparseMatrix dt = c.differentials[r].transpose();  // rows: sources
    std::map<int, std::vector<std::size_t>> sources;
    for (std::size_t g = 0; g < c.groups[r].size(); ++g) sources[c.groups[r][g].q].push_back(g);
    std::map<int, std::vector<std::size_t>> targets;
    for (std::size_t g = 0; g < c.groups[r + 1].size(); ++g) targets[c.groups[r + 1][g].q].push_back(g);
    for (const auto& [q, rows] : sources) {
      auto tit = targets.find(q);
      if (tit == targets.end()) continue;
      std::unordered_map<std::size_t, std::size_t> compact;
      for (std::size_t k = 0; k < tit->second.size(); ++k) compact[tit->second[k]] = k;
      SparseMatrix block(rows.size(), tit->second.size());
      for (std::size_t k = 0; k < rows.size(); ++k) {
        for (const auto& [col, v] : dt.row(rows[k])) block.set(k, compact.at(col), v);
      }
      ranks[r][q] = static_cast<long long>(rank(block));
    }
  }
  std::map<std::pair<int, int>, long long> betti;
  for (int r = 0; r <= top; ++r) {
    std::map<int, long long> dims;
    for (const auto& g : c.groups[r]) ++dims[g.q];
    for (const auto& [q, dim] : dims) {
      long long b = dim;
      if (auto it = ranks[r].find(q); it != ranks[r].end()) b -= it->second;
      if (r > 0) {
        if (auto it = ranks[r - 1].find(q); it != ranks[r - 1].end()) b -= it->second;
      }
      if (b < 0) throw InvariantError("negative Betti number from cube ranks");
      if (b > 0) betti[{c.homological_degree(r), q}] = b;
    }
  }
  return betti;
}

}  // namespace khbound
