#include "khbound/kh_table.hpp"

#include <bit>
#include <numeric>
#include <unordered_map>

#include "khbound/errors.hpp"
#include "khbound/hash.hpp"

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
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<int> parent_;
};

std::vector<std::array<int, 4>> dense_edges(const Diagram& d, int& n_edges) {
  std::unordered_map<int, int> index;
  for (int label : d.edge_labels()) {
    const int k = static_cast<int>(index.size());
    index.emplace(label, k);
  }
  n_edges = static_cast<int>(index.size());
  std::vector<std::array<int, 4>> out;
  for (const auto& x : d.crossings()) {
    out.push_back({index.at(x.edges[0]), index.at(x.edges[1]), index.at(x.edges[2]), index.at(x.edges[3])});
  }
  return out;
}

}  // namespace

std::string to_string(Backend b) {
  switch (b) {
    case Backend::kNaive:
      return "naive";
    case Backend::kScan:
      return "scan";
    case Backend::kAuto:
      return "auto";
  }
  return "auto";
}

Backend parse_backend(const std::string& s) {
  if (s == "naive") return Backend::kNaive;
  if (s == "scan") return Backend::kScan;
  if (s == "auto") return Backend::kAuto;
  throw InputError("unknown backend '" + s + "' (expected naive, scan or auto)");
}

nlohmann::json KhTable::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [ij, rank] : betti) rows.push_back({ij.first, ij.second, rank});
  return nlohmann::json{{"diagram", {{"name", diagram_name}, {"hash", diagram_hash}}},
                        {"backend", to_string(backend)},
                        {"c_plus", c_plus},
                        {"c_minus", c_minus},
                        {"betti", rows}};
}

KhTable KhTable::from_json(const nlohmann::json& j) {
  try {
    KhTable t;
    t.diagram_name = j.at("diagram").at("name").get<std::string>();
    t.diagram_hash = j.at("diagram").at("hash").get<std::string>();
    t.backend = parse_backend(j.at("backend").get<std::string>());
    if (t.backend == Backend::kAuto) throw InputError("table backend must be naive or scan");
    t.c_plus = j.at("c_plus").get<int>();
    t.c_minus = j.at("c_minus").get<int>();
    for (const auto& row : j.at("betti")) {
      if (!row.is_array() || row.size() != 3) throw InputError("betti rows must be [i, j, rank]");
      const long long rank = row[2].get<long long>();
      if (rank <= 0) throw InputError("betti ranks must be positive");
      if (!t.betti.emplace(std::pair{row[0].get<int>(), row[1].get<int>()}, rank).second) {
        throw InputError("duplicate betti entry");
      }
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed table JSON: ") + e.what());
  }
}

std::string KhTable::hash() const { return fnv1a_hex(to_json().dump()); }

KhTable kh_table(const Diagram& d, const KhOptions& options) {
  Backend backend = options.backend;
  if (backend == Backend::kAuto) {
    backend = d.num_crossings() <= options.naive_limit ? Backend::kNaive : Backend::kScan;
  }
  const DiagramStats st = stats(d);
  KhTable t;
  t.diagram_name = d.name();
  t.diagram_hash = d.hash();
  t.backend = backend;
  t.c_plus = st.c_plus;
  t.c_minus = st.c_minus;
  if (backend == Backend::kNaive) {
    t.betti = cube_homology(build_cube(d, std::max(options.naive_limit, kDefaultNaiveLimit)));
  } else {
    t.betti = scan(d, options.scan).betti;
  }
  return t;
}

std::pair<int, int> extreme_degrees(const KhTable& t) {
  if (t.betti.empty()) throw InvariantError("empty Khovanov table");
  int lo = t.betti.begin()->first.first;
  int hi = t.betti.rbegin()->first.first;
  return {lo, hi};
}

Laurent graded_euler(const BettiMap& betti) {
  Laurent out;
  for (const auto& [ij, rank] : betti) out.add_term(ij.second, ij.first % 2 == 0 ? rank : -rank);
  return out;
}

BettiMap dual_betti(const BettiMap& betti) {
  BettiMap out;
  for (const auto& [ij, rank] : betti) out[{-ij.first, -ij.second}] = rank;
  return out;
}

BettiMap shift_betti(const BettiMap& betti, int di, int dj) {
  BettiMap out;
  for (const auto& [ij, rank] : betti) out[{ij.first + di, ij.second + dj}] = rank;
  return out;
}

Laurent jones_via_kauffman(const Diagram& d) {
  const int n = d.num_crossings();
  if (n > kJonesCrossingLimit) {
    throw ResourceError("Kauffman bracket state sum limited to " + std::to_string(kJonesCrossingLimit) +
                        " crossings");
  }
  if (n == 0 && d.circles() == 0) return Laurent::monomial(0);
  int n_edges = 0;
  const auto xs = dense_edges(d, n_edges);

  // Bracket in A with every loop weighted by delta = -A^2 - A^-2, so the
  // unknot gets delta rather than 1.
  const Laurent delta = Laurent::monomial(2, -1) + Laurent::monomial(-2, -1);
  std::vector<Laurent> delta_pow{Laurent::monomial(0)};
  std::map<std::pair<int, int>, long long> count;  // (#A - #B, loops) -> states
  for (std::uint32_t s = 0; s < (1U << n); ++s) {
    UnionFind uf(n_edges);
    int loops = n_edges;
    for (int x = 0; x < n; ++x) {
      const auto& e = xs[x];
      // The A-smoothing is the 0-smoothing.
      if (s >> x & 1U) {
        loops -= uf.unite(e[0], e[3]);
        loops -= uf.unite(e[1], e[2]);
      } else {
        loops -= uf.unite(e[0], e[1]);
        loops -= uf.unite(e[2], e[3]);
      }
    }
    const int b = std::popcount(s);
    ++count[{n - 2 * b, loops + d.circles()}];
  }
  Laurent bracket;
  for (const auto& [key, c] : count) {
    while (static_cast<int>(delta_pow.size()) <= key.second) delta_pow.push_back(delta_pow.back() * delta);
    bracket += Laurent::monomial(key.first, c) * delta_pow[key.second];
  }
  // Writhe normalization (-A^3)^-w.
  const int w = stats(d).writhe;
  bracket *= Laurent::monomial(-3 * w, w % 2 == 0 ? 1 : -1);

  // A^2 = -1/q.
  Laurent out;
  for (const auto& [e, c] : bracket.terms()) {
    if (e % 2 != 0) throw InvariantError("odd power of A in the normalized bracket");
    const int m = e / 2;
    out.add_term(-m, m % 2 == 0 ? c : -c);
  }
  return out;
}

bool plus_adequate(const Diagram& d) {
  int n_edges = 0;
  const auto xs = dense_edges(d, n_edges);
  UnionFind uf(n_edges);
  for (const auto& e : xs) {
    uf.unite(e[0], e[3]);
    uf.unite(e[1], e[2]);
  }
  for (const auto& e : xs) {
    if (uf.find(e[0]) == uf.find(e[1])) return false;
  }
  return true;
}

bool is_reduced(const Diagram& d) {
  const int n = d.num_crossings();
  // Corner 4x + i sits between slots i and i+1 of crossing x.
  UnionFind uf(4 * n);
  std::unordered_map<int, std::vector<std::pair<int, int>>> ends;
  for (int x = 0; x < n; ++x) {
    for (int i = 0; i < 4; ++i) ends[d.crossings()[x].edges[i]].push_back({x, i});
  }
  auto corner = [](int x, int i) { return 4 * x + ((i % 4) + 4) % 4; };
  for (const auto& [label, pts] : ends) {
    if (pts.size() != 2) throw InvariantError("edge label without two ends");
    const auto [x, i] = pts[0];
    const auto [y, j] = pts[1];
    uf.unite(corner(x, i), corner(y, j - 1));
    uf.unite(corner(x, i - 1), corner(y, j));
  }
  for (int x = 0; x < n; ++x) {
    if (uf.find(corner(x, 0)) == uf.find(corner(x, 2)) || uf.find(corner(x, 1)) == uf.find(corner(x, 3))) {
      return false;
    }
  }
  return true;
}

}  // namespace khbound
