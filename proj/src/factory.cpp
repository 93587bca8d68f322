#include "khbound/factory.hpp"

#include <cstdlib>
#include <numeric>
#include <string>
#include <unordered_map>

#include "khbound/errors.hpp"

namespace khbound {

namespace {

// Emits a braid on strands whose current labels are `cur`, allocating new
// labels from `next`. On return `cur` holds the outgoing labels.
void emit_braid(std::vector<int>& cur, const std::vector<BraidLetter>& word, int& next,
                std::vector<Crossing>& out) {
  for (const auto& letter : word) {
    const int i = letter.position;
    const int x = cur[i];
    const int y = cur[i + 1];
    const int u = next++;  // leaves at position i
    const int v = next++;  // leaves at position i + 1
    if (letter.sign > 0) {
      // Over x -> v, under y -> u.
      out.push_back(Crossing{{y, v, u, x}, 1});
    } else {
      // Over y -> u, under x -> v.
      out.push_back(Crossing{{x, y, v, u}, -1});
    }
    cur[i] = u;
    cur[i + 1] = v;
  }
}

std::vector<BraidLetter> full_twists(int p, int n) {
  std::vector<BraidLetter> word;
  const int sign = n >= 0 ? 1 : -1;
  for (int k = 0; k < std::abs(n) * p; ++k) {
    for (int i = 0; i + 1 < p; ++i) word.push_back({i, sign});
  }
  return word;
}

void rename(std::vector<Crossing>& crossings, const std::unordered_map<int, int>& map) {
  for (auto& x : crossings) {
    for (int& e : x.edges) {
      auto it = map.find(e);
      if (it != map.end()) e = it->second;
    }
  }
}

}  // namespace

Diagram braid_closure(int strands, const std::vector<BraidLetter>& word) {
  if (strands < 1) throw InputError("braid needs at least one strand");
  for (const auto& l : word) {
    if (l.position < 0 || l.position + 1 >= strands) throw InputError("braid letter out of range");
  }
  std::vector<int> start(strands);
  std::iota(start.begin(), start.end(), 1);
  std::vector<int> cur = start;
  int next = strands + 1;
  std::vector<Crossing> crossings;
  emit_braid(cur, word, next, crossings);
  std::unordered_map<int, int> close;
  int circles = 0;
  for (int j = 0; j < strands; ++j) {
    if (cur[j] == start[j]) {
      ++circles;
    } else {
      close[cur[j]] = start[j];
    }
  }
  rename(crossings, close);
  return Diagram(std::move(crossings), circles).canonical();
}

Diagram torus_diagram(int p, int q) {
  if (p < 1) throw InputError("torus_diagram needs p >= 1");
  std::vector<BraidLetter> word;
  const int sign = q >= 0 ? 1 : -1;
  for (int k = 0; k < std::abs(q); ++k) {
    for (int i = 0; i + 1 < p; ++i) word.push_back({i, sign});
  }
  return braid_closure(p, word).with_name("T(" + std::to_string(p) + "," + std::to_string(q) + ")");
}

Diagram cable_diagram(const Diagram& d, CableSpec spec) {
  const int p = spec.p;
  if (p < 1) throw InputError("cable needs p >= 1");
  if (d.num_components() != 1) throw InputError("cable_diagram needs a knot diagram (exactly one component)");
  const DiagramStats s = stats(d);
  const int twists = spec.t - s.writhe;
  const std::string name =
      (d.name().empty() ? std::string("K") : d.name()) + "(" + std::to_string(p) + "," + std::to_string(p * spec.t) + ")";

  if (d.num_crossings() == 0) return braid_closure(p, full_twists(p, twists)).with_name(name);

  // Copy j of edge e is the j-th parallel strand counted from the left of e.
  const int max_label = d.max_label();
  auto copy_label = [&](int e, int j) { return e * p + j; };
  int next = (max_label + 1) * p + 1;

  std::vector<Crossing> out;
  // Incoming ends of the twisted edge are renamed to the braid's outputs.
  std::unordered_map<int, int> twisted_head;
  if (twists != 0) {
    std::vector<int> cur(p);
    for (int j = 0; j < p; ++j) cur[j] = copy_label(max_label, j);
    emit_braid(cur, full_twists(p, twists), next, out);
    for (int j = 0; j < p; ++j) twisted_head[copy_label(max_label, j)] = cur[j];
  }
  auto incoming = [&](int e, int j) {
    int l = copy_label(e, j);
    auto it = twisted_head.find(l);
    return it == twisted_head.end() ? l : it->second;
  };

  for (const auto& x : d.crossings()) {
    const auto& e = x.edges;
    // Columns are under-strand copies west to east; rows are south to north.
    // Row r carries over-strand copy k(r), counted from the over-strand's left.
    auto copy_in_row = [&](int r) { return x.sign > 0 ? p - 1 - r : r; };
    std::vector<std::vector<int>> vertical(p, std::vector<int>(p + 1));
    std::vector<std::vector<int>> horizontal(p, std::vector<int>(p + 1));
    for (int j = 0; j < p; ++j) {
      vertical[j][0] = incoming(e[kUnderIn], j);
      vertical[j][p] = copy_label(e[kUnderOut], j);
      for (int r = 1; r < p; ++r) vertical[j][r] = next++;
    }
    const int west = e[3];
    const int east = e[1];
    for (int r = 0; r < p; ++r) {
      const int k = copy_in_row(r);
      horizontal[r][0] = x.sign > 0 ? incoming(west, k) : copy_label(west, k);
      horizontal[r][p] = x.sign > 0 ? copy_label(east, k) : incoming(east, k);
      for (int c = 1; c < p; ++c) horizontal[r][c] = next++;
    }
    for (int j = 0; j < p; ++j) {
      for (int r = 0; r < p; ++r) {
        out.push_back(Crossing{{vertical[j][r], horizontal[r][j + 1], vertical[j][r + 1], horizontal[r][j]}, x.sign});
      }
    }
  }
  return Diagram(std::move(out), 0).canonical().with_name(name);
}

Diagram disjoint_union(const Diagram& d1, const Diagram& d2) {
  const int shift = d1.max_label();
  std::vector<Crossing> out = d1.crossings();
  for (Crossing x : d2.crossings()) {
    for (int& e : x.edges) e += shift;
    out.push_back(x);
  }
  std::string name;
  if (!d1.name().empty() || !d2.name().empty()) name = d1.name() + " u " + d2.name();
  return Diagram(std::move(out), d1.circles() + d2.circles(), std::move(name));
}

Diagram connected_sum(const Diagram& d1, const Diagram& d2, int e1, int e2) {
  if (d1.num_components() != 1 || d2.num_components() != 1) {
    throw InputError("connected_sum is only defined here for knot diagrams");
  }
  std::string name;
  if (!d1.name().empty() || !d2.name().empty()) name = d1.name() + " # " + d2.name();
  if (d1.num_crossings() == 0) return d2.with_name(name);
  if (d2.num_crossings() == 0) return d1.with_name(name);
  if (e1 == 0) e1 = d1.max_label();
  if (e2 == 0) e2 = d2.max_label();
  const int shift = d1.max_label();
  e2 += shift;

  std::vector<Crossing> out = d1.crossings();
  const auto [h1x, h1s] = d1.head(e1);
  const auto [h2x, h2s] = d2.head(e2 - shift);
  for (Crossing x : d2.crossings()) {
    for (int& e : x.edges) e += shift;
    out.push_back(x);
  }
  // e1 now runs into d2's crossing, e2 into d1's.
  const int offset = d1.num_crossings();
  out[h1x].edges[h1s] = e2;
  out[offset + h2x].edges[h2s] = e1;
  return Diagram(std::move(out), 0, std::move(name));
}

}  // namespace khbound
