#include "khbound/scanner.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <numeric>
#include <string>
#include <tuple>

#include "khbound/errors.hpp"

namespace khbound {

namespace {

constexpr std::array<int, 4> kSmoothing0{1, 0, 3, 2};  // edges[0]-edges[1], edges[2]-edges[3]
constexpr std::array<int, 4> kSmoothing1{3, 2, 1, 0};  // edges[0]-edges[3], edges[1]-edges[2]

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
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

// Smallest point on the cycle of a ∪ b through each point.
std::vector<int> cycle_min(const Matching& a, const Matching& b) {
  const int m = static_cast<int>(a.size());
  std::vector<int> out(m, -1);
  for (int p = 0; p < m; ++p) {
    if (out[p] >= 0) continue;
    int cur = p;
    do {
      out[cur] = p;
      int next = a[cur];
      out[next] = p;
      cur = b[next];
    } while (cur != p);
  }
  return out;
}

std::string matching_key(const Matching& m) { return std::string(m.begin(), m.end()); }

Morphism to_morphism(const std::map<std::uint64_t, Rational>& acc) {
  Morphism out;
  out.reserve(acc.size());
  for (const auto& [dots, coef] : acc) {
    if (!coef.is_zero()) out.push_back({dots, coef});
  }
  return out;
}

std::uint64_t bit(int i) { return std::uint64_t{1} << i; }

// Result of closing an old matching with one smoothing of the new crossing.
struct Traced {
  Matching matching;
  std::vector<int> loop_rep;  // one universe point per closed loop
};

}  // namespace

LocalComplex::LocalComplex(int circles) {
  intern(Matching{});
  add_object(LocalObject{0, circles, 0, 0});
}

std::uint32_t LocalComplex::intern(const Matching& m) {
  auto [it, inserted] = matching_ids_.try_emplace(matching_key(m), static_cast<std::uint32_t>(matchings_.size()));
  if (inserted) matchings_.push_back(m);
  return it->second;
}

std::size_t LocalComplex::add_object(const LocalObject& o) {
  objects_.push_back(o);
  alive_.push_back(true);
  out_.emplace_back();
  in_.emplace_back();
  ++live_;
  return objects_.size() - 1;
}

void LocalComplex::add_morphism(std::size_t src, std::size_t tgt, const Morphism& m) {
  if (m.empty()) return;
  auto& row = out_[src];
  auto it = row.find(static_cast<std::uint32_t>(tgt));
  if (it == row.end()) {
    row.emplace(static_cast<std::uint32_t>(tgt), m);
    in_[tgt].insert(static_cast<std::uint32_t>(src));
    return;
  }
  // Merge two sorted term lists.
  Morphism merged;
  merged.reserve(it->second.size() + m.size());
  std::size_t i = 0;
  std::size_t j = 0;
  const Morphism& cur = it->second;
  while (i < cur.size() || j < m.size()) {
    if (j == m.size() || (i < cur.size() && cur[i].dots < m[j].dots)) {
      merged.push_back(cur[i++]);
    } else if (i == cur.size() || m[j].dots < cur[i].dots) {
      merged.push_back(m[j++]);
    } else {
      Rational c = cur[i].coef + m[j].coef;
      if (!c.is_zero()) merged.push_back({cur[i].dots, std::move(c)});
      ++i;
      ++j;
    }
  }
  if (merged.empty()) {
    row.erase(it);
    in_[tgt].erase(static_cast<std::uint32_t>(src));
  } else {
    it->second = std::move(merged);
  }
}

const Morphism* LocalComplex::morphism(std::size_t src, std::size_t tgt) const {
  auto it = out_[src].find(static_cast<std::uint32_t>(tgt));
  return it == out_[src].end() ? nullptr : &it->second;
}

std::size_t LocalComplex::live_entries() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    if (alive_[i]) n += out_[i].size();
  }
  return n;
}

bool LocalComplex::has_loops() const {
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    if (alive_[i] && objects_[i].loops > 0) return true;
  }
  return false;
}

void LocalComplex::remove_object(std::size_t i) {
  for (const auto& [t, m] : out_[i]) in_[t].erase(static_cast<std::uint32_t>(i));
  for (std::uint32_t s : in_[i]) out_[s].erase(static_cast<std::uint32_t>(i));
  out_[i].clear();
  in_[i].clear();
  alive_[i] = false;
  --live_;
}

void LocalComplex::compact() {
  if (live_ == objects_.size()) return;
  std::vector<std::uint32_t> renum(objects_.size(), std::numeric_limits<std::uint32_t>::max());
  std::vector<LocalObject> objects;
  objects.reserve(live_);
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    if (!alive_[i]) continue;
    renum[i] = static_cast<std::uint32_t>(objects.size());
    objects.push_back(objects_[i]);
  }
  std::vector<std::unordered_map<std::uint32_t, Morphism>> out(objects.size());
  std::vector<std::unordered_set<std::uint32_t>> in(objects.size());
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    if (!alive_[i]) continue;
    for (auto& [t, m] : out_[i]) {
      out[renum[i]].emplace(renum[t], std::move(m));
      in[renum[t]].insert(renum[i]);
    }
  }
  objects_ = std::move(objects);
  alive_.assign(objects_.size(), true);
  out_ = std::move(out);
  in_ = std::move(in);
}

void LocalComplex::apply_plan(const GluePlan& plan, std::uint64_t m1, std::uint64_t m2, const Rational& coef,
                              std::map<std::uint64_t, Rational>& acc) {
  // A connected surface of genus g with d dots and boundary circles C equals
  // 2^g times the genus-0 surface with d + g dots; with two or more dots it
  // vanishes, with one it is the union of dotted disks on C, and with none
  // it is the sum over c in C of disks dotted everywhere except on c.
  std::uint64_t fixed = 0;
  int twos = 0;
  std::array<std::uint64_t, 64> choice_sets{};
  int n_choices = 0;
  for (const auto& comp : plan) {
    const int e = std::popcount(m1 & comp.in1) + std::popcount(m2 & comp.in2) + comp.genus;
    if (e >= 2) return;
    twos += comp.genus;
    if (e == 1) {
      fixed |= comp.out;
    } else {
      if (comp.out == 0) return;  // undotted sphere
      choice_sets[n_choices++] = comp.out;
    }
  }
  Rational c = coef;
  if (twos > 0) c *= Rational(1LL << twos);

  // Enumerate the product of choices.
  std::array<std::uint64_t, 64> picked{};
  for (int k = 0; k < n_choices; ++k) picked[k] = choice_sets[k] & (~choice_sets[k] + 1);  // lowest bit
  while (true) {
    std::uint64_t dots = fixed;
    for (int k = 0; k < n_choices; ++k) dots |= choice_sets[k] & ~picked[k];
    auto [it, inserted] = acc.try_emplace(dots, c);
    if (!inserted) it->second += c;
    int k = 0;
    for (; k < n_choices; ++k) {
      std::uint64_t rest = choice_sets[k] & ~((picked[k] << 1) - 1);
      if (rest != 0) {
        picked[k] = rest & (~rest + 1);
        break;
      }
      picked[k] = choice_sets[k] & (~choice_sets[k] + 1);
    }
    if (k == n_choices) break;
  }
}

const LocalComplex::GluePlan& LocalComplex::composition_plan(std::uint32_t c, std::uint32_t a, std::uint32_t d) {
  const std::uint64_t key = (static_cast<std::uint64_t>(c) << 42) | (static_cast<std::uint64_t>(a) << 21) | d;
  auto it = composition_plans_.find(key);
  if (it != composition_plans_.end()) return it->second;

  const Matching& mc = matchings_[c];
  const Matching& ma = matchings_[a];
  const Matching& md = matchings_[d];
  const int m = static_cast<int>(ma.size());
  const auto ca = cycle_min(mc, ma);
  const auto ad = cycle_min(ma, md);
  const auto cd = cycle_min(mc, md);
  UnionFind uf(m);
  for (int p = 0; p < m; ++p) {
    uf.unite(p, mc[p]);
    uf.unite(p, ma[p]);
    uf.unite(p, md[p]);
  }
  std::map<int, GlueComponent> comps;
  std::map<int, int> chi;
  for (int p = 0; p < m; ++p) {
    const int r = uf.find(p);
    auto& comp = comps[r];
    if (ca[p] == p) {
      comp.in1 |= bit(p);
      ++chi[r];
    }
    if (ad[p] == p) {
      comp.in2 |= bit(p);
      ++chi[r];
    }
    if (cd[p] == p) comp.out |= bit(p);
    if (p < ma[p]) --chi[r];  // one glued arc of a
  }
  GluePlan plan;
  for (auto& [r, comp] : comps) {
    const int k = std::popcount(comp.out);
    const int twice_genus = 2 - k - chi[r];
    if (twice_genus < 0 || twice_genus % 2 != 0) throw InvariantError("composition produced an impossible surface");
    comp.genus = twice_genus / 2;
    plan.push_back(comp);
  }
  return composition_plans_.emplace(key, std::move(plan)).first->second;
}

Morphism LocalComplex::compose(std::uint32_t c, std::uint32_t a, std::uint32_t d, const Morphism& f,
                               const Morphism& g) {
  const GluePlan& plan = composition_plan(c, a, d);
  std::map<std::uint64_t, Rational> acc;
  for (const auto& t1 : f) {
    for (const auto& t2 : g) apply_plan(plan, t1.dots, t2.dots, t1.coef * t2.coef, acc);
  }
  return to_morphism(acc);
}

bool LocalComplex::is_isomorphism(std::size_t src, std::size_t tgt) const {
  const LocalObject& s = objects_[src];
  const LocalObject& t = objects_[tgt];
  if (s.matching != t.matching || s.q != t.q || s.loops != 0 || t.loops != 0) return false;
  const Morphism* m = morphism(src, tgt);
  return m != nullptr && m->size() == 1 && m->front().dots == 0;
}

void LocalComplex::gauss_cancel(std::size_t src, std::size_t tgt) {
  if (src >= objects_.size() || tgt >= objects_.size() || !alive_[src] || !alive_[tgt] ||
      !is_isomorphism(src, tgt)) {
    throw InputError("gauss_cancel: entry is not an isomorphism");
  }
  const Rational scale = -morphism(src, tgt)->front().coef.inverse();
  const std::uint32_t a = objects_[tgt].matching;

  std::vector<std::uint32_t> sources;
  for (std::uint32_t c : in_[tgt]) {
    if (c != src) sources.push_back(c);
  }
  std::sort(sources.begin(), sources.end());
  std::vector<std::pair<std::uint32_t, Morphism>> targets;
  for (const auto& [d, g] : out_[src]) {
    if (d != tgt) targets.emplace_back(d, g);
  }
  std::sort(targets.begin(), targets.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

  for (std::uint32_t c : sources) {
    const Morphism delta = out_[c].at(static_cast<std::uint32_t>(tgt));
    for (const auto& [d, gamma] : targets) {
      Morphism corr = compose(objects_[c].matching, a, objects_[d].matching, delta, gamma);
      for (auto& t : corr) t.coef *= scale;
      add_morphism(c, d, corr);
    }
  }
  remove_object(src);
  remove_object(tgt);
}

std::size_t LocalComplex::cancel_all() {
  // Pivots are taken unit coefficients first, then by the number of
  // zig-zag corrections they cause, then by lowest index. Costs go stale as
  // the complex changes, so each pass only takes candidates whose cost has
  // not grown and the rest wait for the next pass.
  struct Candidate {
    bool non_unit;
    std::size_t cost;
    std::uint32_t src;
    std::uint32_t tgt;
    auto key() const { return std::tie(non_unit, cost, src, tgt); }
  };
  auto cost_of = [&](std::size_t s, std::size_t t) { return (in_[t].size() - 1) * (out_[s].size() - 1); };
  std::size_t cancelled = 0;
  std::vector<Candidate> candidates;
  while (true) {
    candidates.clear();
    for (std::size_t s = 0; s < objects_.size(); ++s) {
      if (!alive_[s] || objects_[s].loops != 0) continue;
      for (const auto& [t, m] : out_[s]) {
        if (!is_isomorphism(s, t)) continue;
        candidates.push_back(
            {!m.front().coef.is_unit(), cost_of(s, t), static_cast<std::uint32_t>(s), t});
      }
    }
    if (candidates.empty()) break;
    std::sort(candidates.begin(), candidates.end(), [](const auto& x, const auto& y) { return x.key() < y.key(); });
    bool first = true;
    bool deferred_unit = false;
    for (const auto& c : candidates) {
      if (c.non_unit && deferred_unit) break;
      if (!alive_[c.src] || !alive_[c.tgt] || !is_isomorphism(c.src, c.tgt)) continue;
      if (!first && cost_of(c.src, c.tgt) > c.cost) {
        deferred_unit = deferred_unit || !c.non_unit;
        continue;
      }
      gauss_cancel(c.src, c.tgt);
      ++cancelled;
      first = false;
    }
  }
  return cancelled;
}

void LocalComplex::deloop() {
  if (!has_loops()) return;
  std::vector<LocalObject> objects;
  std::vector<std::size_t> base(objects_.size(), 0);
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    if (!alive_[i]) continue;
    const LocalObject& o = objects_[i];
    if (o.loops > 20) throw ResourceError("too many closed loops to deloop");
    base[i] = objects.size();
    for (std::uint32_t lambda = 0; lambda < (1U << o.loops); ++lambda) {
      // lambda bit set: the loop carries v-, quantum shift -1; clear: v+, +1.
      objects.push_back(LocalObject{o.matching, 0, o.h, o.q + o.loops - 2 * std::popcount(lambda)});
    }
  }
  std::vector<std::unordered_map<std::uint32_t, Morphism>> out(objects.size());
  std::vector<std::unordered_set<std::uint32_t>> in(objects.size());
  for (std::size_t s = 0; s < objects_.size(); ++s) {
    if (!alive_[s]) continue;
    const int m = static_cast<int>(matchings_[objects_[s].matching].size());
    const int ls = objects_[s].loops;
    for (const auto& [t, f] : out_[s]) {
      const int lt = objects_[t].loops;
      // Capping a target loop keeps the terms whose disk there is undotted
      // (v+) or dotted (v-); a source loop is filled by a plain cup (v+) or
      // a dotted cup (v-), which pairs with the opposite dot on the disk.
      std::map<std::pair<std::uint32_t, std::uint32_t>, std::map<std::uint64_t, Rational>> split;
      for (const auto& term : f) {
        const std::uint64_t sbits = (term.dots >> m) & ((std::uint64_t{1} << ls) - 1);
        const std::uint64_t tbits = (term.dots >> (m + ls)) & ((std::uint64_t{1} << lt) - 1);
        const auto ls_mask = static_cast<std::uint32_t>((1U << ls) - 1);
        const std::uint32_t lambda_s = ~static_cast<std::uint32_t>(sbits) & ls_mask;
        const auto lambda_t = static_cast<std::uint32_t>(tbits);
        const std::uint64_t dots = m == 64 ? term.dots : term.dots & ((std::uint64_t{1} << m) - 1);
        split[{lambda_s, lambda_t}].emplace(dots, term.coef);
      }
      for (auto& [lambdas, acc] : split) {
        const auto ns = static_cast<std::uint32_t>(base[s] + lambdas.first);
        const auto nt = static_cast<std::uint32_t>(base[t] + lambdas.second);
        out[ns].emplace(nt, to_morphism(acc));
        in[nt].insert(ns);
      }
    }
  }
  objects_ = std::move(objects);
  alive_.assign(objects_.size(), true);
  live_ = objects_.size();
  out_ = std::move(out);
  in_ = std::move(in);
}

void LocalComplex::add_crossing(const Crossing& x) {
  const int m = static_cast<int>(boundary_.size());
  const int u_size = m + 4;
  std::vector<int> label(u_size);
  for (int p = 0; p < m; ++p) label[p] = boundary_[p];
  for (int s = 0; s < 4; ++s) label[m + s] = x.edges[s];

  std::vector<int> glue(u_size, -1);
  {
    std::unordered_map<int, int> first;
    for (int u = 0; u < u_size; ++u) {
      auto [it, inserted] = first.try_emplace(label[u], u);
      if (!inserted) {
        glue[u] = it->second;
        glue[it->second] = u;
      }
    }
  }
  std::vector<int> new_index(u_size, -1);
  std::vector<int> new_point;  // universe point of each new boundary index
  std::vector<int> new_boundary;
  for (int u = 0; u < u_size; ++u) {
    if (glue[u] >= 0) continue;
    new_index[u] = static_cast<int>(new_point.size());
    new_point.push_back(u);
    new_boundary.push_back(label[u]);
  }
  const int m2 = static_cast<int>(new_point.size());
  if (m2 > 60) throw ResourceError("tangle boundary exceeds 60 points");

  auto trace = [&](const Matching& a, const std::array<int, 4>& smoothing) {
    auto partner = [&](int u) { return u < m ? static_cast<int>(a[u]) : m + smoothing[u - m]; };
    Traced tr;
    tr.matching.assign(m2, 0);
    std::vector<bool> seen(u_size, false);
    for (int i = 0; i < m2; ++i) {
      const int start = new_point[i];
      if (seen[start]) continue;
      int cur = start;
      while (true) {
        seen[cur] = true;
        const int w = partner(cur);
        seen[w] = true;
        if (glue[w] < 0) {
          tr.matching[i] = static_cast<std::uint8_t>(new_index[w]);
          tr.matching[new_index[w]] = static_cast<std::uint8_t>(i);
          break;
        }
        cur = glue[w];
      }
    }
    for (int u = 0; u < u_size; ++u) {
      if (seen[u]) continue;
      tr.loop_rep.push_back(u);
      int cur = u;
      do {
        seen[cur] = true;
        const int w = partner(cur);
        seen[w] = true;
        cur = glue[w];
      } while (cur != u);
    }
    return tr;
  };

  // Old matching id -> traced result for each smoothing.
  std::unordered_map<std::uint32_t, std::array<Traced, 2>> traced;
  auto traced_of = [&](std::uint32_t id) -> const std::array<Traced, 2>& {
    auto it = traced.find(id);
    if (it == traced.end()) {
      it = traced.emplace(id, std::array<Traced, 2>{trace(matchings_[id], kSmoothing0),
                                                      trace(matchings_[id], kSmoothing1)})
               .first;
    }
    return it->second;
  };

  // kind 0, 1: identity on that smoothing; kind 2: the saddle 0 -> 1.
  std::unordered_map<std::uint64_t, GluePlan> plans;
  auto tensor_plan = [&](std::uint32_t a_id, std::uint32_t b_id, int kind) -> const GluePlan& {
    const std::uint64_t key = (static_cast<std::uint64_t>(a_id) << 34) | (static_cast<std::uint64_t>(b_id) << 2) |
                              static_cast<std::uint64_t>(kind);
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;
    const Matching& a = matchings_[a_id];
    const Matching& b = matchings_[b_id];
    const auto& src_smoothing = kind == 1 ? kSmoothing1 : kSmoothing0;
    const auto cyc_ab = cycle_min(a, b);
    auto piece = [&](int u) {
      if (u < m) return cyc_ab[u];
      if (kind == 2) return m;
      const int s = u - m;
      return m + std::min(s, src_smoothing[s]);
    };
    UnionFind uf(u_size);
    std::vector<int> chi(u_size, 0);
    for (int p = 0; p < m; ++p) {
      if (cyc_ab[p] == p) ++chi[p];
    }
    for (int s = 0; s < 4; ++s) {
      if (piece(m + s) == m + s) ++chi[m + s];
    }
    for (int u = 0; u < u_size; ++u) {
      if (glue[u] > u) uf.unite(piece(u), piece(glue[u]));
    }
    std::map<int, int> root_chi;
    for (int id = 0; id < u_size; ++id) {
      if (chi[id] != 0) root_chi[uf.find(id)] += chi[id];
    }
    for (int u = 0; u < u_size; ++u) {
      if (glue[u] > u) --root_chi[uf.find(piece(u))];
    }
    const Traced& src = traced_of(a_id)[kind == 1 ? 1 : 0];
    const Traced& tgt = traced_of(b_id)[kind == 0 ? 0 : 1];
    const int la = static_cast<int>(src.loop_rep.size());
    const int lb = static_cast<int>(tgt.loop_rep.size());
    if (m2 + la + lb > 64) throw ResourceError("too many circles in one cobordism");

    std::map<int, GlueComponent> comps;
    for (int p = 0; p < m; ++p) {
      if (cyc_ab[p] == p) comps[uf.find(piece(p))].in1 |= bit(p);
    }
    const auto cyc_new = cycle_min(src.matching, tgt.matching);
    for (int i = 0; i < m2; ++i) {
      if (cyc_new[i] == i) comps[uf.find(piece(new_point[i]))].out |= bit(i);
    }
    for (int l = 0; l < la; ++l) comps[uf.find(piece(src.loop_rep[l]))].out |= bit(m2 + l);
    for (int l = 0; l < lb; ++l) comps[uf.find(piece(tgt.loop_rep[l]))].out |= bit(m2 + la + l);

    GluePlan plan;
    for (auto& [r, comp] : comps) {
      const int twice_genus = 2 - std::popcount(comp.out) - root_chi[r];
      if (twice_genus < 0 || twice_genus % 2 != 0) throw InvariantError("tensor step produced an impossible surface");
      comp.genus = twice_genus / 2;
      plan.push_back(comp);
    }
    return plans.emplace(key, std::move(plan)).first->second;
  };

  const int hs0 = x.sign > 0 ? 0 : -1;
  const int qs0 = x.sign > 0 ? 1 : -2;

  LocalComplex next(0);
  next.boundary_ = new_boundary;
  next.matchings_.clear();
  next.matching_ids_.clear();
  next.objects_.clear();
  next.alive_.clear();
  next.out_.clear();
  next.in_.clear();
  next.live_ = 0;

  std::vector<std::array<std::size_t, 2>> new_id(objects_.size());
  for (std::size_t g = 0; g < objects_.size(); ++g) {
    if (!alive_[g]) continue;
    if (objects_[g].loops != 0) throw InvariantError("add_crossing needs a delooped complex");
    const auto& tr = traced_of(objects_[g].matching);
    for (int s = 0; s < 2; ++s) {
      LocalObject o;
      o.matching = next.intern(tr[s].matching);
      o.loops = static_cast<int>(tr[s].loop_rep.size());
      o.h = objects_[g].h + hs0 + s;
      o.q = objects_[g].q + qs0 + s;
      new_id[g][s] = next.add_object(o);
    }
  }

  auto convert = [&](const GluePlan& plan, const Morphism& f, const Rational& scale) {
    std::map<std::uint64_t, Rational> acc;
    for (const auto& t : f) apply_plan(plan, t.dots, 0, t.coef * scale, acc);
    return to_morphism(acc);
  };

  for (std::size_t g = 0; g < objects_.size(); ++g) {
    if (!alive_[g]) continue;
    for (const auto& [t, f] : out_[g]) {
      for (int s = 0; s < 2; ++s) {
        next.add_morphism(new_id[g][s], new_id[t][s],
                          convert(tensor_plan(objects_[g].matching, objects_[t].matching, s), f, Rational(1)));
      }
    }
    const Morphism identity{{0, Rational(1)}};
    const Rational sign = (objects_[g].h % 2 == 0) ? Rational(1) : Rational(-1);
    next.add_morphism(new_id[g][0], new_id[g][1],
                      convert(tensor_plan(objects_[g].matching, objects_[g].matching, 2), identity, sign));
  }
  *this = std::move(next);
}

std::map<std::vector<std::uint8_t>, Laurent> LocalComplex::graded_euler() const {
  std::map<std::vector<std::uint8_t>, Laurent> out;
  const Laurent loop = Laurent::monomial(1) + Laurent::monomial(-1);
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    if (!alive_[i]) continue;
    const LocalObject& o = objects_[i];
    Laurent term = Laurent::monomial(o.q, o.h % 2 == 0 ? 1 : -1) * loop.pow(static_cast<unsigned>(o.loops));
    out[matchings_[o.matching]] += term;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

std::map<std::pair<int, int>, long long> LocalComplex::generator_counts() const {
  std::map<std::pair<int, int>, long long> out;
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    if (alive_[i]) ++out[{objects_[i].h, objects_[i].q}];
  }
  return out;
}

std::vector<int> crossing_order(const Diagram& d) {
  const int n = d.num_crossings();
  if (n == 0) return {};
  const auto& xs = d.crossings();
  std::vector<int> best_order;
  std::pair<int, long long> best_cost{std::numeric_limits<int>::max(), 0};
  for (int start = 0; start < n; ++start) {
    std::unordered_map<int, int> count;
    std::vector<bool> used(n, false);
    std::vector<int> order;
    int open = 0;
    int peak = 0;
    long long total = 0;
    auto take = [&](int c) {
      used[c] = true;
      order.push_back(c);
      for (int e : xs[c].edges) {
        int& k = count[e];
        ++k;
        open += (k == 1) ? 1 : -1;
      }
      peak = std::max(peak, open);
      total += open;
    };
    take(start);
    while (static_cast<int>(order.size()) < n) {
      int pick = -1;
      int pick_open = 0;
      for (int c = 0; c < n; ++c) {
        if (used[c]) continue;
        std::unordered_map<int, int> local;
        for (int e : xs[c].edges) ++local[e];
        int delta = 0;
        for (const auto& [e, k] : local) {
          auto it = count.find(e);
          const int before = it == count.end() ? 0 : it->second;
          // Labels occur twice overall: open after iff before + k == 1.
          delta += ((before + k) == 1 ? 1 : 0) - (before == 1 ? 1 : 0);
        }
        const int after = open + delta;
        if (pick < 0 || after < pick_open) {
          pick = c;
          pick_open = after;
        }
      }
      take(pick);
    }
    std::pair<int, long long> cost{peak, total};
    if (cost < best_cost) {
      best_cost = cost;
      best_order = order;
    }
  }
  return best_order;
}

ScanResult scan(const Diagram& d, const ScanOptions& options) {
  ScanResult result;
  LocalComplex c(d.circles());
  c.deloop();
  auto check_ceiling = [&](int processed) {
    result.peak_generators = std::max(result.peak_generators, c.live_objects());
    if (c.live_objects() > options.ceiling) {
      throw ResourceError("scan exceeded the generator ceiling of " + std::to_string(options.ceiling) + " (" +
                          std::to_string(c.live_objects()) + " live generators after " + std::to_string(processed) +
                          " crossings)");
    }
  };
  check_ceiling(0);
  const auto order = crossing_order(d);
  int processed = 0;
  for (int idx : order) {
    c.add_crossing(d.crossings()[idx]);
    ++processed;
    check_ceiling(processed);
    c.deloop();
    check_ceiling(processed);
    c.cancel_all();
    c.compact();
    result.peak_boundary = std::max(result.peak_boundary, static_cast<int>(c.boundary().size()));
    if (options.progress) {
      options.progress(ScanProgress{processed, d.num_crossings(), c.live_objects(), c.boundary().size()});
    }
    if (options.inspect) options.inspect(c);
  }
  if (!c.boundary().empty()) throw InvariantError("scan finished with an open boundary");
  c.cancel_all();
  if (c.live_entries() != 0) throw InvariantError("closed complex kept a nonzero differential after cancellation");
  result.betti = c.generator_counts();
  return result;
}

}  // namespace khbound
