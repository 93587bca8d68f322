#include <doctest.h>

#include <random>

#include "khbound/errors.hpp"
#include "khbound/kh_table.hpp"
#include "support.hpp"

using namespace khbound;

namespace {

// Rational Khovanov tables from KnotInfo, in KnotInfo's chirality.
const BettiMap kTrefoil{{{0, 1}, 1}, {{0, 3}, 1}, {{2, 5}, 1}, {{3, 9}, 1}};
const BettiMap kFigureEight{{{-2, -5}, 1}, {{-1, -1}, 1}, {{0, -1}, 1}, {{0, 1}, 1}, {{1, 1}, 1}, {{2, 5}, 1}};
const BettiMap k8_21{{{0, 1}, 2},  {{0, 3}, 1},  {{1, 3}, 1},  {{1, 5}, 1},  {{2, 5}, 2},
                     {{2, 7}, 1},  {{3, 7}, 1},  {{3, 9}, 2},  {{4, 9}, 1},  {{4, 11}, 1},
                     {{5, 11}, 1}, {{5, 13}, 1}, {{6, 15}, 1}};
const BettiMap k9_45{{{-7, -17}, 1}, {{-6, -15}, 1}, {{-6, -13}, 1}, {{-5, -13}, 2}, {{-5, -11}, 1},
                     {{-4, -11}, 2}, {{-4, -9}, 2},  {{-3, -9}, 2},  {{-3, -7}, 2},  {{-2, -7}, 2},
                     {{-2, -5}, 2},  {{-1, -5}, 1},  {{-1, -3}, 2},  {{0, -3}, 1},   {{0, -1}, 2}};
const BettiMap k9_46{{{-6, -13}, 1}, {{-5, -9}, 1}, {{-4, -9}, 1}, {{-3, -7}, 1}, {{-3, -5}, 1},
                     {{-2, -3}, 1},  {{-1, -3}, 1}, {{0, -1}, 1},  {{0, 1}, 2}};

BettiMap tensor(const BettiMap& a, const BettiMap& b) {
  BettiMap out;
  for (const auto& [ka, ra] : a) {
    for (const auto& [kb, rb] : b) out[{ka.first + kb.first, ka.second + kb.second}] += ra * rb;
  }
  return out;
}

}  // namespace

TEST_CASE("tables of small knots") {
  CHECK(kh_table(khtest::fixture("3_1")).betti == kTrefoil);
  CHECK(kh_table(khtest::fixture("m3_1")).betti == dual_betti(kTrefoil));
  CHECK(kh_table(khtest::fixture("4_1")).betti == kFigureEight);
  CHECK(kh_table(khtest::fixture("unknot")).betti == BettiMap{{{0, -1}, 1}, {{0, 1}, 1}});
  CHECK(graded_euler(kTrefoil) == Laurent::monomial(1) + Laurent::monomial(3) + Laurent::monomial(5) -
                                      Laurent::monomial(9));
  CHECK(jones_via_kauffman(khtest::fixture("3_1")) == graded_euler(kTrefoil));
}

TEST_CASE("tables of the nine-crossing fixtures") {
  // The bundled diagrams are the mirrors of KnotInfo's.
  CHECK(kh_table(khtest::fixture("m8_21")).betti == k8_21);
  CHECK(kh_table(khtest::fixture("8_21")).betti == dual_betti(k8_21));
  CHECK(kh_table(khtest::fixture("m9_45")).betti == k9_45);
  CHECK(kh_table(khtest::fixture("m9_46")).betti == k9_46);
  CHECK(i_max(kh_table(khtest::fixture("8_21"))) == 0);
  CHECK(i_max(kh_table(khtest::fixture("m9_45"))) == 0);
  CHECK(i_max(kh_table(khtest::fixture("m9_46"))) == 0);
}

TEST_CASE("bundled i_max values") {
  for (const auto& e : khtest::bundled()) {
    auto it = e.properties.find("i_max");
    if (it == e.properties.end()) continue;
    INFO(e.name);
    CHECK(i_max(kh_table(e.diagram())) == it->second);
  }
}

TEST_CASE("homology lives between -c_minus and c_plus") {
  std::mt19937 rng(61);
  for (int k = 0; k < 60; ++k) {
    const Diagram d = khtest::random_braid(rng, 4, 9);
    const KhTable t = kh_table(d);
    const DiagramStats s = stats(d);
    CHECK(i_max(t) <= s.c_plus);
    CHECK(i_min(t) >= -s.c_minus);
    CHECK(graded_euler(t.betti) == jones_via_kauffman(d));
    if (plus_adequate(d)) CHECK(i_max(t) == s.c_plus);
    if (plus_adequate(mirror(d))) CHECK(i_min(t) == -s.c_minus);
    if (d.num_components() == 1) {
      // A knot always has rank two in degree zero, here at least one class.
      long long zero = 0;
      for (const auto& [ij, r] : t.betti) {
        if (ij.first == 0) zero += r;
      }
      CHECK(zero >= 1);
    }
  }
}

TEST_CASE("mirror duality and orientation reversal") {
  std::mt19937 rng(62);
  for (int k = 0; k < 40; ++k) {
    const Diagram d = khtest::random_braid(rng, 4, 8);
    const BettiMap b = kh_table(d).betti;
    CHECK(kh_table(mirror(d)).betti == dual_betti(b));
    for (int c = 0; c < d.num_components(); ++c) {
      int lk = 0;
      for (int o = 0; o < d.num_components(); ++o) {
        if (o != c) lk += linking_number(d, c, o);
      }
      CHECK(kh_table(reverse_component(d, c)).betti == shift_betti(b, -2 * lk, -6 * lk));
    }
  }
}

TEST_CASE("disjoint unions and connected sums") {
  std::mt19937 rng(63);
  const Laurent unknot = Laurent::monomial(1) + Laurent::monomial(-1);
  for (int k = 0; k < 20; ++k) {
    const Diagram a = khtest::random_knot(rng, 3, 5);
    const Diagram b = khtest::random_knot(rng, 3, 5);
    const BettiMap ka = kh_table(a).betti;
    const BettiMap kb = kh_table(b).betti;
    CHECK(kh_table(disjoint_union(a, b)).betti == tensor(ka, kb));
    CHECK(graded_euler(kh_table(connected_sum(a, b)).betti) * unknot == graded_euler(ka) * graded_euler(kb));
  }
}

TEST_CASE("plus adequacy and reducedness") {
  const Diagram kink = parse_pd("X[1,1,2,2]");
  CHECK_FALSE(plus_adequate(kink));
  CHECK_FALSE(is_reduced(kink));
  CHECK(plus_adequate(torus_diagram(2, 3)));
  // i_max(T(4,4)) = 8 < 12 = c_plus, so its standard diagram cannot be.
  CHECK_FALSE(plus_adequate(torus_diagram(4, 4)));
  // For negative crossings the all-1 state is the Seifert state.
  CHECK(plus_adequate(torus_diagram(2, -3)));
  CHECK(plus_adequate(parse_pd("U1")));
  CHECK(is_reduced(torus_diagram(2, 3)));
  CHECK(is_reduced(khtest::fixture("4_1")));
  CHECK(is_reduced(khtest::fixture("9_45")));
  CHECK_FALSE(is_reduced(connected_sum(torus_diagram(2, 3), kink)));
  CHECK_FALSE(is_reduced(braid_closure(2, {{0, 1}})));
}

TEST_CASE("JSON round trip and backend selection") {
  const KhTable t = kh_table(khtest::fixture("4_1"));
  CHECK(t.backend == Backend::kNaive);
  CHECK(KhTable::from_json(t.to_json()) == t);
  CHECK(KhTable::from_json(nlohmann::json::parse(t.to_json().dump())).hash() == t.hash());
  CHECK(t.diagram_hash == khtest::fixture("4_1").hash());
  CHECK(kh_table(khtest::fixture("9_45")).backend == Backend::kNaive);
  CHECK(kh_table(torus_diagram(2, 11)).backend == Backend::kScan);
  CHECK_THROWS_AS(KhTable::from_json(nlohmann::json::object()), InputError);
  CHECK_THROWS_AS(parse_backend("fast"), InputError);
  CHECK(parse_backend("scan") == Backend::kScan);
  KhOptions too_big = khtest::naive();
  CHECK_THROWS_AS(kh_table(torus_diagram(2, 15), too_big), ResourceError);
  CHECK_THROWS_AS(extreme_degrees(KhTable{}), InvariantError);
}
