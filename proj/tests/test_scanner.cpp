#include <doctest.h>

#include <random>

#include "khbound/errors.hpp"
#include "khbound/kh_table.hpp"
#include "khbound/scanner.hpp"
#include "support.hpp"

using namespace khbound;

namespace {

Morphism identity(long long c = 1) { return {CobordismTerm{0, Rational(c)}}; }

BettiMap counts(const LocalComplex& c) { return c.generator_counts(); }

}  // namespace

TEST_CASE("delooping a closed loop") {
  LocalComplex c(1);
  CHECK(c.has_loops());
  c.deloop();
  CHECK_FALSE(c.has_loops());
  CHECK(counts(c) == BettiMap{{{0, -1}, 1}, {{0, 1}, 1}});

  LocalComplex two(2);
  const auto before = two.graded_euler();
  two.deloop();
  CHECK(two.live_objects() == 4);
  CHECK(two.graded_euler() == before);
  CHECK(counts(two) == BettiMap{{{0, -2}, 1}, {{0, 0}, 2}, {{0, 2}, 1}});
}

TEST_CASE("Gaussian elimination") {
  SUBCASE("an isomorphism pair cancels to nothing") {
    LocalComplex c(0);
    const auto empty = c.object(0).matching;
    const auto b = c.add_object({empty, 0, 1, 0});
    c.add_morphism(0, b, identity(3));
    CHECK(c.is_isomorphism(0, b));
    c.gauss_cancel(0, b);
    CHECK(c.live_objects() == 0);
  }
  SUBCASE("zig-zag correction") {
    // 0 -> 1, 2 -> 1, 0 -> 3 and 2 -> 3 with weight w: the matrix
    // [[1, 1], [1, w]] has rank 1 for w = 1 and rank 2 otherwise.
    for (long long w : {1LL, 2LL}) {
      LocalComplex c(0);
      const auto empty = c.object(0).matching;
      const auto o1 = c.add_object({empty, 0, 1, 0});
      const auto o2 = c.add_object({empty, 0, 0, 0});
      const auto o3 = c.add_object({empty, 0, 1, 0});
      c.add_morphism(0, o1, identity());
      c.add_morphism(o2, o1, identity());
      c.add_morphism(0, o3, identity());
      c.add_morphism(o2, o3, identity(w));
      c.gauss_cancel(0, o1);
      CHECK(c.live_objects() == 2);
      if (w == 1) {
        CHECK(c.morphism(o2, o3) == nullptr);
        CHECK(c.cancel_all() == 0);
        CHECK(counts(c) == BettiMap{{{0, 0}, 1}, {{1, 0}, 1}});
      } else {
        REQUIRE(c.morphism(o2, o3) != nullptr);
        CHECK(c.cancel_all() == 1);
        CHECK(c.live_objects() == 0);
      }
    }
  }
  SUBCASE("non-isomorphisms are rejected") {
    LocalComplex c(0);
    const auto empty = c.object(0).matching;
    const auto b = c.add_object({empty, 0, 1, 2});
    c.add_morphism(0, b, identity());
    CHECK_FALSE(c.is_isomorphism(0, b));
    CHECK_THROWS_AS(c.gauss_cancel(0, b), InputError);
    CHECK_THROWS_AS(c.gauss_cancel(b, 0), InputError);
  }
}

TEST_CASE("graded Euler characteristic survives every reduction step") {
  std::mt19937 rng(51);
  for (int k = 0; k < 25; ++k) {
    const Diagram d = khtest::random_braid(rng, 4, 9);
    LocalComplex c(d.circles());
    c.deloop();
    for (int x : crossing_order(d)) {
      c.add_crossing(d.crossings()[x]);
      const auto chi = c.graded_euler();
      c.deloop();
      CHECK(c.graded_euler() == chi);
      c.cancel_all();
      CHECK(c.graded_euler() == chi);
    }
    c.cancel_all();
    CHECK(c.live_entries() == 0);
    CHECK(counts(c) == scan(d).betti);
  }
}

TEST_CASE("scan agrees with the cube") {
  std::mt19937 rng(52);
  for (int k = 0; k < 80; ++k) {
    const Diagram d = khtest::random_braid(rng, 5, 10);
    CHECK(kh_table(d, khtest::scanned()).betti == kh_table(d, khtest::naive()).betti);
  }
  for (const auto& e : khtest::bundled()) {
    const Diagram d = e.diagram();
    if (d.num_crossings() > 10) continue;
    INFO(e.name);
    CHECK(kh_table(d, khtest::scanned()).betti == kh_table(d, khtest::naive()).betti);
  }
}

TEST_CASE("scan ceiling and hooks") {
  const Diagram d = torus_diagram(3, 5);
  ScanOptions tight;
  tight.ceiling = 3;
  CHECK_THROWS_AS(scan(d, tight), ResourceError);

  int calls = 0;
  int last_total = 0;
  ScanOptions watched;
  watched.progress = [&](const ScanProgress& p) {
    ++calls;
    last_total = p.total;
  };
  const ScanResult r = scan(d, watched);
  CHECK(calls >= d.num_crossings());
  CHECK(last_total == d.num_crossings());
  CHECK(r.peak_generators > 0);
}

TEST_CASE("crossing order is a permutation") {
  std::mt19937 rng(53);
  for (int k = 0; k < 30; ++k) {
    const Diagram d = khtest::random_braid(rng, 5, 12);
    auto order = crossing_order(d);
    std::sort(order.begin(), order.end());
    for (int i = 0; i < static_cast<int>(order.size()); ++i) CHECK(order[i] == i);
  }
}
