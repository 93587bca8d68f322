#include <doctest.h>

#include <random>

#include "khbound/errors.hpp"
#include "khbound/factory.hpp"
#include "support.hpp"

using namespace khbound;

TEST_CASE("parse_pd on small diagrams") {
  const Diagram u = parse_pd("U1");
  CHECK(u.num_crossings() == 0);
  CHECK(u.num_components() == 1);
  CHECK(stats(u) == DiagramStats{0, 0, 0, 1});

  const Diagram hopf = parse_pd("X[3,2,4,1], X[2,3,1,4]");
  CHECK(hopf.num_components() == 2);
  CHECK(stats(hopf) == DiagramStats{2, 0, 2, 2});

  const Diagram t23 = parse_pd("PD[X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]]");
  CHECK(stats(t23) == DiagramStats{3, 0, 3, 1});

  const Diagram kink = parse_pd("X[1,1,2,2]");
  CHECK(stats(kink) == DiagramStats{1, 0, 1, 1});

  const Diagram json = parse_pd(R"({"pd": [[1,5,2,4],[3,1,4,6],[5,3,6,2]], "circles": 1})");
  CHECK(json.num_components() == 2);
  CHECK(json.circles() == 1);
}

TEST_CASE("parse_pd sign override") {
  // Reversing the override flips every sign.
  const Diagram d = parse_pd(R"({"pd": [[1,5,2,4],[3,1,4,6],[5,3,6,2]], "signs": [1, 1, 1]})");
  CHECK(stats(d).writhe == 3);
  CHECK_THROWS_AS(parse_pd(R"({"pd": [[1,5,2,4]], "signs": [1, 1]})"), InputError);
}

TEST_CASE("parse_pd rejects malformed input") {
  CHECK_THROWS_AS(parse_pd(""), InputError);
  CHECK_THROWS_AS(parse_pd("X[1,2,3]"), InputError);
  CHECK_THROWS_AS(parse_pd("X[1,2,3,4"), InputError);
  CHECK_THROWS_AS(parse_pd("X[1,1,1,2]"), InputError);          // label three times
  CHECK_THROWS_AS(parse_pd("X[1,2,2,3]"), InputError);          // labels once
  CHECK_THROWS_AS(parse_pd("X[0,0,1,1]"), InputError);          // non-positive label
  CHECK_THROWS_AS(parse_pd("X[1,2,3,4], X[1,4,3,2]"), InputError);  // edge 1 enters twice
  CHECK_THROWS_AS(parse_pd("[[1,2,3]]"), InputError);
  CHECK_THROWS_AS(parse_pd("{\"circles\": 1}"), InputError);
  CHECK_THROWS_AS(parse_pd("Y[1,1,2,2]"), InputError);
}

TEST_CASE("stats identities on random diagrams") {
  std::mt19937 rng(21);
  for (int k = 0; k < 100; ++k) {
    const Diagram d = khtest::random_braid(rng, 5, 12);
    const DiagramStats s = stats(d);
    CHECK(s.writhe == s.c_plus - s.c_minus);
    CHECK(s.c_plus + s.c_minus == d.num_crossings());
    CHECK(s.n_components == d.num_components());
  }
}

TEST_CASE("linking numbers") {
  const Diagram hopf = torus_diagram(2, 2);
  CHECK(linking_number(hopf, 0, 1) == 1);
  CHECK(linking_number(mirror(hopf), 0, 1) == -1);
  CHECK(linking_number(torus_diagram(2, 6), 1, 0) == 3);
  CHECK(linking_number(parse_pd("U2"), 0, 1) == 0);
  CHECK_THROWS_AS(linking_number(hopf, 0, 0), InputError);
  CHECK_THROWS_AS(linking_number(hopf, 0, 2), InputError);
}

TEST_CASE("mirror and reversal") {
  std::mt19937 rng(22);
  for (int k = 0; k < 100; ++k) {
    const Diagram d = khtest::random_braid(rng, 4, 10);
    const Diagram m = mirror(d);
    CHECK(stats(m).c_plus == stats(d).c_minus);
    CHECK(stats(m).c_minus == stats(d).c_plus);
    CHECK(mirror(m).hash() == d.hash());
    for (int c = 0; c < d.num_components(); ++c) {
      const Diagram r = reverse_component(d, c);
      CHECK(reverse_component(r, c).hash() == d.hash());
      CHECK(r.num_crossings() == d.num_crossings());
      // Only crossings between c and another component change sign.
      int lk = 0;
      for (int o = 0; o < d.num_components(); ++o) {
        if (o != c) lk += linking_number(d, c, o);
      }
      CHECK(stats(r).writhe == stats(d).writhe - 4 * lk);
    }
  }
  CHECK_THROWS_AS(reverse_component(parse_pd("U1"), 1), InputError);
}

TEST_CASE("PD text round trip and hash stability") {
  std::mt19937 rng(23);
  for (int k = 0; k < 100; ++k) {
    const Diagram d = khtest::random_braid(rng, 4, 10);
    if (d.num_crossings() == 0 && d.circles() == 0) continue;
    const Diagram back = parse_pd(d.to_pd_text());
    CHECK(back == d);
    CHECK(back.hash() == d.hash());
    CHECK(d.canonical().hash() == d.hash());
  }
  CHECK(torus_diagram(2, 3).hash() != mirror(torus_diagram(2, 3)).hash());
  CHECK(torus_diagram(2, 3).hash().size() == 16);
}

TEST_CASE("component structure") {
  const Diagram d = torus_diagram(3, 3);
  CHECK(d.num_components() == 3);
  int total = 0;
  for (int c = 0; c < 3; ++c) total += static_cast<int>(d.component_edges(c).size());
  CHECK(total == static_cast<int>(d.edge_labels().size()));
  for (int label : d.edge_labels()) {
    const int next = d.successor(label);
    CHECK(d.component_of_edge(next) == d.component_of_edge(label));
  }
}
