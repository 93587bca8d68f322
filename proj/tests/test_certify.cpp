#include <doctest.h>

#include "khbound/certify.hpp"
#include "khbound/errors.hpp"
#include "support.hpp"

using namespace khbound;

TEST_CASE("diagram bounds") {
  const Certificate trefoil = diagram_bound(kh_table(khtest::fixture("3_1")));
  CHECK(trefoil.statement == kDiagramBound);
  CHECK(trefoil.c_plus_bound == 3);
  CHECK(trefoil.c_minus_bound == 0);
  CHECK(trefoil.verdicts == std::vector<std::string>{kNotNegative});

  const Certificate eight = diagram_bound(kh_table(khtest::fixture("4_1")));
  CHECK(eight.c_plus_bound == 2);
  CHECK(eight.c_minus_bound == 2);
  CHECK(eight.verdicts == std::vector<std::string>{kNotNegative, kNotPositive});

  const Certificate unknot = diagram_bound(kh_table(khtest::fixture("unknot")));
  CHECK(unknot.c_plus_bound == 0);
  CHECK(unknot.verdicts.empty());
}

TEST_CASE("cable certificates") {
  const Certificate u = cable_certificate(khtest::fixture("unknot"), 2, 0);
  CHECK(u.statement == kCableBound);
  CHECK(u.c_plus_bound == 0);
  CHECK(u.verdicts.empty());

  const Diagram trefoil = khtest::fixture("3_1");
  const Certificate c = cable_certificate(trefoil, 2, 0);
  CHECK(c.c_plus_bound >= 1);
  CHECK(c.c_plus_bound <= 3);
  CHECK(c.verdicts == std::vector<std::string>{kNotNegative});
  CHECK(revalidate(c, trefoil));

  const Certificate twisted = cable_certificate(trefoil, 2, 6);
  CHECK(twisted.knot_i_max == 3);
  CHECK(twisted.c_plus_bound <= 3);

  CHECK_THROWS_AS(cable_certificate(trefoil, 2, 7), InputError);
  CHECK_THROWS_AS(cable_certificate(khtest::fixture("m3_1"), 2, 1), InputError);
  CHECK_THROWS_AS(cable_certificate(trefoil, 1, 0), InputError);
  CHECK_THROWS_AS(cable_certificate(torus_diagram(2, 2), 2, 0), InputError);
}

TEST_CASE("certificate JSON and revalidation") {
  const Diagram d = khtest::fixture("4_1");
  const Certificate cert = diagram_bound(kh_table(d));
  CHECK(Certificate::from_json(cert.to_json()) == cert);
  CHECK(revalidate(cert, d));
  Certificate forged = cert;
  forged.c_plus_bound += 1;
  CHECK_FALSE(revalidate(forged, d));
  CHECK_FALSE(revalidate(cert, khtest::fixture("3_1")));
  CHECK_THROWS_AS(Certificate::from_json(nlohmann::json::array()), InputError);
}

TEST_CASE("vanishing lines on torus links") {
  // T(2, 2t) and T(3, 3) are cables of the unknot, c = 0.
  const VanishingReport neg = vanishing_check(kh_table(torus_diagram(2, -2)), 2, -1, 0);
  CHECK(neg.region == VanishingRegion::kTwistBounded);
  CHECK(neg.limit == 0);
  CHECK(neg.pass);

  const VanishingReport hopf = vanishing_check(kh_table(torus_diagram(2, 2)), 2, 1, 0);
  CHECK(hopf.region == VanishingRegion::kEvenStrands);
  CHECK(hopf.limit == 2);
  CHECK(hopf.i_max == 2);
  CHECK(hopf.pass);

  const VanishingReport t33 = vanishing_check(kh_table(torus_diagram(3, 3)), 3, 1, 0);
  CHECK(t33.region == VanishingRegion::kOddStrands);
  CHECK(t33.limit == 4);
  CHECK(t33.pass);

  // T(2, 4) is the (2, 4) cable, so claiming t = 1 must fail.
  const VanishingReport wrong = vanishing_check(kh_table(torus_diagram(2, 4)), 2, 1, 0);
  CHECK_FALSE(wrong.pass);
  CHECK_FALSE(wrong.violations.empty());
}

TEST_CASE("torus link gap") {
  const GapReport g11 = gap_report(1, 1);
  CHECK(g11.c_plus == 2);
  CHECK(g11.i_max == 2);
  CHECK(g11.gap == 0);
  const GapReport g12 = gap_report(1, 2);
  CHECK(g12.c_plus == 4);
  CHECK(g12.i_max == 4);
  CHECK(g12.gap == 0);
}

TEST_CASE("cable exploration and the chain of inequalities") {
  const CableExploration e = explore_cables(khtest::fixture("unknot"), 3, -1, 1);
  CHECK_FALSE(e.found_positive);
  CHECK(e.samples.size() == 6);
  for (const auto& s : e.samples) {
    if (s.t > 0) {
      CHECK(s.status == "not-certifiable");
      CHECK_FALSE(s.i_max.has_value());
    } else {
      CHECK(s.status == "ok");
      CHECK(s.i_max == 0);
    }
  }

  const ChainCheck chain = check_chain(khtest::fixture("3_1"), 2);
  CHECK(chain.status == "ok");
  CHECK(chain.t == 6);
  CHECK(chain.left_holds == true);
  CHECK(chain.right_holds == true);
}
