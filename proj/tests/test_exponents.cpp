#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <chrono>

#include "nlkg/exponents.hpp"
#include "nlkg/rational.hpp"

using namespace nlkg;

TEST_CASE("rational arithmetic normalizes and guards") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(3, 4) * Rational(2, 3) == Rational(1, 2));
  CHECK(Rational(1, 2) - Rational(1, 2) == Rational(0));
  CHECK(Rational(7, 3) / Rational(7, 3) == Rational(1));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(1, 3));
  CHECK(Rational(5).str() == "5");
  CHECK(Rational(-3, 7).str() == "-3/7");
  CHECK(Rational(1, 3).to_double() == doctest::Approx(1.0 / 3.0));

  CHECK_THROWS_AS(Rational(1, 0), NumericalBreakdown);
  CHECK_THROWS_AS(Rational(1) / Rational(0), NumericalBreakdown);
  // reduced result overflows 64 bits even though inputs fit
  const Rational big(INT64_MAX / 2, 1);
  CHECK_THROWS_AS(big * big, NumericalBreakdown);
}

TEST_CASE("rational parse") {
  CHECK(Rational::parse("3/4") == Rational(3, 4));
  CHECK(Rational::parse("-2/6") == Rational(-1, 3));
  CHECK(Rational::parse("5") == Rational(5));
  CHECK(Rational::parse("-7") == Rational(-7));
  CHECK_THROWS_AS(Rational::parse("x/y"), ParamOutOfRange);
  CHECK_THROWS_AS(Rational::parse(""), ParamOutOfRange);
}

TEST_CASE("triple algebra and duality") {
  const ExpTriple z{Rational(1, 4), Rational(3, 8), Rational(1, 2)};
  const ExpTriple w{Rational(1, 3), Rational(1, 5), Rational(-1)};
  CHECK(z + w - w == z);
  CHECK(Rational(2) * z == z + z);
  CHECK(with_sigma(z, Rational(7)).sigma == Rational(7));
  CHECK(with_sigma(z, Rational(7)).b == z.b);

  // duality is an involution at fixed regularity
  for (const Rational s : {Rational(1), Rational(1, 2), Rational(0)}) {
    CHECK(dual(dual(z, s), s) == z);
    CHECK(dual(dual(w, s), s) == w);
  }
  CHECK(dual(z, Rational(1)).b == Rational(1) - z.b);
  CHECK(dual(z, Rational(1)).c == Rational(1) - z.c);
  CHECK(dual(z, Rational(1)).sigma == -z.sigma + Rational(1));
}

TEST_CASE("indices are affine in theta") {
  const ExpTriple z{Rational(1, 4), Rational(3, 8), Rational(1, 2)};
  const Rational th(2, 5);
  for (int d : {3, 4, 5, 6}) {
    const Rational r0 = reg_index(z, Rational(0), d);
    const Rational r1 = reg_index(z, Rational(1), d);
    CHECK(reg_index(z, th, d) == (Rational(1) - th) * r0 + th * r1);
    const Rational s0 = str_index(z, Rational(0), d);
    const Rational s1 = str_index(z, Rational(1), d);
    CHECK(str_index(z, th, d) == (Rational(1) - th) * s0 + th * s1);
    const Rational d0 = dec_index(z, Rational(0), d);
    const Rational d1 = dec_index(z, Rational(1), d);
    CHECK(dec_index(z, th, d) == (Rational(1) - th) * d0 + th * d1);
  }
}

TEST_CASE("endpoint exponents solve their defining equations") {
  // W pins str^0 = 0 with reg^0 = 1, K pins str^1 = 0 with reg^1 = 1
  for (int d : {3, 4, 5, 6}) {
    const auto c = make_catalog(d, range_p1(d).midpoint(), range_p2(d).midpoint());
    CHECK(str_index(c.W, Rational(0), d) == Rational(0));
    CHECK(reg_index(c.W, Rational(0), d) == Rational(1));
    CHECK(str_index(c.K, Rational(1), d) == Rational(0));
    CHECK(reg_index(c.K, Rational(1), d) == Rational(1));
    CHECK(c.W.b == c.W.c);  // diagonal ansatz
    CHECK(c.K.b == c.K.c);
  }
}

TEST_CASE("admissibility window") {
  // the energy norm L^inf_t H^1 sits at the included space endpoint c = 1/2
  const ExpTriple energy{Rational(0), Rational(1, 2), Rational(1)};
  const auto ok = is_admissible(energy, Rational(1), 3);
  CHECK(ok.admissible);
  REQUIRE(ok.theta.has_value());
  CHECK(*ok.theta >= Rational(0));
  CHECK(*ok.theta <= Rational(1));

  const ExpTriple bad{Rational(1), Rational(0), Rational(0)};  // b > 1/2
  const auto no = is_admissible(bad, Rational(1), 3);
  CHECK(!no.admissible);
  CHECK(!no.reason.empty());
}

TEST_CASE("parameter ranges") {
  const auto r1 = range_p1(3);
  CHECK(r1.lo == Rational(4, 3));
  CHECK(r1.hi == Rational(8, 5));
  CHECK(r1.contains(r1.midpoint()));
  CHECK(!r1.contains(r1.lo));
  CHECK(!r1.contains(r1.hi));

  const auto r2 = range_p2(3);
  CHECK(r2.lo == Rational(10, 3));
  CHECK(r2.hi == Rational(4));
  CHECK(r2.contains(Rational(4)));  // closed top: the critical endpoint
  CHECK(!r2.contains(Rational(10, 3)));

  CHECK(lower_critical_power(3) == Rational(10, 3));
  CHECK(upper_critical_power(3) == Rational(6));
  CHECK(upper_critical_power(5) == Rational(10, 3));
  CHECK_THROWS_AS(upper_critical_power(2), ParamOutOfRange);
  CHECK_THROWS_AS(range_p1(2), ParamOutOfRange);
}

TEST_CASE("catalog refuses out-of-range parameters") {
  CHECK_THROWS_AS(make_catalog(2, Rational(1), Rational(1)), ParamOutOfRange);
  // d=5 has range_p1 = (4/5, 6/7); 1/2 sits outside it
  CHECK_THROWS_AS(make_catalog(5, Rational(1, 2), range_p2(5).midpoint()),
                  ParamOutOfRange);
  CHECK_THROWS_AS(make_catalog(3, range_p1(3).midpoint(), Rational(5)),
                  ParamOutOfRange);
  CHECK_THROWS_AS(verify_relations(5, Rational(1, 2), Rational(4, 3)),
                  ParamOutOfRange);
}

TEST_CASE("interpolation coefficients land where documented") {
  for (int d : {3, 4, 5, 6}) {
    const auto c = make_catalog(d, range_p1(d).midpoint(), range_p2(d).midpoint());
    // R = (1-alpha) W + alpha K with alpha strictly inside (0,1)
    CHECK(c.alpha > Rational(0));
    CHECK(c.alpha < Rational(1));
    CHECK(c.R == (Rational(1) - c.alpha) * c.W + c.alpha * c.K);
    // beta is outside (0,1) identically; the repaired segment is inside
    CHECK(!(c.beta > Rational(0) && c.beta < Rational(1)));
    CHECK(c.beta_repair > Rational(0));
    CHECK(c.beta_repair < Rational(1));
    CHECK(c.eps > Rational(0));
    CHECK(c.eps < c.p1);
  }
}

TEST_CASE("relation catalog verifies exactly on the invariant grid") {
  const auto t0 = std::chrono::steady_clock::now();
  for (int d : {3, 4, 5, 6}) {
    const Rational p1 = range_p1(d).midpoint();
    for (const Rational p2 : {range_p2(d).midpoint(), range_p2(d).hi}) {
      CAPTURE(d);
      CAPTURE(p1.str());
      CAPTURE(p2.str());
      const auto rep = verify_relations(d, p1, p2);
      CHECK(rep.pass);
      CHECK(rep.num_failed_required() == 0);
      CHECK(!rep.checks.empty());
      CHECK(!rep.summary().empty());
    }
  }
  const double el =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  CHECK(el < 1.0);
}

TEST_CASE("failed informational checks are reported, not fatal") {
  // str^1(P) < 0 genuinely fails for d <= 4 and is informational there
  const auto rep = verify_relations(3, Rational(3, 2), Rational(4));
  bool saw_informational_failure = false;
  for (const auto& ck : rep.checks)
    if (!ck.required && !ck.holds) saw_informational_failure = true;
  CHECK(saw_informational_failure);
  CHECK(rep.pass);
}
