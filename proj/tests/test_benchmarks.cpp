#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <rootclust/benchmarks.hpp>

#include "support.hpp"

using namespace rootclust;
using namespace testsup;

TEST_CASE("bernoulli: small degrees from the recurrence") {
    CHECK(bernoulli_number(1) == mpq_class(-1, 2));
    CHECK(bernoulli_number(2) == mpq_class(1, 6));
    CHECK(bernoulli_number(3) == 0);
    CHECK(bernoulli_number(12) == mpq_class(-691, 2730));

    RationalPolynomial b1 = bernoulli(1);  // z - 1/2
    CHECK(b1.coeffs[1].first == 1);
    CHECK(b1.coeffs[0].first == mpq_class(-1, 2));

    RationalPolynomial b2 = bernoulli(2);  // z^2 - z + 1/6
    CHECK(b2.coeffs[2].first == 1);
    CHECK(b2.coeffs[1].first == -1);
    CHECK(b2.coeffs[0].first == mpq_class(1, 6));
}

TEST_CASE("bernoulli: monic for a spread of degrees") {
    for (int d : {1, 2, 8, 33, 64}) {
        RationalPolynomial p = bernoulli(d);
        CHECK(p.degree() == d);
        CHECK(p.coeffs[d].first == 1);
        CHECK(p.is_real());
    }
}

TEST_CASE("mignotte: expansion and basics") {
    RationalPolynomial p = mignotte(4, 1);  // z^4 - 8z^2 + 8z - 2
    CHECK(p.coeffs[4].first == 1);
    CHECK(p.coeffs[3].first == 0);
    CHECK(p.coeffs[2].first == -8);
    CHECK(p.coeffs[1].first == 8);
    CHECK(p.coeffs[0].first == -2);
    auto [v0, v0i] = p.evaluate(mpq_class(0), mpq_class(0));
    CHECK(v0 == -2);
    CHECK(v0i == 0);
}

TEST_CASE("mignotte even degree has exactly 4 real roots") {
    // Count sign changes of p on a fine real grid plus the root oracle.
    RationalPolynomial p = mignotte(8, 2);
    auto roots = oracle_roots_auto(p.to_balls(256));
    int realish = 0, total = 0;
    for (const auto& est : roots) {
        total += est.multiplicity;
        // a real root of a real polynomial is certified real if its ball
        // straddles the axis narrowly: |Im center| <= radius
        BigFloat absim{32};
        mpfr_abs(absim.raw(), est.location.im.raw(), MPFR_RNDU);
        if (absim <= est.location.rad) realish += est.multiplicity;
    }
    CHECK(total == 8);
    CHECK(realish == 4);
}

TEST_CASE("mandelbrot: first members and degree bookkeeping") {
    bool warned = false;
    RationalPolynomial p1 = mandelbrot(1, &warned);  // k=1: z+1
    CHECK(!warned);
    CHECK(p1.degree() == 1);
    CHECK(p1.coeffs[0].first == 1);
    CHECK(p1.coeffs[1].first == 1);

    RationalPolynomial p3 = mandelbrot(3);  // k=2: z^3+2z^2+z+1
    CHECK(p3.degree() == 3);
    CHECK(p3.coeffs[3].first == 1);
    CHECK(p3.coeffs[2].first == 2);
    CHECK(p3.coeffs[1].first == 1);
    CHECK(p3.coeffs[0].first == 1);

    RationalPolynomial p63 = mandelbrot(63, &warned);
    CHECK(!warned);
    CHECK(p63.degree() == 63);

    mandelbrot(120, &warned);  // not 2^k - 1: maps down with a warning
    CHECK(warned);
    CHECK(mandelbrot(120).degree() == 63);
}

TEST_CASE("mandelbrot coefficients are positive integers, constant term 1") {
    RationalPolynomial p = mandelbrot(31);
    CHECK(p.coeffs[0].first == 1);
    for (const auto& [re, im] : p.coeffs) {
        CHECK(im == 0);
        CHECK(re > 0);
        CHECK(re.get_den() == 1);
    }
}

TEST_CASE("spiral: d=1 is z - 1, root moduli are k/d") {
    DensePolynomial p = spiral(1, 60);
    REQUIRE(p.degree() == 1);
    CHECK(p.coeffs[1].contains_point(BigFloat::from_si(1, 64), BigFloat::from_si(0, 64)));
    BigFloat one = BigFloat::from_si(-1, 64), zero = BigFloat::from_si(0, 64);
    CHECK(p.coeffs[0].contains_point(one, zero));
    CHECK(p.accuracy_bits() >= 60);

    // root moduli k/d: check |constant term| = prod k/d for d=5
    DensePolynomial p5 = spiral(5, 80);
    auto roots = oracle_roots_auto(p5);
    int total = 0;
    for (const auto& est : roots) total += est.multiplicity;
    CHECK(total == 5);
    // every root modulus is one of {1/5..5/5}
    for (const auto& est : roots) {
        double m = std::hypot(est.location.re.get_d(), est.location.im.get_d());
        bool ok = false;
        for (int k = 1; k <= 5; ++k)
            if (std::abs(m - k / 5.0) < 1e-9) ok = true;
        CHECK(ok);
    }
}

TEST_CASE("family evaluation cross-check at random rational points") {
    auto rng = make_rng(5150);
    std::uniform_int_distribution<int> num(-12, 12);
    std::uniform_int_distribution<int> den(1, 7);
    RationalPolynomial fams[] = {bernoulli(7), mignotte(6, 3), mandelbrot(7)};
    for (const auto& p : fams) {
        for (int k = 0; k < 10; ++k) {
            mpq_class x(num(rng), den(rng));
            x.canonicalize();
            // direct Horner in exact arithmetic vs evaluate()
            auto [er, ei] = p.evaluate(x, mpq_class(0));
            mpq_class acc = 0;
            for (int i = p.degree(); i >= 0; --i) acc = acc * x + p.coeffs[i].first;
            CHECK(er == acc);
            CHECK(ei == 0);
        }
    }
}

TEST_CASE("oracle_roots: simple cases") {
    RationalPolynomial rp = RationalPolynomial::from_real({mpq_class(-1), mpq_class(0), mpq_class(1)});
    auto roots = oracle_roots(rp.to_balls(128), 128);
    REQUIRE(roots.size() == 2);
    for (const auto& est : roots) {
        CHECK(est.multiplicity == 1);
        double re = est.location.re.get_d();
        CHECK(std::abs(std::abs(re) - 1.0) < 1e-12);
    }
}

TEST_CASE("oracle_roots: double root merges into multiplicity 2") {
    // (z-1)^2 = z^2 - 2z + 1
    RationalPolynomial rp = RationalPolynomial::from_real({mpq_class(1), mpq_class(-2), mpq_class(1)});
    auto roots = oracle_roots_auto(rp.to_balls(256));
    REQUIRE(roots.size() == 1);
    CHECK(roots[0].multiplicity == 2);
    CHECK(std::abs(roots[0].location.re.get_d() - 1.0) < 1e-6);
}

TEST_CASE("oracle_roots: Vieta check on bernoulli(8)") {
    RationalPolynomial p = bernoulli(8);
    auto roots = oracle_roots_auto(p.to_balls(256));
    int total = 0;
    BigFloat sre = BigFloat::from_si(0, 256), sim = BigFloat::from_si(0, 256);
    for (const auto& est : roots) {
        total += est.multiplicity;
        for (int m = 0; m < est.multiplicity; ++m) {
            mpfr_add(sre.raw(), sre.raw(), est.location.re.raw(), MPFR_RNDN);
            mpfr_add(sim.raw(), sim.raw(), est.location.im.raw(), MPFR_RNDN);
        }
    }
    CHECK(total == 8);
    // sum of roots = -coeff(z^7) = 4
    CHECK(std::abs(sre.get_d() - 4.0) < 1e-9);
    CHECK(std::abs(sim.get_d()) < 1e-9);
}

TEST_CASE("oracle_roots: root count equals degree across random polys") {
    auto rng = make_rng(2718);
    std::uniform_int_distribution<int> coeff(-9, 9);
    for (int iter = 0; iter < 15; ++iter) {
        int deg = 2 + static_cast<int>(rng() % 10);
        RationalPolynomial p;
        for (int i = 0; i <= deg; ++i)
            p.coeffs.emplace_back(mpq_class(coeff(rng)), mpq_class(coeff(rng)));
        if (p.coeffs[deg].first == 0 && p.coeffs[deg].second == 0) p.coeffs[deg].first = 3;
        auto roots = oracle_roots_auto(p.to_balls(192));
        int total = 0;
        for (const auto& est : roots) total += est.multiplicity;
        CHECK(total == deg);
    }
}

TEST_CASE("oracle_roots rejects degree > 64") {
    RationalPolynomial p = bernoulli(65);
    CHECK_THROWS_AS(oracle_roots(p.to_balls(128), 128), std::domain_error);
}
