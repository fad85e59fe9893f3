#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <rootclust/benchmarks.hpp>
#include <rootclust/polynomial.hpp>

#include "support.hpp"

using namespace rootclust;
using namespace testsup;

namespace {

RationalPolynomial rnd_rational_poly(std::mt19937_64& rng, int deg, int span = 10) {
    std::uniform_int_distribution<int> coeff(-span, span);
    RationalPolynomial p;
    for (int i = 0; i <= deg; ++i)
        p.coeffs.emplace_back(mpq_class(coeff(rng)), mpq_class(coeff(rng)));
    while (p.coeffs.back().first == 0 && p.coeffs.back().second == 0)
        p.coeffs.back().first = 1;
    return p;
}

}  // namespace

TEST_CASE("evaluate: z^2 - 1 at simple points") {
    RationalPolynomial rp = RationalPolynomial::from_real({mpq_class(-1), mpq_class(0), mpq_class(1)});
    DensePolynomial p = rp.to_balls(64);
    ComplexBall at2 = evaluate(p, ComplexBall::exact_si(2, 0, 64), 64);
    CHECK(mpfr_cmp_si(at2.re.raw(), 3) == 0);
    ComplexBall at1 = evaluate(p, ComplexBall::exact_si(1, 0, 64), 64);
    CHECK(at1.contains_point(BigFloat::from_si(0, 32), BigFloat::from_si(0, 32)));
}

TEST_CASE("evaluate agrees with exact rational evaluation") {
    auto rng = make_rng(2024);
    std::uniform_int_distribution<int> num(-20, 20);
    std::uniform_int_distribution<int> den(1, 9);
    for (int iter = 0; iter < 25; ++iter) {
        RationalPolynomial rp = rnd_rational_poly(rng, 8);
        DensePolynomial p = rp.to_balls(96);
        for (int k = 0; k < 8; ++k) {
            mpq_class zr(num(rng), den(rng)), zi(num(rng), den(rng));
            zr.canonicalize();
            zi.canonicalize();
            auto [er, ei] = rp.evaluate(zr, zi);
            ComplexBall z = ComplexBall::from_q(zr, zi, 96);
            ComplexBall v = evaluate(p, z, 96);
            CHECK(v.contains_point(BigFloat::from_q(er, 512), BigFloat::from_q(ei, 512)));
        }
    }
}

TEST_CASE("taylor_shift_scale: binomial expansion of z^2 at c=1, r=2") {
    RationalPolynomial rp = RationalPolynomial::from_real({mpq_class(0), mpq_class(0), mpq_class(1)});
    DensePolynomial p = rp.to_balls(64);
    DensePolynomial s = taylor_shift_scale(p, ComplexBall::exact_si(1, 0, 64),
                                           BigFloat::from_si(2, 64), 64);
    // (1 + 2z)^2 = 1 + 4z + 4z^2
    REQUIRE(s.degree() == 2);
    CHECK(mpfr_cmp_si(s.coeffs[0].re.raw(), 1) == 0);
    CHECK(mpfr_cmp_si(s.coeffs[1].re.raw(), 4) == 0);
    CHECK(mpfr_cmp_si(s.coeffs[2].re.raw(), 4) == 0);
    CHECK(s.coeffs[0].rad.is_zero());
}

TEST_CASE("taylor_shift_scale: identity at c=0, r=1") {
    auto rng = make_rng(5);
    RationalPolynomial rp = rnd_rational_poly(rng, 6);
    DensePolynomial p = rp.to_balls(64);
    DensePolynomial s = taylor_shift_scale(p, ComplexBall::exact_si(0, 0, 64),
                                           BigFloat::from_si(1, 64), 64);
    for (int i = 0; i <= 6; ++i) {
        CHECK(mpfr_equal_p(s.coeffs[i].re.raw(), p.coeffs[i].re.raw()));
        CHECK(mpfr_equal_p(s.coeffs[i].im.raw(), p.coeffs[i].im.raw()));
    }
}

TEST_CASE("taylor_shift_scale: evaluation consistency at random points") {
    auto rng = make_rng(77);
    for (int iter = 0; iter < 10; ++iter) {
        RationalPolynomial rp = rnd_rational_poly(rng, 8);
        DensePolynomial p = rp.to_balls(128);
        ComplexBall c = rnd_ball(rng, 128, 1.5, 0.0);
        BigFloat r = BigFloat::from_d(std::uniform_real_distribution<double>(0.25, 2.0)(rng), 128);
        DensePolynomial s = taylor_shift_scale(p, c, r, 128);
        REQUIRE(s.degree() == p.degree());
        for (int k = 0; k < 20; ++k) {
            ComplexBall z = rnd_ball(rng, 128, 1.0, 0.0);
            // P(c + r z) and S(z) must overlap as balls
            ComplexBall rz = ball_mul(z, ComplexBall(r, BigFloat::from_si(0, 128), rad_zero()), 128);
            ComplexBall arg = ball_add(c, rz, 128);
            ComplexBall lhs = evaluate(p, arg, 128);
            ComplexBall rhs = evaluate(s, z, 128);
            CHECK(balls_overlap(lhs, rhs));
        }
    }
}

TEST_CASE("taylor_shift_scale composition: shifting by c then by zero") {
    auto rng = make_rng(86);
    RationalPolynomial rp = rnd_rational_poly(rng, 6);
    DensePolynomial p = rp.to_balls(128);
    ComplexBall c = rnd_ball(rng, 128, 1.5, 0.0);
    BigFloat one = BigFloat::from_si(1, 128);
    DensePolynomial a = taylor_shift_scale(p, c, one, 128);
    DensePolynomial ab = taylor_shift_scale(a, ComplexBall::exact_si(0, 0, 128), one, 128);
    for (int i = 0; i <= 6; ++i) CHECK(balls_overlap(ab.coeffs[i], a.coeffs[i]));
}

TEST_CASE("taylor_shift_scale composition: scaling by r1 then r2") {
    auto rng = make_rng(88);
    RationalPolynomial rp = rnd_rational_poly(rng, 5);
    DensePolynomial p = rp.to_balls(128);
    ComplexBall zero = ComplexBall::exact_si(0, 0, 128);
    DensePolynomial a = taylor_shift_scale(p, zero, BigFloat::from_d(0.5, 128), 128);
    DensePolynomial ab = taylor_shift_scale(a, zero, BigFloat::from_si(3, 128), 128);
    DensePolynomial direct = taylor_shift_scale(p, zero, BigFloat::from_d(1.5, 128), 128);
    for (int i = 0; i <= 5; ++i) CHECK(balls_overlap(ab.coeffs[i], direct.coeffs[i]));
}

TEST_CASE("graeffe: fixed points and simple squarings") {
    // z - 1 -> z - 1
    DensePolynomial p1 = RationalPolynomial::from_real({mpq_class(-1), mpq_class(1)}).to_balls(64);
    DensePolynomial g1 = graeffe(p1, 64);
    CHECK(mpfr_cmp_si(g1.coeffs[0].re.raw(), -1) == 0);
    CHECK(mpfr_cmp_si(g1.coeffs[1].re.raw(), 1) == 0);
    // z - 2 -> z - 4
    DensePolynomial p2 = RationalPolynomial::from_real({mpq_class(-2), mpq_class(1)}).to_balls(64);
    DensePolynomial g2 = graeffe(p2, 64);
    CHECK(mpfr_cmp_si(g2.coeffs[0].re.raw(), -4) == 0);
    CHECK(mpfr_cmp_si(g2.coeffs[1].re.raw(), 1) == 0);
    // z^2 - 2 -> z^2 - 4z + 4 (double root 2)
    DensePolynomial p3 =
        RationalPolynomial::from_real({mpq_class(-2), mpq_class(0), mpq_class(1)}).to_balls(64);
    DensePolynomial g3 = graeffe(p3, 64);
    CHECK(mpfr_cmp_si(g3.coeffs[0].re.raw(), 4) == 0);
    CHECK(mpfr_cmp_si(g3.coeffs[1].re.raw(), -4) == 0);
    CHECK(mpfr_cmp_si(g3.coeffs[2].re.raw(), 1) == 0);
}

TEST_CASE("graeffe squares the roots (against the root oracle)") {
    auto rng = make_rng(31337);
    std::uniform_int_distribution<int> coeff(-4, 4);
    for (int iter = 0; iter < 12; ++iter) {
        int deg = 2 + static_cast<int>(rng() % 7);
        // Build from known integer-ish roots to keep the comparison easy.
        std::vector<std::pair<mpq_class, mpq_class>> roots;
        RationalPolynomial p = RationalPolynomial::from_real({mpq_class(1)});
        for (int i = 0; i < deg; ++i) {
            mpq_class rr(coeff(rng), 2), ri(coeff(rng), 2);
            // keep roots separated to make matching unambiguous
            bool dup = false;
            for (auto& [er, ei] : roots)
                if (er == rr && ei == ri) dup = true;
            if (dup) {
                --i;
                continue;
            }
            roots.emplace_back(rr, ri);
            RationalPolynomial lin;
            lin.coeffs.push_back({mpq_class(-rr), mpq_class(-ri)});
            lin.coeffs.push_back({mpq_class(1), mpq_class(0)});
            p = rational_mul(p, lin);
        }
        DensePolynomial pb = p.to_balls(192);
        DensePolynomial g = graeffe(pb, 192);
        auto found = oracle_roots_auto(g);
        int total = 0;
        for (const auto& est : found) total += est.multiplicity;
        CHECK(total == deg);
        // every squared root must be inside one of the oracle's balls
        BigFloat tol = BigFloat::pow2(-40, 32);
        for (auto& [rr, ri] : roots) {
            mpq_class sre = rr * rr - ri * ri;
            mpq_class sim = rr * ri * 2;
            BigFloat xre = BigFloat::from_q(sre, 256);
            BigFloat xim = BigFloat::from_q(sim, 256);
            bool hit = false;
            for (const auto& est : found) {
                ComplexBall widened = est.location;
                rad_add_inplace(widened.rad, tol);
                if (widened.contains_point(xre, xim)) hit = true;
            }
            CHECK(hit);
        }
    }
}

TEST_CASE("degree preserved by shift/scale and graeffe") {
    auto rng = make_rng(11);
    for (int iter = 0; iter < 10; ++iter) {
        RationalPolynomial rp = rnd_rational_poly(rng, 3 + static_cast<int>(rng() % 10));
        DensePolynomial p = rp.to_balls(96);
        ComplexBall c = rnd_ball(rng, 96, 2.0, 0.0);
        DensePolynomial s = taylor_shift_scale(p, c, BigFloat::from_d(0.75, 96), 96);
        CHECK(s.degree() == p.degree());
        DensePolynomial g = graeffe(p, 96);
        CHECK(g.degree() == p.degree());
    }
}

TEST_CASE("oracle approximation: exact integer polynomials have zero radii") {
    RationalOracle o(RationalPolynomial::from_real({mpq_class(-1), mpq_class(0), mpq_class(1)}));
    DensePolynomial p = o.approximate(100);
    CHECK(p.accuracy_bits() == kExactBits);
    for (const auto& cb : p.coeffs) CHECK(cb.rad.is_zero());
}

TEST_CASE("oracle approximation: Bernoulli d=4 at L=100 is within 2^-100") {
    RationalOracle o(bernoulli(4));
    DensePolynomial p = o.approximate(100);
    CHECK(p.accuracy_bits() >= 100);
    // coefficients must enclose the exact rationals
    RationalPolynomial exact = bernoulli(4);
    for (int i = 0; i <= 4; ++i) {
        CHECK(p.coeffs[i].contains_point(BigFloat::from_q(exact.coeffs[i].first, 512),
                                         BigFloat::from_q(exact.coeffs[i].second, 512)));
    }
}

TEST_CASE("oracle approximations are nested across precisions") {
    RationalOracle o(bernoulli(6));
    DensePolynomial lo = o.approximate(50);
    DensePolynomial hi = o.approximate(200);
    REQUIRE(lo.degree() == hi.degree());
    for (int i = 0; i <= lo.degree(); ++i) CHECK(balls_overlap(lo.coeffs[i], hi.coeffs[i]));
}

TEST_CASE("oracle rejects invalid accuracy requests") {
    RationalOracle o(bernoulli(2));
    CHECK_THROWS_AS(o.approximate(0), std::domain_error);
}
