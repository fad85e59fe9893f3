#pragma once

// Shared helpers for the test suites: deterministic RNG, random balls,
// sampling points inside balls, high-precision reference arithmetic.

#include <rootclust/ball.hpp>
#include <rootclust/polynomial.hpp>

#include <random>
#include <vector>

namespace testsup {

using rootclust::BigFloat;
using rootclust::ComplexBall;

inline std::mt19937_64 make_rng(uint64_t seed) { return std::mt19937_64(seed); }

// Uniform dyadic in [-1, 1] with `bits` random mantissa bits; exactly
// representable at precision >= bits + 1.
inline double rnd_unit(std::mt19937_64& rng) {
    return std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
}

inline BigFloat rnd_bigfloat(std::mt19937_64& rng, mpfr_prec_t prec, double scale = 1.0) {
    // Two 53-bit draws stitched together so values genuinely use > 53 bits.
    BigFloat x = BigFloat::from_d(rnd_unit(rng) * scale, prec);
    BigFloat lo = BigFloat::from_d(rnd_unit(rng) * scale * 1e-17, prec);
    BigFloat r{prec};
    mpfr_add(r.raw(), x.raw(), lo.raw(), MPFR_RNDN);
    return r;
}

inline ComplexBall rnd_ball(std::mt19937_64& rng, mpfr_prec_t prec, double scale = 1.0,
                            double max_rad = 1e-6) {
    ComplexBall b(rnd_bigfloat(rng, prec, scale), rnd_bigfloat(rng, prec, scale),
                  rootclust::rad_zero());
    double r = std::uniform_real_distribution<double>(0.0, max_rad)(rng);
    mpfr_set_d(b.rad.raw(), r, MPFR_RNDU);
    return b;
}

// A point guaranteed inside the ball: center + t * rad * (cos a, sin a)
// with t in [0, 0.999], computed outward-safely at high precision.
inline std::pair<BigFloat, BigFloat> sample_in_ball(std::mt19937_64& rng,
                                                    const ComplexBall& b,
                                                    mpfr_prec_t prec) {
    double t = std::uniform_real_distribution<double>(0.0, 0.999)(rng);
    double a = std::uniform_real_distribution<double>(0.0, 6.28318)(rng);
    BigFloat dre{prec}, dim{prec}, re{prec}, im{prec};
    mpfr_set_d(dre.raw(), t * std::cos(a) * 0.999, MPFR_RNDZ);
    mpfr_set_d(dim.raw(), t * std::sin(a) * 0.999, MPFR_RNDZ);
    mpfr_mul(dre.raw(), dre.raw(), b.rad.raw(), MPFR_RNDZ);
    mpfr_mul(dim.raw(), dim.raw(), b.rad.raw(), MPFR_RNDZ);
    mpfr_add(re.raw(), b.re.raw(), dre.raw(), MPFR_RNDN);
    mpfr_add(im.raw(), b.im.raw(), dim.raw(), MPFR_RNDN);
    return {std::move(re), std::move(im)};
}

// Reference complex arithmetic at precision prec (round to nearest).
struct CPoint {
    BigFloat re, im;
};

inline CPoint cpt(const BigFloat& re, const BigFloat& im) { return {re, im}; }

inline CPoint c_add(const CPoint& x, const CPoint& y, mpfr_prec_t p) {
    CPoint r{BigFloat{p}, BigFloat{p}};
    mpfr_add(r.re.raw(), x.re.raw(), y.re.raw(), MPFR_RNDN);
    mpfr_add(r.im.raw(), x.im.raw(), y.im.raw(), MPFR_RNDN);
    return r;
}

inline CPoint c_mul(const CPoint& x, const CPoint& y, mpfr_prec_t p) {
    CPoint r{BigFloat{p}, BigFloat{p}};
    mpfr_fmms(r.re.raw(), x.re.raw(), y.re.raw(), x.im.raw(), y.im.raw(), MPFR_RNDN);
    mpfr_fmma(r.im.raw(), x.re.raw(), y.im.raw(), x.im.raw(), y.re.raw(), MPFR_RNDN);
    return r;
}

inline CPoint c_pow(const CPoint& x, unsigned long k, mpfr_prec_t p) {
    CPoint acc{BigFloat::from_si(1, p), BigFloat::from_si(0, p)};
    for (unsigned long i = 0; i < k; ++i) acc = c_mul(acc, x, p);
    return acc;
}

inline bool balls_overlap(const ComplexBall& a, const ComplexBall& b) {
    mpfr_prec_t p = std::max(a.re.prec(), b.re.prec()) + 8;
    BigFloat dre{p}, dim{p}, d{rootclust::kRadiusPrec}, s{rootclust::kRadiusPrec};
    mpfr_sub(dre.raw(), a.re.raw(), b.re.raw(), MPFR_RNDA);
    mpfr_sub(dim.raw(), a.im.raw(), b.im.raw(), MPFR_RNDA);
    mpfr_hypot(d.raw(), dre.raw(), dim.raw(), MPFR_RNDD);
    mpfr_add(s.raw(), a.rad.raw(), b.rad.raw(), MPFR_RNDU);
    return mpfr_cmp(d.raw(), s.raw()) <= 0;
}

}  // namespace testsup
