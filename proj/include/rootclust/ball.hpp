#pragma once

#include "rootclust/bigfloat.hpp"

namespace rootclust {

/// Complex ball: a complex center with a single nonnegative error radius.
/// Invariant: the exact value of whatever a ball stands for lies within
/// `rad` (in Euclidean distance) of center. Every operation below returns
/// a ball containing the exact result for all members of its input balls.
struct ComplexBall {
    BigFloat re, im;   // center, at the working precision of the producer
    BigFloat rad;      // kRadiusPrec bits, rounded upward

    ComplexBall() : re(53), im(53), rad(rad_zero()) {
        mpfr_set_si(re.raw(), 0, MPFR_RNDN);
        mpfr_set_si(im.raw(), 0, MPFR_RNDN);
    }
    ComplexBall(BigFloat re_, BigFloat im_, BigFloat rad_)
        : re(std::move(re_)), im(std::move(im_)), rad(std::move(rad_)) {}

    static ComplexBall exact_si(long re, long im, mpfr_prec_t prec) {
        return ComplexBall(BigFloat::from_si(re, prec),
                           BigFloat::from_si(im, prec), rad_zero());
    }
    static ComplexBall exact(BigFloat re, BigFloat im) {
        return ComplexBall(std::move(re), std::move(im), rad_zero());
    }
    // Rounds an exact rational point to prec bits; the rounding error goes
    // into the radius (zero when the point is exactly representable).
    static ComplexBall from_q(const mpq_class& re, const mpq_class& im,
                              mpfr_prec_t prec);

    bool is_exact() const { return rad.is_zero(); }
    bool is_finite() const {
        return re.is_finite() && im.is_finite() && rad.is_finite();
    }

    /// Upper bound on |z| over the ball, at radius precision.
    BigFloat abs_ub() const;
    /// Lower bound on |z| over the ball (clamped at 0).
    BigFloat abs_lb() const;
    bool contains_zero() const { return abs_lb().is_zero(); }

    /// True only if the exact point (xre,xim) is certainly inside the ball.
    bool contains_point(const BigFloat& xre, const BigFloat& xim) const;

    std::string to_string() const;
};

// All operations satisfy the inclusion property: the result ball contains
// f(x, y) for every x in a and y in b.

ComplexBall ball_add(const ComplexBall& a, const ComplexBall& b, mpfr_prec_t prec);
ComplexBall ball_sub(const ComplexBall& a, const ComplexBall& b, mpfr_prec_t prec);
ComplexBall ball_mul(const ComplexBall& a, const ComplexBall& b, mpfr_prec_t prec);
ComplexBall ball_div(const ComplexBall& a, const ComplexBall& b, mpfr_prec_t prec);
ComplexBall ball_pow(const ComplexBall& a, unsigned long k, mpfr_prec_t prec);
ComplexBall ball_neg(const ComplexBall& a);
ComplexBall ball_conj(const ComplexBall& a);
ComplexBall ball_mul_ui(const ComplexBall& a, unsigned long k, mpfr_prec_t prec);
ComplexBall ball_div_ui(const ComplexBall& a, unsigned long k, mpfr_prec_t prec);
// Exact scaling by 2^e.
ComplexBall ball_mul_2si(const ComplexBall& a, long e);

/// acc += c * x, in place at precision prec(acc.re). The workhorse of the
/// polynomial kernels; avoids temporary allocations where it matters.
void ball_addmul(ComplexBall& acc, const ComplexBall& c, const ComplexBall& x,
                 mpfr_prec_t prec);

}  // namespace rootclust
