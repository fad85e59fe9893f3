#include "rootclust/ball.hpp"

#include <stdexcept>

namespace rootclust {

namespace {

// Upper bound of hypot(x, y) at radius precision.
void hypot_ub(BigFloat& out, const BigFloat& x, const BigFloat& y) {
    mpfr_hypot(out.raw(), x.raw(), y.raw(), MPFR_RNDU);
}

}  // namespace

ComplexBall ComplexBall::from_q(const mpq_class& re, const mpq_class& im,
                                mpfr_prec_t prec) {
    int tr = 0, ti = 0;
    BigFloat r = BigFloat::from_q(re, prec, MPFR_RNDN, &tr);
    BigFloat i = BigFloat::from_q(im, prec, MPFR_RNDN, &ti);
    BigFloat rad = rad_zero();
    rad_add_ulp(rad, r, tr);
    rad_add_ulp(rad, i, ti);
    return ComplexBall(std::move(r), std::move(i), std::move(rad));
}

BigFloat ComplexBall::abs_ub() const {
    BigFloat h(kRadiusPrec);
    hypot_ub(h, re, im);
    rad_add_inplace(h, rad);
    return h;
}

BigFloat ComplexBall::abs_lb() const {
    BigFloat h(kRadiusPrec);
    mpfr_hypot(h.raw(), re.raw(), im.raw(), MPFR_RNDD);
    mpfr_sub(h.raw(), h.raw(), rad.raw(), MPFR_RNDD);
    if (mpfr_sgn(h.raw()) < 0) mpfr_set_si(h.raw(), 0, MPFR_RNDN);
    return h;
}

bool ComplexBall::contains_point(const BigFloat& xre, const BigFloat& xim) const {
    mpfr_prec_t p = std::max(std::max(re.prec(), xre.prec()),
                             std::max(im.prec(), xim.prec())) + 8;
    BigFloat dre(p), dim(p), d(kRadiusPrec);
    mpfr_sub(dre.raw(), xre.raw(), re.raw(), MPFR_RNDA);  // away: |d| not underestimated
    mpfr_sub(dim.raw(), xim.raw(), im.raw(), MPFR_RNDA);
    mpfr_hypot(d.raw(), dre.raw(), dim.raw(), MPFR_RNDU);
    return mpfr_cmp(d.raw(), rad.raw()) <= 0;
}

std::string ComplexBall::to_string() const {
    return "(" + re.to_decimal() + " + " + im.to_decimal() + "i) +/- " +
           rad.to_decimal(4);
}

ComplexBall ball_add(const ComplexBall& a, const ComplexBall& b, mpfr_prec_t prec) {
    ComplexBall r(BigFloat{prec}, BigFloat{prec}, rad_zero());
    int tr = mpfr_add(r.re.raw(), a.re.raw(), b.re.raw(), MPFR_RNDN);
    int ti = mpfr_add(r.im.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
    rad_add(r.rad, a.rad, b.rad);
    rad_add_ulp(r.rad, r.re, tr);
    rad_add_ulp(r.rad, r.im, ti);
    return r;
}

ComplexBall ball_sub(const ComplexBall& a, const ComplexBall& b, mpfr_prec_t prec) {
    ComplexBall r(BigFloat{prec}, BigFloat{prec}, rad_zero());
    int tr = mpfr_sub(r.re.raw(), a.re.raw(), b.re.raw(), MPFR_RNDN);
    int ti = mpfr_sub(r.im.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
    rad_add(r.rad, a.rad, b.rad);
    rad_add_ulp(r.rad, r.re, tr);
    rad_add_ulp(r.rad, r.im, ti);
    return r;
}

// |xy - c_a c_b| <= |c_a| rb + |c_b| ra + ra rb for x in a, y in b, plus the
// rounding error of the computed center.
ComplexBall ball_mul(const ComplexBall& a, const ComplexBall& b, mpfr_prec_t prec) {
    ComplexBall r(BigFloat{prec}, BigFloat{prec}, rad_zero());
    int tr = mpfr_fmms(r.re.raw(), a.re.raw(), b.re.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
    int ti = mpfr_fmma(r.im.raw(), a.re.raw(), b.im.raw(), a.im.raw(), b.re.raw(), MPFR_RNDN);

    BigFloat ua(kRadiusPrec), ub(kRadiusPrec), t(kRadiusPrec);
    mpfr_hypot(ua.raw(), a.re.raw(), a.im.raw(), MPFR_RNDU);
    mpfr_hypot(ub.raw(), b.re.raw(), b.im.raw(), MPFR_RNDU);
    rad_mul(t, ua, b.rad);
    mpfr_set(r.rad.raw(), t.raw(), MPFR_RNDU);
    rad_mul(t, ub, a.rad);
    rad_add_inplace(r.rad, t);
    rad_mul(t, a.rad, b.rad);
    rad_add_inplace(r.rad, t);
    rad_add_ulp(r.rad, r.re, tr);
    rad_add_ulp(r.rad, r.im, ti);
    return r;
}

// Requires 0 outside b. |x/y - ca/cb| <= (|ca/cb| rb + ra) / (|cb| - rb).
ComplexBall ball_div(const ComplexBall& a, const ComplexBall& b, mpfr_prec_t prec) {
    BigFloat blb = b.abs_lb();
    if (blb.is_zero()) throw std::domain_error("ball_div: divisor ball contains zero");

    mpfr_prec_t wp = prec + 16;
    BigFloat n2(wp), t1(wp), t2(wp);
    // |cb|^2
    mpfr_fmma(n2.raw(), b.re.raw(), b.re.raw(), b.im.raw(), b.im.raw(), MPFR_RNDN);
    ComplexBall r(BigFloat{prec}, BigFloat{prec}, rad_zero());
    // center = ca * conj(cb) / |cb|^2, each component rounded once at the end
    mpfr_fmma(t1.raw(), a.re.raw(), b.re.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
    int tr = mpfr_div(r.re.raw(), t1.raw(), n2.raw(), MPFR_RNDN);
    mpfr_fmms(t2.raw(), a.im.raw(), b.re.raw(), a.re.raw(), b.im.raw(), MPFR_RNDN);
    int ti = mpfr_div(r.im.raw(), t2.raw(), n2.raw(), MPFR_RNDN);

    (void)tr;
    (void)ti;
    // blb is already |cb| - rb rounded down, the denominator we need.
    BigFloat q(kRadiusPrec), t(kRadiusPrec);
    mpfr_hypot(q.raw(), r.re.raw(), r.im.raw(), MPFR_RNDU);  // ~|ca/cb|
    rad_mul(t, q, b.rad);
    rad_add(r.rad, t, a.rad);
    mpfr_div(r.rad.raw(), r.rad.raw(), blb.raw(), MPFR_RNDU);
    // Center rounding: a handful of correctly-rounded ops, so the relative
    // error is a few ulps of the quotient magnitude; bound |ca/cb| from
    // above and charge qmax * 2^(4-prec).
    BigFloat qmax(kRadiusPrec);
    mpfr_div(qmax.raw(), a.abs_ub().raw(), blb.raw(), MPFR_RNDU);
    mpfr_mul_2si(qmax.raw(), qmax.raw(), 4 - static_cast<long>(prec), MPFR_RNDU);
    rad_add_inplace(r.rad, qmax);
    return r;
}

ComplexBall ball_pow(const ComplexBall& a, unsigned long k, mpfr_prec_t prec) {
    if (k == 0) return ComplexBall::exact_si(1, 0, prec);
    // Repeated squaring, most significant bit first.
    int hi = 63;
    while (hi > 0 && !((k >> hi) & 1UL)) --hi;
    ComplexBall acc = a;
    for (int i = hi - 1; i >= 0; --i) {
        acc = ball_mul(acc, acc, prec);
        if ((k >> i) & 1UL) acc = ball_mul(acc, a, prec);
    }
    return acc;
}

ComplexBall ball_neg(const ComplexBall& a) {
    ComplexBall r = a;
    mpfr_neg(r.re.raw(), r.re.raw(), MPFR_RNDN);
    mpfr_neg(r.im.raw(), r.im.raw(), MPFR_RNDN);
    return r;
}

ComplexBall ball_conj(const ComplexBall& a) {
    ComplexBall r = a;
    mpfr_neg(r.im.raw(), r.im.raw(), MPFR_RNDN);
    return r;
}

ComplexBall ball_mul_ui(const ComplexBall& a, unsigned long k, mpfr_prec_t prec) {
    ComplexBall r(BigFloat{prec}, BigFloat{prec}, rad_zero());
    int tr = mpfr_mul_ui(r.re.raw(), a.re.raw(), k, MPFR_RNDN);
    int ti = mpfr_mul_ui(r.im.raw(), a.im.raw(), k, MPFR_RNDN);
    mpfr_mul_ui(r.rad.raw(), a.rad.raw(), k, MPFR_RNDU);
    rad_add_ulp(r.rad, r.re, tr);
    rad_add_ulp(r.rad, r.im, ti);
    return r;
}

ComplexBall ball_div_ui(const ComplexBall& a, unsigned long k, mpfr_prec_t prec) {
    if (k == 0) throw std::domain_error("ball_div_ui: division by zero");
    ComplexBall r(BigFloat{prec}, BigFloat{prec}, rad_zero());
    int tr = mpfr_div_ui(r.re.raw(), a.re.raw(), k, MPFR_RNDN);
    int ti = mpfr_div_ui(r.im.raw(), a.im.raw(), k, MPFR_RNDN);
    mpfr_div_ui(r.rad.raw(), a.rad.raw(), k, MPFR_RNDU);
    rad_add_ulp(r.rad, r.re, tr);
    rad_add_ulp(r.rad, r.im, ti);
    return r;
}

ComplexBall ball_mul_2si(const ComplexBall& a, long e) {
    ComplexBall r = a;
    mpfr_mul_2si(r.re.raw(), r.re.raw(), e, MPFR_RNDN);
    mpfr_mul_2si(r.im.raw(), r.im.raw(), e, MPFR_RNDN);
    mpfr_mul_2si(r.rad.raw(), r.rad.raw(), e, MPFR_RNDU);
    return r;
}

void ball_addmul(ComplexBall& acc, const ComplexBall& c, const ComplexBall& x,
                 mpfr_prec_t prec) {
    // Product center into scratch at full precision, then accumulate.
    thread_local BigFloat pre(2), pim(2), uc(kRadiusPrec), ux(kRadiusPrec), t(kRadiusPrec);
    if (pre.prec() != prec) { mpfr_set_prec(pre.raw(), prec); mpfr_set_prec(pim.raw(), prec); }

    int t1 = mpfr_fmms(pre.raw(), c.re.raw(), x.re.raw(), c.im.raw(), x.im.raw(), MPFR_RNDN);
    int t2 = mpfr_fmma(pim.raw(), c.re.raw(), x.im.raw(), c.im.raw(), x.re.raw(), MPFR_RNDN);

    mpfr_hypot(uc.raw(), c.re.raw(), c.im.raw(), MPFR_RNDU);
    mpfr_hypot(ux.raw(), x.re.raw(), x.im.raw(), MPFR_RNDU);
    rad_mul(t, uc, x.rad);
    rad_add_inplace(acc.rad, t);
    rad_mul(t, ux, c.rad);
    rad_add_inplace(acc.rad, t);
    rad_mul(t, c.rad, x.rad);
    rad_add_inplace(acc.rad, t);
    rad_add_ulp(acc.rad, pre, t1);
    rad_add_ulp(acc.rad, pim, t2);

    int t3 = mpfr_add(acc.re.raw(), acc.re.raw(), pre.raw(), MPFR_RNDN);
    int t4 = mpfr_add(acc.im.raw(), acc.im.raw(), pim.raw(), MPFR_RNDN);
    rad_add_ulp(acc.rad, acc.re, t3);
    rad_add_ulp(acc.rad, acc.im, t4);
}

}  // namespace rootclust
