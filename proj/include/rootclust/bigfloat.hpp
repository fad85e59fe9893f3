#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <string>
#include <utility>

namespace rootclust {

// Precision used for ball radii. Radii only need magnitude, so they are
// kept at a small fixed precision and always rounded upward.
inline constexpr mpfr_prec_t kRadiusPrec = 30;

/// Arbitrary-precision floating-point value (RAII wrapper over mpfr_t).
///
/// Every arithmetic operation states its rounding mode explicitly; the
/// result precision is the precision the destination was created with.
/// Values are immutable by convention once handed out of a computation.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = 53) { mpfr_init2(v_, prec); }
    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, 2);
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    static BigFloat from_si(long x, mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_set_si(r.v_, x, MPFR_RNDN);
        return r;
    }
    static BigFloat from_d(double x, mpfr_prec_t prec = 53) {
        BigFloat r(prec);
        mpfr_set_d(r.v_, x, MPFR_RNDN);
        return r;
    }
    // Rounds a rational to `prec` bits; `inexact` receives the mpfr ternary.
    static BigFloat from_q(const mpq_class& q, mpfr_prec_t prec,
                           mpfr_rnd_t rnd = MPFR_RNDN, int* inexact = nullptr) {
        BigFloat r(prec);
        int t = mpfr_set_q(r.v_, q.get_mpq_t(), rnd);
        if (inexact) *inexact = t;
        return r;
    }
    // 2^e, exact.
    static BigFloat pow2(long e, mpfr_prec_t prec = 8) {
        BigFloat r(prec);
        mpfr_set_si_2exp(r.v_, 1, e, MPFR_RNDN);
        return r;
    }
    static BigFloat zero(mpfr_prec_t prec = 8) { return from_si(0, prec); }

    bool is_zero() const { return mpfr_zero_p(v_); }
    bool is_nan() const { return mpfr_nan_p(v_); }
    bool is_finite() const { return mpfr_number_p(v_); }
    int sgn() const { return mpfr_sgn(v_); }
    double get_d() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // Exponent e with 0.5 <= |x|*2^-e < 1 (mpfr convention); only valid for
    // nonzero finite values.
    mpfr_exp_t exp2() const { return mpfr_get_exp(v_); }

    int cmp(const BigFloat& o) const { return mpfr_cmp(v_, o.v_); }
    bool operator<(const BigFloat& o) const { return cmp(o) < 0; }
    bool operator<=(const BigFloat& o) const { return cmp(o) <= 0; }
    bool operator>(const BigFloat& o) const { return cmp(o) > 0; }
    bool operator>=(const BigFloat& o) const { return cmp(o) >= 0; }

    // Exact equality of represented values (not precision-sensitive).
    bool same_value(const BigFloat& o) const {
        if (mpfr_nan_p(v_) || mpfr_nan_p(o.v_)) return false;
        return mpfr_cmp(v_, o.v_) == 0;
    }

    mpq_class to_q() const;  // exact; requires a finite value

    /// Decimal string round-trippable to the stored precision,
    /// formatted like -1.2345e-7.
    std::string to_decimal(size_t digits = 0) const;

private:
    mpfr_t v_;
};

// ---- radius helpers: fixed precision kRadiusPrec, always rounded up ----

inline BigFloat rad_zero() { return BigFloat::from_si(0, kRadiusPrec); }

inline void rad_add(BigFloat& r, const BigFloat& a, const BigFloat& b) {
    mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDU);
}
inline void rad_add_inplace(BigFloat& r, const BigFloat& a) {
    mpfr_add(r.raw(), r.raw(), a.raw(), MPFR_RNDU);
}
inline void rad_mul(BigFloat& r, const BigFloat& a, const BigFloat& b) {
    mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDU);
}

// Adds the worst-case rounding error of a just-computed center `x` (at its
// own precision) to radius `r`. `ternary` is the mpfr return value of the
// operation that produced x: zero means the result was exact and no slack
// is needed. For round-to-nearest the error is at most 2^(exp(x)-prec-... );
// we charge a full ulp, 2^(exp(x)-prec), which is safe.
inline void rad_add_ulp(BigFloat& r, const BigFloat& x, int ternary) {
    if (ternary == 0) return;
    BigFloat u(kRadiusPrec);
    if (mpfr_zero_p(x.raw()) || !mpfr_number_p(x.raw())) {
        // Rounded to zero or overflowed: no finite exponent to charge
        // against; poison the radius instead of guessing.
        mpfr_set_inf(r.raw(), 1);
        return;
    }
    mpfr_set_si_2exp(u.raw(), 1, x.exp2() - x.prec(), MPFR_RNDU);
    rad_add_inplace(r, u);
}

}  // namespace rootclust
