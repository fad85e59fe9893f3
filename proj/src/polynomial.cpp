#include "rootclust/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace rootclust {

int DensePolynomial::effective_degree() const {
    for (int i = degree(); i >= 0; --i)
        if (!coeffs[i].contains_zero()) return i;
    return -1;
}

int DensePolynomial::accuracy_bits() const {
    bool all_exact = true;
    mpfr_exp_t worst = 0;
    for (const auto& c : coeffs) {
        if (c.rad.is_zero()) continue;
        if (!c.rad.is_finite()) return -kExactBits;
        worst = all_exact ? c.rad.exp2() : std::max(worst, c.rad.exp2());
        all_exact = false;
    }
    if (all_exact) return kExactBits;
    // rad < 2^exp2, so radii <= 2^-L holds for L = -exp2.
    long L = -static_cast<long>(worst);
    if (L > kExactBits) return kExactBits;
    if (L < -kExactBits) return -kExactBits;
    return static_cast<int>(L);
}

DensePolynomial DensePolynomial::zero(int degree, mpfr_prec_t prec) {
    DensePolynomial p;
    p.coeffs.reserve(degree + 1);
    for (int i = 0; i <= degree; ++i) p.coeffs.push_back(ComplexBall::exact_si(0, 0, prec));
    return p;
}

DensePolynomial derivative(const DensePolynomial& p, mpfr_prec_t prec) {
    DensePolynomial d;
    if (p.degree() <= 0) {
        d.coeffs.push_back(ComplexBall::exact_si(0, 0, prec));
        return d;
    }
    d.coeffs.reserve(p.degree());
    for (int i = 1; i <= p.degree(); ++i)
        d.coeffs.push_back(ball_mul_ui(p.coeffs[i], static_cast<unsigned long>(i), prec));
    return d;
}

ComplexBall evaluate(const DensePolynomial& p, const ComplexBall& z, mpfr_prec_t prec) {
    ComplexBall acc = ComplexBall::exact_si(0, 0, prec);
    for (int i = p.degree(); i >= 0; --i) {
        acc = ball_mul(acc, z, prec);
        acc = ball_add(acc, p.coeffs[i], prec);
    }
    return acc;
}

void evaluate_center(const DensePolynomial& p, const BigFloat& zre, const BigFloat& zim,
                     BigFloat& out_re, BigFloat& out_im, mpfr_prec_t prec) {
    BigFloat ar(prec), ai(prec), t(prec);
    mpfr_set_si(ar.raw(), 0, MPFR_RNDN);
    mpfr_set_si(ai.raw(), 0, MPFR_RNDN);
    for (int i = p.degree(); i >= 0; --i) {
        // (ar, ai) = (ar, ai) * z + c_i
        mpfr_fmms(t.raw(), ar.raw(), zre.raw(), ai.raw(), zim.raw(), MPFR_RNDN);
        mpfr_fmma(ai.raw(), ar.raw(), zim.raw(), ai.raw(), zre.raw(), MPFR_RNDN);
        mpfr_swap(ar.raw(), t.raw());
        mpfr_add(ar.raw(), ar.raw(), p.coeffs[i].re.raw(), MPFR_RNDN);
        mpfr_add(ai.raw(), ai.raw(), p.coeffs[i].im.raw(), MPFR_RNDN);
    }
    out_re = std::move(ar);
    out_im = std::move(ai);
}

namespace {

// acc += c * x with the operand magnitudes supplied by the caller:
// c_mag >= |center(c)| + rad(c) and x_mag >= |center(x)|, both upward.
// The enclosure uses |c||rx| + |x||rc| + rc rx <= c_mag * rx + x_mag * rc.
void addmul_cached(ComplexBall& acc, const ComplexBall& c, const BigFloat& c_mag,
                   const ComplexBall& x, const BigFloat& x_mag, mpfr_prec_t prec,
                   BigFloat& pre, BigFloat& pim, BigFloat& t1, BigFloat& t2) {
    if (pre.prec() != prec) {
        mpfr_set_prec(pre.raw(), prec);
        mpfr_set_prec(pim.raw(), prec);
    }
    int k1 = mpfr_fmms(pre.raw(), c.re.raw(), x.re.raw(), c.im.raw(), x.im.raw(), MPFR_RNDN);
    int k2 = mpfr_fmma(pim.raw(), c.re.raw(), x.im.raw(), c.im.raw(), x.re.raw(), MPFR_RNDN);
    mpfr_mul(t1.raw(), c_mag.raw(), x.rad.raw(), MPFR_RNDU);
    mpfr_mul(t2.raw(), x_mag.raw(), c.rad.raw(), MPFR_RNDU);
    mpfr_add(t1.raw(), t1.raw(), t2.raw(), MPFR_RNDU);
    mpfr_add(acc.rad.raw(), acc.rad.raw(), t1.raw(), MPFR_RNDU);
    rad_add_ulp(acc.rad, pre, k1);
    rad_add_ulp(acc.rad, pim, k2);
    int k3 = mpfr_add(acc.re.raw(), acc.re.raw(), pre.raw(), MPFR_RNDN);
    int k4 = mpfr_add(acc.im.raw(), acc.im.raw(), pim.raw(), MPFR_RNDN);
    rad_add_ulp(acc.rad, acc.re, k3);
    rad_add_ulp(acc.rad, acc.im, k4);
}

// |center| + rad, upward at radius precision.
void mag_full(BigFloat& out, const ComplexBall& b) {
    mpfr_hypot(out.raw(), b.re.raw(), b.im.raw(), MPFR_RNDU);
    mpfr_add(out.raw(), out.raw(), b.rad.raw(), MPFR_RNDU);
}

}  // namespace

DensePolynomial poly_mul(const DensePolynomial& a, const DensePolynomial& b,
                         mpfr_prec_t prec) {
    DensePolynomial r = DensePolynomial::zero(a.degree() + b.degree(), prec);
    std::vector<BigFloat> amag(a.coeffs.size(), BigFloat{kRadiusPrec});
    std::vector<BigFloat> bmag(b.coeffs.size(), BigFloat{kRadiusPrec});
    for (size_t i = 0; i < a.coeffs.size(); ++i) mag_full(amag[i], a.coeffs[i]);
    for (size_t j = 0; j < b.coeffs.size(); ++j)
        mpfr_hypot(bmag[j].raw(), b.coeffs[j].re.raw(), b.coeffs[j].im.raw(), MPFR_RNDU);
    BigFloat pre{prec}, pim{prec}, t1{kRadiusPrec}, t2{kRadiusPrec};
    for (int i = 0; i <= a.degree(); ++i)
        for (int j = 0; j <= b.degree(); ++j)
            addmul_cached(r.coeffs[i + j], a.coeffs[i], amag[i], b.coeffs[j], bmag[j],
                          prec, pre, pim, t1, t2);
    return r;
}

DensePolynomial taylor_shift_scale(const DensePolynomial& p, const ComplexBall& c,
                                   const BigFloat& r, mpfr_prec_t prec) {
    if (r.sgn() <= 0) throw std::domain_error("taylor_shift_scale: r must be positive");
    ComplexBall rb(BigFloat{prec}, BigFloat::from_si(0, prec), rad_zero());
    int tr = mpfr_set(rb.re.raw(), r.raw(), MPFR_RNDN);
    rad_add_ulp(rb.rad, rb.re, tr);
    return taylor_shift_scale(p, c, rb, prec);
}

DensePolynomial taylor_shift_scale(const DensePolynomial& p, const ComplexBall& c,
                                   const ComplexBall& r, mpfr_prec_t prec) {
    if (r.re.sgn() <= 0 || !r.im.is_zero())
        throw std::domain_error("taylor_shift_scale: r must be positive real");
    const int d = p.degree();
    // Shift first: u = P(z + c), synthetic division in place.
    DensePolynomial u = DensePolynomial::zero(d, prec);
    std::vector<BigFloat> umag(d + 1, BigFloat{kRadiusPrec});
    for (int i = 0; i <= d; ++i) {
        int tr = mpfr_set(u.coeffs[i].re.raw(), p.coeffs[i].re.raw(), MPFR_RNDN);
        int ti = mpfr_set(u.coeffs[i].im.raw(), p.coeffs[i].im.raw(), MPFR_RNDN);
        mpfr_set(u.coeffs[i].rad.raw(), p.coeffs[i].rad.raw(), MPFR_RNDU);
        rad_add_ulp(u.coeffs[i].rad, u.coeffs[i].re, tr);
        rad_add_ulp(u.coeffs[i].rad, u.coeffs[i].im, ti);
        mpfr_hypot(umag[i].raw(), u.coeffs[i].re.raw(), u.coeffs[i].im.raw(), MPFR_RNDU);
    }
    BigFloat cmag{kRadiusPrec}, pre{prec}, pim{prec}, t1{kRadiusPrec}, t2{kRadiusPrec};
    mag_full(cmag, c);
    for (int i = 0; i < d; ++i)
        for (int j = d - 1; j >= i; --j) {
            addmul_cached(u.coeffs[j], c, cmag, u.coeffs[j + 1], umag[j + 1], prec, pre,
                          pim, t1, t2);
            mpfr_hypot(umag[j].raw(), u.coeffs[j].re.raw(), u.coeffs[j].im.raw(), MPFR_RNDU);
        }
    // Then scale: coeff_k *= r^k.
    ComplexBall rk = ComplexBall::exact_si(1, 0, prec);
    for (int k = 1; k <= d; ++k) {
        rk = ball_mul(rk, r, prec);
        u.coeffs[k] = ball_mul(u.coeffs[k], rk, prec);
    }
    return u;
}

DensePolynomial graeffe(const DensePolynomial& p, mpfr_prec_t prec) {
    const int d = p.degree();
    const int de = d / 2;            // degree of even part
    const int dodd = (d - 1) / 2;    // degree of odd part (for d >= 1)
    DensePolynomial even, odd;
    for (int i = 0; i <= de; ++i) even.coeffs.push_back(p.coeffs[2 * i]);
    if (d >= 1)
        for (int i = 0; i <= dodd; ++i) odd.coeffs.push_back(p.coeffs[2 * i + 1]);

    DensePolynomial e2 = poly_mul(even, even, prec);
    DensePolynomial g = DensePolynomial::zero(d, prec);
    for (int i = 0; i <= std::min(d, e2.degree()); ++i) g.coeffs[i] = e2.coeffs[i];
    if (d >= 1) {
        DensePolynomial o2 = poly_mul(odd, odd, prec);
        for (int i = 0; i <= o2.degree() && i + 1 <= d; ++i)
            g.coeffs[i + 1] = ball_sub(g.coeffs[i + 1], o2.coeffs[i], prec);
    }
    if (d % 2 == 1)
        for (auto& cb : g.coeffs) cb = ball_neg(cb);
    return g;
}

bool RationalPolynomial::is_real() const {
    for (const auto& [re, im] : coeffs)
        if (im != 0) return false;
    return true;
}

std::pair<mpq_class, mpq_class> RationalPolynomial::evaluate(const mpq_class& re,
                                                             const mpq_class& im) const {
    mpq_class ar = 0, ai = 0;
    for (int i = degree(); i >= 0; --i) {
        mpq_class nr = ar * re - ai * im + coeffs[i].first;
        mpq_class ni = ar * im + ai * re + coeffs[i].second;
        ar = nr;
        ai = ni;
    }
    return {ar, ai};
}

DensePolynomial RationalPolynomial::to_balls(mpfr_prec_t prec) const {
    DensePolynomial p;
    p.coeffs.reserve(coeffs.size());
    for (const auto& [re, im] : coeffs)
        p.coeffs.push_back(ComplexBall::from_q(re, im, prec));
    return p;
}

RationalPolynomial RationalPolynomial::from_real(std::vector<mpq_class> re) {
    RationalPolynomial p;
    p.coeffs.reserve(re.size());
    for (auto& q : re) p.coeffs.emplace_back(std::move(q), mpq_class(0));
    return p;
}

RationalPolynomial rational_mul(const RationalPolynomial& a, const RationalPolynomial& b) {
    RationalPolynomial r;
    r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, {mpq_class(0), mpq_class(0)});
    for (size_t i = 0; i < a.coeffs.size(); ++i)
        for (size_t j = 0; j < b.coeffs.size(); ++j) {
            r.coeffs[i + j].first +=
                a.coeffs[i].first * b.coeffs[j].first - a.coeffs[i].second * b.coeffs[j].second;
            r.coeffs[i + j].second +=
                a.coeffs[i].first * b.coeffs[j].second + a.coeffs[i].second * b.coeffs[j].first;
        }
    return r;
}

DensePolynomial OraclePolynomial::approximate(int L) const {
    if (L < 1) throw std::domain_error("OraclePolynomial::approximate: L must be >= 1");
    std::lock_guard<std::mutex> lock(mu_);
    if (best_ && best_bits_ >= L) return *best_;
    DensePolynomial p = compute(L);
    if (p.accuracy_bits() < L)
        throw std::logic_error("oracle produced a worse approximation than requested");
    best_ = p;
    best_bits_ = p.accuracy_bits();
    return p;
}

DensePolynomial RationalOracle::compute(int L) const {
    // Per-coefficient precision: enough leading bits that the absolute
    // rounding error 2^(exp-prec) drops below 2^-L.
    DensePolynomial p;
    p.coeffs.reserve(p_.coeffs.size());
    for (const auto& [re, im] : p_.coeffs) {
        long bits = 0;
        for (const mpq_class* q : {&re, &im}) {
            if (*q == 0) continue;
            long nb = static_cast<long>(mpz_sizeinbase(q->get_num().get_mpz_t(), 2));
            long db = static_cast<long>(mpz_sizeinbase(q->get_den().get_mpz_t(), 2));
            bits = std::max(bits, nb - db + 2);
        }
        mpfr_prec_t prec = static_cast<mpfr_prec_t>(std::max<long>(64, bits + L + 8));
        p.coeffs.push_back(ComplexBall::from_q(re, im, prec));
    }
    return p;
}

}  // namespace rootclust
