#include "rootclust/counting.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace rootclust {

// A root may sit exactly on the subdivision lattice, in which case every
// box that contains it has it at a corner: distance (sqrt(2)/2) w from the
// center against a disc radius of (3/4) w, ratio ~0.9428, at every depth.
// Certification needs 0.9428^(2^N) <= 0.4/m for an inside multiplicity m
// (up to d), so N must grow like log2(log d) with a sizable constant;
// fewer iterations livelock on inputs as plain as z^2 - 1.
int graeffe_iterations(int degree) {
    double d = static_cast<double>(std::max(degree, 1));
    double l = std::log2(12.0 * (2.0 + std::log2(d)));
    return std::max(4, static_cast<int>(std::ceil(l)));
}

namespace {

// How sharp the coefficient balls of an iterate are.
enum class Sharpness {
    Resolved,   // radii tiny against the largest coefficient: a failed
                // dominance check is geometric, more accuracy cannot help
    Workable,   // radii noticeable but comparisons still meaningful
    Saturated,  // radii rival the coefficients: nothing can be certified
};

// Looks for an index whose coefficient magnitude certifiably dominates
// twice the sum of all the others plus `tail` (an upper bound on the
// neglected part of the polynomial on the unit circle; zero when the
// polynomial is complete). Returns the index, or -1 with the iterate's
// sharpness in `sharp`.
int dominant_index(const DensePolynomial& s, Sharpness* sharp,
                   const BigFloat* tail = nullptr) {
    const int n = static_cast<int>(s.coeffs.size());
    std::vector<BigFloat> ub;
    ub.reserve(n);
    BigFloat total = BigFloat::from_si(0, kRadiusPrec);
    BigFloat max_ub = BigFloat::from_si(0, kRadiusPrec);
    BigFloat max_rad = BigFloat::from_si(0, kRadiusPrec);
    if (tail) rad_add_inplace(total, *tail);
    for (const auto& c : s.coeffs) {
        ub.push_back(c.abs_ub());
        if (!ub.back().is_finite()) {
            if (sharp) *sharp = Sharpness::Saturated;
            return -1;
        }
        rad_add_inplace(total, ub.back());
        if (ub.back() > max_ub) max_ub = ub.back();
        if (c.rad > max_rad) max_rad = c.rad;
    }
    if (tail && *tail > max_rad) max_rad = *tail;
    if (sharp) {
        BigFloat resolved_at{kRadiusPrec}, saturated_at{kRadiusPrec};
        mpfr_mul_2si(resolved_at.raw(), max_ub.raw(), -16, MPFR_RNDD);
        mpfr_mul_2si(saturated_at.raw(), max_ub.raw(), -10, MPFR_RNDD);
        if (max_ub.is_zero())
            *sharp = Sharpness::Saturated;
        else if (max_rad <= resolved_at)
            *sharp = Sharpness::Resolved;
        else if (max_rad <= saturated_at)
            *sharp = Sharpness::Workable;
        else
            *sharp = Sharpness::Saturated;
    }
    BigFloat rest{kRadiusPrec}, twice{kRadiusPrec};
    for (int k = 0; k < n; ++k) {
        BigFloat lb = s.coeffs[k].abs_lb();
        if (lb.is_zero()) continue;
        mpfr_sub(rest.raw(), total.raw(), ub[k].raw(), MPFR_RNDU);
        mpfr_mul_2si(twice.raw(), rest.raw(), 1, MPFR_RNDU);
        if (lb >= twice) return k;
    }
    return -1;
}

// Largest center exponent across coefficients; ill-scaled inputs need the
// working precision to carry their magnitude, or rounding alone would
// destroy the oracle's absolute accuracy.
long max_coeff_exp(const DensePolynomial& p) {
    long e = 0;
    for (const auto& c : p.coeffs) {
        if (!c.re.is_zero() && c.re.is_finite()) e = std::max<long>(e, c.re.exp2());
        if (!c.im.is_zero() && c.im.is_finite()) e = std::max<long>(e, c.im.exp2());
    }
    return e;
}

enum class TruncOutcome { Decided, GeometricFail, NeedsAccuracy, Inapplicable };

// Counting on a small disc via a truncated recentering: only the first
// J+1 Taylor coefficients of P(c + r z) are computed (J+1 synthetic
// division passes, O(J d) instead of O(d^2)) and everything above degree J
// is carried as a scalar bound T on its size over the unit circle,
// obtained from a Cauchy estimate on the coefficient-magnitude majorant.
// A dominance certificate checked against sum + T stays valid for the full
// polynomial (on |z|=1 the neglected part cannot bridge the gap), and the
// root-squaring step maps the bound to 2 M T + T^2. Far from the deep-box
// regime the tail bound is useless and the caller falls back to the full
// recentering.
TruncOutcome truncated_count(const DensePolynomial& approx, const ComplexBall& center,
                             const ComplexBall& radius, mpfr_prec_t wp, int n_graeffe,
                             int J, int* out) {
    const int d = approx.degree();
    J = std::min(J, d - 1);
    if (J < 1 || d < 24) return TruncOutcome::Inapplicable;

    // Taylor prefix at the center: J+1 synthetic-division passes.
    DensePolynomial work = approx;  // mutated in place at wp
    for (auto& cb : work.coeffs) {
        ComplexBall moved(BigFloat{wp}, BigFloat{wp}, cb.rad);
        int tr = mpfr_set(moved.re.raw(), cb.re.raw(), MPFR_RNDN);
        int ti = mpfr_set(moved.im.raw(), cb.im.raw(), MPFR_RNDN);
        rad_add_ulp(moved.rad, moved.re, tr);
        rad_add_ulp(moved.rad, moved.im, ti);
        cb = std::move(moved);
    }
    for (int pass = 0; pass <= J; ++pass)
        for (int j = d - 1; j >= pass; --j)
            ball_addmul(work.coeffs[j], center, work.coeffs[j + 1], wp);

    DensePolynomial s;
    s.coeffs.reserve(J + 1);
    ComplexBall rpow = ComplexBall::exact_si(1, 0, wp);
    for (int j = 0; j <= J; ++j) {
        s.coeffs.push_back(ball_mul(work.coeffs[j], rpow, wp));
        rpow = ball_mul(rpow, radius, wp);
    }

    // Tail bound: for rho = r 2^e, sum_{j>J} |s_j| <= 2 A(|c| + rho) 2^{-e(J+1)}
    // with A the majorant of the coefficients. Take the best exponent.
    BigFloat cmag = center.abs_ub();
    BigFloat rmag = radius.abs_ub();
    BigFloat tail{kRadiusPrec};
    mpfr_set_inf(tail.raw(), 1);
    for (long e : {12L, 24L, 48L, 96L}) {
        BigFloat rho{kRadiusPrec}, at{kRadiusPrec}, acc{kRadiusPrec};
        mpfr_mul_2si(rho.raw(), rmag.raw(), e, MPFR_RNDU);
        mpfr_add(at.raw(), cmag.raw(), rho.raw(), MPFR_RNDU);
        mpfr_set_si(acc.raw(), 0, MPFR_RNDN);
        for (int i = d; i >= 0; --i) {
            mpfr_mul(acc.raw(), acc.raw(), at.raw(), MPFR_RNDU);
            rad_add_inplace(acc, approx.coeffs[i].abs_ub());
        }
        mpfr_mul_2si(acc.raw(), acc.raw(), -e * (J + 1) + 1, MPFR_RNDU);
        if (acc < tail) tail = acc;
        if (!acc.is_finite()) break;  // larger rho only overflows harder
    }
    if (!tail.is_finite()) return TruncOutcome::Inapplicable;

    // Applicability: the tail must sit far below the prefix.
    BigFloat prefix_max = BigFloat::from_si(0, kRadiusPrec);
    for (const auto& cb : s.coeffs) {
        BigFloat u = cb.abs_ub();
        if (u > prefix_max) prefix_max = u;
    }
    {
        BigFloat gate{kRadiusPrec};
        mpfr_mul_2si(gate.raw(), prefix_max.raw(), -24, MPFR_RNDD);
        if (!(tail <= gate)) return TruncOutcome::Inapplicable;
    }

    Sharpness sharp = Sharpness::Saturated;
    bool all_sharp = true;
    for (int it = 0;; ++it) {
        int k = dominant_index(s, &sharp, &tail);
        if (k >= 0) {
            *out = k;
            return TruncOutcome::Decided;
        }
        if (sharp != Sharpness::Resolved) all_sharp = false;
        if (it == n_graeffe)
            return all_sharp ? TruncOutcome::GeometricFail : TruncOutcome::NeedsAccuracy;
        if (sharp == Sharpness::Saturated) return TruncOutcome::NeedsAccuracy;
        // advance the tail through the squaring: T' = 2 M T + T^2
        BigFloat m_circ = BigFloat::from_si(0, kRadiusPrec);
        for (const auto& cb : s.coeffs) rad_add_inplace(m_circ, cb.abs_ub());
        BigFloat t2{kRadiusPrec};
        mpfr_mul(t2.raw(), tail.raw(), tail.raw(), MPFR_RNDU);
        mpfr_mul(tail.raw(), tail.raw(), m_circ.raw(), MPFR_RNDU);
        mpfr_mul_2si(tail.raw(), tail.raw(), 1, MPFR_RNDU);
        rad_add_inplace(tail, t2);
        s = graeffe(s, wp);
        // tail growing past the coefficients: the full recentering may still
        // certify where the truncation cannot
        BigFloat cap = BigFloat::from_si(0, kRadiusPrec);
        for (const auto& cb : s.coeffs) {
            BigFloat u = cb.abs_ub();
            if (u > cap) cap = u;
        }
        mpfr_mul_2si(cap.raw(), cap.raw(), -20, MPFR_RNDD);
        if (!(tail <= cap)) return TruncOutcome::Inapplicable;
    }
}

}  // namespace

CountResult pellet_test(const OraclePolynomial& P, const Disc& disc, int L0, int Lmax,
                        SolveStats* stats) {
    if (L0 < 1 || L0 > Lmax) throw std::domain_error("pellet_test: need 1 <= L0 <= Lmax");
    const int d = P.degree();
    const int n_graeffe = graeffe_iterations(d);
    if (stats) {
        ++stats->counting_calls;
        stats->degree_weighted_cost += d;
    }
    for (long L = L0; L <= Lmax; L *= 2) {
        DensePolynomial approx = P.approximate(static_cast<int>(L));
        const mpfr_prec_t wp =
            static_cast<mpfr_prec_t>(L + 64 + std::max<long>(0, max_coeff_exp(approx)));
        ComplexBall center = ComplexBall::from_q(disc.cre, disc.cim, wp);
        ComplexBall radius = ComplexBall::from_q(disc.radius, mpq_class(0), wp);

        // Exclusion pre-test: one ball evaluation over the whole disc. Far
        // from the roots this certifies emptiness at a fraction of the cost.
        {
            ComplexBall whole = center;
            rad_add_inplace(whole.rad, radius.abs_ub());
            if (!evaluate(approx, whole, wp).contains_zero()) return CountResult{0};
        }

        // Cheap truncated recentering first; it decides most small discs.
        {
            int k = -1;
            TruncOutcome oc = truncated_count(approx, center, radius, wp, n_graeffe, 12, &k);
            if (oc == TruncOutcome::Decided) return CountResult{k};
            if (oc == TruncOutcome::GeometricFail) return CountResult{-1};
            if (oc == TruncOutcome::NeedsAccuracy) continue;  // next rung
        }

        DensePolynomial s = taylor_shift_scale(approx, center, radius, wp);
        Sharpness sharp = Sharpness::Saturated;
        bool all_sharp = true;
        for (int it = 0;; ++it) {
            int k = dominant_index(s, &sharp);
            if (k >= 0) return CountResult{k};
            if (sharp != Sharpness::Resolved) all_sharp = false;
            // Squaring fuzzy balls cannot recover a certificate; move on to
            // the next accuracy rung instead of iterating noise.
            if (it == n_graeffe || sharp == Sharpness::Saturated) break;
            s = graeffe(s, wp);
        }
        // Every iterate was sharp and none had a dominant coefficient: the
        // ambiguity is geometric, escalating L cannot fix it.
        if (all_sharp) break;
    }
    return CountResult{-1};
}

CountResult confirm_disc(const OraclePolynomial& P, const Disc& disc, int L0, int Lmax,
                         SolveStats* stats) {
    CountResult inner = pellet_test(P, disc, L0, Lmax, stats);
    if (inner.empty() || inner.undecided()) return inner;
    CountResult outer = pellet_test(P, scale_disc(disc, 3), L0, Lmax, stats);
    if (outer.value == inner.value) return inner;
    return CountResult{-1};
}

CountResult count_with_confirmation(const OraclePolynomial& P, const Box& B, int L0,
                                    int Lmax, SolveStats* stats) {
    return confirm_disc(P, containing_disc(B), L0, Lmax, stats);
}

}  // namespace rootclust
