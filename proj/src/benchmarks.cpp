#include "rootclust/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace rootclust {

namespace {

std::vector<mpq_class>& bernoulli_cache() {
    static std::vector<mpq_class> cache{mpq_class(1)};  // b_0
    return cache;
}
std::mutex bernoulli_mu;

}  // namespace

mpq_class bernoulli_number(int n) {
    if (n < 0) throw std::domain_error("bernoulli_number: n >= 0 required");
    std::lock_guard<std::mutex> lock(bernoulli_mu);
    auto& cache = bernoulli_cache();
    // b_m = -1/(m+1) * sum_{j<m} C(m+1, j) b_j
    while (static_cast<int>(cache.size()) <= n) {
        int m = static_cast<int>(cache.size());
        mpq_class s = 0;
        mpz_class binom;
        for (int j = 0; j < m; ++j) {
            mpz_bin_uiui(binom.get_mpz_t(), m + 1, j);
            s += binom * cache[j];
        }
        cache.push_back(mpq_class(-s / (m + 1)));
    }
    return cache[n];
}

RationalPolynomial bernoulli(int d) {
    if (d < 1) throw std::domain_error("bernoulli: d >= 1 required");
    std::vector<mpq_class> c(d + 1);
    mpz_class binom;
    for (int k = 0; k <= d; ++k) {
        mpz_bin_uiui(binom.get_mpz_t(), d, k);
        c[k] = binom * bernoulli_number(d - k);
    }
    return RationalPolynomial::from_real(std::move(c));
}

RationalPolynomial mignotte(int d, int a) {
    if (d < 3) throw std::domain_error("mignotte: d >= 3 required");
    if (a < 1) throw std::domain_error("mignotte: a >= 1 required");
    // z^d - 2 (2^a z - 1)^2 = z^d - 2^(2a+1) z^2 + 2^(a+2) z - 2
    std::vector<mpq_class> c(d + 1, mpq_class(0));
    mpz_class p;
    c[0] = -2;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(a) + 2);
    c[1] = mpq_class(p);
    mpz_ui_pow_ui(p.get_mpz_t(), 2, 2 * static_cast<unsigned long>(a) + 1);
    c[2] -= mpq_class(p);
    c[d] += 1;
    return RationalPolynomial::from_real(std::move(c));
}

RationalPolynomial mandelbrot(int d, bool* warned) {
    if (d < 1) throw std::domain_error("mandelbrot: d >= 1 required");
    int k = 0;
    while ((1L << (k + 1)) - 1 <= d) ++k;  // k = floor(log2(d+1))
    if (warned) *warned = ((1L << k) - 1 != d);
    RationalPolynomial p = RationalPolynomial::from_real({mpq_class(1)});  // P_0
    RationalPolynomial z = RationalPolynomial::from_real({mpq_class(0), mpq_class(1)});
    for (int i = 0; i < k; ++i) {
        RationalPolynomial sq = rational_mul(p, p);
        p = rational_mul(z, sq);
        p.coeffs[0].first += 1;
    }
    return p;
}

DensePolynomial spiral(int d, int L) {
    if (d < 1) throw std::domain_error("spiral: d >= 1 required");
    if (L < 1) throw std::domain_error("spiral: L >= 1 required");
    for (mpfr_prec_t wp = std::max<long>(64, L + d + 64);; wp *= 2) {
        BigFloat pi{wp};
        int tpi = mpfr_const_pi(pi.raw(), MPFR_RNDN);
        ComplexBall pib(std::move(pi), BigFloat::from_si(0, wp), rad_zero());
        rad_add_ulp(pib.rad, pib.re, tpi);

        DensePolynomial prod;
        prod.coeffs.push_back(ComplexBall::exact_si(1, 0, wp));
        for (int k = 1; k <= d; ++k) {
            // theta = 4 k pi / d with tracked error
            ComplexBall theta = ball_div_ui(ball_mul_ui(pib, 4UL * k, wp),
                                            static_cast<unsigned long>(d), wp);
            // sin/cos are 1-Lipschitz: charge theta's radius plus an ulp each
            BigFloat s{wp}, c{wp};
            int tsc = mpfr_sin_cos(s.raw(), c.raw(), theta.re.raw(), MPFR_RNDN);
            ComplexBall dir(std::move(c), std::move(s), rad_zero());
            rad_add_inplace(dir.rad, theta.rad);
            rad_add_ulp(dir.rad, dir.re, tsc ? 1 : 0);
            rad_add_ulp(dir.rad, dir.im, tsc ? 1 : 0);
            ComplexBall scale = ComplexBall::from_q(mpq_class(k, d), mpq_class(0), wp);
            ComplexBall root = ball_mul(dir, scale, wp);
            DensePolynomial lin;
            lin.coeffs.push_back(ball_neg(root));
            lin.coeffs.push_back(ComplexBall::exact_si(1, 0, wp));
            prod = poly_mul(prod, lin, wp);
        }
        if (prod.accuracy_bits() >= L) return prod;
    }
}

std::unique_ptr<OraclePolynomial> spiral_oracle(int d) {
    return std::make_unique<FunctionOracle>(d, [d](int L) { return spiral(d, L); });
}

namespace {

struct CPt {
    BigFloat re, im;
};

void cdiv(BigFloat& qr, BigFloat& qi, const BigFloat& ar, const BigFloat& ai,
          const BigFloat& br, const BigFloat& bi, mpfr_prec_t p) {
    BigFloat n2{p}, t{p};
    mpfr_fmma(n2.raw(), br.raw(), br.raw(), bi.raw(), bi.raw(), MPFR_RNDN);
    mpfr_fmma(t.raw(), ar.raw(), br.raw(), ai.raw(), bi.raw(), MPFR_RNDN);
    mpfr_div(qr.raw(), t.raw(), n2.raw(), MPFR_RNDN);
    mpfr_fmms(t.raw(), ai.raw(), br.raw(), ar.raw(), bi.raw(), MPFR_RNDN);
    mpfr_div(qi.raw(), t.raw(), n2.raw(), MPFR_RNDN);
}

}  // namespace

std::vector<RootEstimate> oracle_roots(const DensePolynomial& p, mpfr_prec_t prec) {
    const int d = p.degree();
    if (d > 64) throw std::domain_error("oracle_roots: degree > 64 not supported");
    if (d <= 0) return {};
    if (p.coeffs[d].contains_zero())
        throw std::invalid_argument("oracle_roots: leading coefficient must exclude zero");

    // Fujiwara-style start radius: 2 max_k |a_{d-k}/a_d|^(1/k), computed on
    // exponents so ill-scaled coefficients cannot blow it up.
    double lead_exp = static_cast<double>(p.coeffs[d].abs_lb().exp2());
    double r0 = 0.0;
    for (int i = 0; i < d; ++i) {
        BigFloat ub = p.coeffs[i].abs_ub();
        if (ub.is_zero()) continue;
        double e = (static_cast<double>(ub.exp2()) - lead_exp) / (d - i);
        r0 = std::max(r0, std::exp2(e));
    }
    r0 = 2.0 * std::max(r0, 0.5);

    std::vector<CPt> z;
    z.reserve(d);
    for (int j = 0; j < d; ++j) {
        double ang = 6.283185307179586 * j / d + 0.397;
        // start just outside the root bound; the ring is slightly uneven to
        // break symmetric stalemates
        double rr = 1.05 * r0 * (1.0 + 0.05 * ((j * 7919) % 13) / 13.0);
        z.push_back({BigFloat::from_d(rr * std::cos(ang), prec),
                     BigFloat::from_d(rr * std::sin(ang), prec)});
    }

    DensePolynomial dp = derivative(p, prec);
    BigFloat stop = BigFloat::pow2(-static_cast<long>(prec) + 8, 32);
    BigFloat one = BigFloat::from_si(1, 32), zero_ = BigFloat::from_si(0, 32);
    const int maxiter = 200 + 4 * static_cast<int>(prec);
    BigFloat pr{prec}, pi_{prec}, dr{prec}, di{prec}, nr{prec}, ni{prec};
    BigFloat sr{prec}, si{prec}, tr{prec}, ti{prec}, wr{prec}, wi{prec};
    BigFloat best_maxw{32};
    mpfr_set_inf(best_maxw.raw(), 1);
    int stagnant = 0;
    for (int iter = 0; iter < maxiter; ++iter) {
        BigFloat maxw = BigFloat::from_si(0, 32);
        for (int i = 0; i < d; ++i) {
            evaluate_center(p, z[i].re, z[i].im, pr, pi_, prec);
            if (mpfr_zero_p(pr.raw()) && mpfr_zero_p(pi_.raw())) continue;
            evaluate_center(dp, z[i].re, z[i].im, dr, di, prec);
            if (mpfr_zero_p(dr.raw()) && mpfr_zero_p(di.raw())) {
                mpfr_nextabove(z[i].re.raw());  // nudge off a critical point
                continue;
            }
            cdiv(nr, ni, pr, pi_, dr, di, prec);  // Newton correction
            // Aberth repulsion: S = sum_{j != i} 1/(z_i - z_j)
            mpfr_set_si(sr.raw(), 0, MPFR_RNDN);
            mpfr_set_si(si.raw(), 0, MPFR_RNDN);
            for (int j = 0; j < d; ++j) {
                if (j == i) continue;
                mpfr_sub(tr.raw(), z[i].re.raw(), z[j].re.raw(), MPFR_RNDN);
                mpfr_sub(ti.raw(), z[i].im.raw(), z[j].im.raw(), MPFR_RNDN);
                if (mpfr_zero_p(tr.raw()) && mpfr_zero_p(ti.raw())) {
                    mpfr_nextabove(z[i].re.raw());
                    mpfr_sub(tr.raw(), z[i].re.raw(), z[j].re.raw(), MPFR_RNDN);
                }
                cdiv(wr, wi, one, zero_, tr, ti, prec);
                mpfr_add(sr.raw(), sr.raw(), wr.raw(), MPFR_RNDN);
                mpfr_add(si.raw(), si.raw(), wi.raw(), MPFR_RNDN);
            }
            // w = N / (1 - N S)
            mpfr_fmms(tr.raw(), nr.raw(), sr.raw(), ni.raw(), si.raw(), MPFR_RNDN);
            mpfr_fmma(ti.raw(), nr.raw(), si.raw(), ni.raw(), sr.raw(), MPFR_RNDN);
            mpfr_si_sub(tr.raw(), 1, tr.raw(), MPFR_RNDN);
            mpfr_neg(ti.raw(), ti.raw(), MPFR_RNDN);
            if (mpfr_zero_p(tr.raw()) && mpfr_zero_p(ti.raw())) {
                mpfr_set(wr.raw(), nr.raw(), MPFR_RNDN);
                mpfr_set(wi.raw(), ni.raw(), MPFR_RNDN);
            } else {
                cdiv(wr, wi, nr, ni, tr, ti, prec);
            }
            mpfr_sub(z[i].re.raw(), z[i].re.raw(), wr.raw(), MPFR_RNDN);
            mpfr_sub(z[i].im.raw(), z[i].im.raw(), wi.raw(), MPFR_RNDN);
            BigFloat aw{32};
            mpfr_hypot(aw.raw(), wr.raw(), wi.raw(), MPFR_RNDU);
            if (aw > maxw) maxw = aw;
        }
        if (maxw < stop) break;
        // corrections hitting the rounding floor will not improve further
        BigFloat improved{32};
        mpfr_mul_2si(improved.raw(), best_maxw.raw(), -1, MPFR_RNDN);
        if (maxw < improved) {
            best_maxw = maxw;
            stagnant = 0;
        } else if (++stagnant > 2 * d + 50) {
            break;
        }
    }

    // A-posteriori Weierstrass inclusion discs, computed rigorously with
    // ball arithmetic: all roots lie in the union of D(z_i, d |W_i|), and a
    // connected component made of k discs holds exactly k roots.
    std::vector<BigFloat> rad;
    rad.reserve(d);
    for (int i = 0; i < d; ++i) {
        ComplexBall zi = ComplexBall::exact(z[i].re, z[i].im);
        ComplexBall num = evaluate(p, zi, prec);
        ComplexBall den = p.coeffs[d];
        for (int j = 0; j < d; ++j) {
            if (j == i) continue;
            ComplexBall diff = ball_sub(zi, ComplexBall::exact(z[j].re, z[j].im), prec);
            den = ball_mul(den, diff, prec);
        }
        if (den.contains_zero())
            throw std::runtime_error("oracle_roots: coincident approximations");
        ComplexBall w = ball_div(num, den, prec);
        BigFloat r{kRadiusPrec};
        mpfr_mul_ui(r.raw(), w.abs_ub().raw(), static_cast<unsigned long>(d), MPFR_RNDU);
        rad.push_back(std::move(r));
    }

    // Convergence gate: every inclusion radius must have become small.
    BigFloat gate = BigFloat::pow2(-static_cast<long>(prec) / 4, 32);
    for (const BigFloat& r : rad)
        if (!(r < gate)) throw std::runtime_error("oracle_roots: did not converge");

    // Merge overlapping discs (union-find; the overlap test errs toward
    // merging, which keeps the per-component count statement valid).
    std::vector<int> parent(d);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            BigFloat dre{prec}, dim{prec}, dist{kRadiusPrec}, s{kRadiusPrec};
            mpfr_sub(dre.raw(), z[i].re.raw(), z[j].re.raw(), MPFR_RNDN);
            mpfr_sub(dim.raw(), z[i].im.raw(), z[j].im.raw(), MPFR_RNDN);
            mpfr_hypot(dist.raw(), dre.raw(), dim.raw(), MPFR_RNDD);
            mpfr_add(s.raw(), rad[i].raw(), rad[j].raw(), MPFR_RNDU);
            if (mpfr_cmp(dist.raw(), s.raw()) <= 0) parent[find(i)] = find(j);
        }

    std::vector<RootEstimate> out;
    for (int g = 0; g < d; ++g) {
        if (find(g) != g) continue;
        std::vector<int> members;
        for (int i = 0; i < d; ++i)
            if (find(i) == g) members.push_back(i);
        // Ball covering every member disc: centroid center, max reach radius.
        BigFloat cre{prec}, cim{prec};
        mpfr_set_si(cre.raw(), 0, MPFR_RNDN);
        mpfr_set_si(cim.raw(), 0, MPFR_RNDN);
        for (int i : members) {
            mpfr_add(cre.raw(), cre.raw(), z[i].re.raw(), MPFR_RNDN);
            mpfr_add(cim.raw(), cim.raw(), z[i].im.raw(), MPFR_RNDN);
        }
        mpfr_div_ui(cre.raw(), cre.raw(), members.size(), MPFR_RNDN);
        mpfr_div_ui(cim.raw(), cim.raw(), members.size(), MPFR_RNDN);
        BigFloat reach = BigFloat::from_si(0, kRadiusPrec);
        for (int i : members) {
            BigFloat dre{prec}, dim{prec}, t{kRadiusPrec};
            mpfr_sub(dre.raw(), z[i].re.raw(), cre.raw(), MPFR_RNDA);
            mpfr_sub(dim.raw(), z[i].im.raw(), cim.raw(), MPFR_RNDA);
            mpfr_hypot(t.raw(), dre.raw(), dim.raw(), MPFR_RNDU);
            rad_add_inplace(t, rad[i]);
            if (t > reach) reach = t;
        }
        RootEstimate est;
        est.location = ComplexBall(std::move(cre), std::move(cim), std::move(reach));
        est.multiplicity = static_cast<int>(members.size());
        out.push_back(std::move(est));
    }
    return out;
}

std::vector<RootEstimate> oracle_roots_auto(const DensePolynomial& p) {
    for (mpfr_prec_t prec : {128, 256, 512, 1024, 2048}) {
        try {
            return oracle_roots(p, prec);
        } catch (const std::runtime_error&) {
            continue;
        }
    }
    return oracle_roots(p, 4096);
}

}  // namespace rootclust
