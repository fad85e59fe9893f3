#include "rootclust/deflation.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace rootclust {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

long max_ball_exp(const std::vector<ComplexBall>& v) {
    long e = 0;
    for (const auto& b : v) {
        if (!b.re.is_zero() && b.re.is_finite()) e = std::max<long>(e, b.re.exp2());
        if (!b.im.is_zero() && b.im.is_finite()) e = std::max<long>(e, b.im.exp2());
    }
    return e;
}

// Accuracy of one ball: -ceil(log2 rad), kExactBits when exact.
int ball_accuracy(const ComplexBall& b) {
    if (b.rad.is_zero()) return kExactBits;
    if (!b.rad.is_finite()) return -kExactBits;
    long L = -static_cast<long>(b.rad.exp2());
    return static_cast<int>(std::clamp<long>(L, -kExactBits, kExactBits));
}

}  // namespace

PowerSumVector coeffs_to_power_sums(const OraclePolynomial& P, int n, int L,
                                    SolveStats* stats) {
    (void)stats;
    const int d = P.degree();
    if (n < 1 || n > d)
        throw std::domain_error("coeffs_to_power_sums: need 1 <= n <= degree");
    if (L < 1) throw std::domain_error("coeffs_to_power_sums: L must be >= 1");

    for (long A = L + 32;; A *= 2) {
        DensePolynomial approx = P.approximate(static_cast<int>(A));
        const mpfr_prec_t wp =
            static_cast<mpfr_prec_t>(A + 64 + std::max<long>(0, max_ball_exp(approx.coeffs)));
        // Monic normalization; the leading ball must exclude zero.
        const ComplexBall& lead = approx.coeffs[d];
        if (lead.contains_zero()) continue;  // escalate until it resolves
        std::vector<ComplexBall> c(d);       // c[j] = a_j / a_d
        for (int j = 0; j < d; ++j) c[j] = ball_div(approx.coeffs[j], lead, wp);

        // Newton identities: p_k = -k c_{d-k} - sum_{i=1..k-1} c_{d-i} p_{k-i}
        PowerSumVector ps;
        ps.values.reserve(n);
        for (int k = 1; k <= n; ++k) {
            ComplexBall acc = ball_mul_ui(c[d - k], static_cast<unsigned long>(k), wp);
            for (int i = 1; i < k; ++i)
                ball_addmul(acc, c[d - i], ps.values[k - i - 1], wp);
            ps.values.push_back(ball_neg(acc));
        }
        bool good = true;
        for (const auto& b : ps.values)
            if (ball_accuracy(b) < L) good = false;
        if (good) return ps;
    }
}

std::pair<DensePolynomial, int> power_sums_to_coeffs(const PowerSumVector& ps, int L,
                                                     int d, SolveStats* stats) {
    if (d < 1 || d > ps.count())
        throw std::domain_error("power_sums_to_coeffs: need 1 <= d <= ps.count()");
    auto t0 = Clock::now();
    const mpfr_prec_t wp = static_cast<mpfr_prec_t>(
        std::max(64, L + 64) + std::max<long>(0, max_ball_exp(ps.values)));

    // e_k = (1/k) sum_{i=1..k} (-1)^(i-1) e_{k-i} p_i
    std::vector<ComplexBall> e;
    e.reserve(d + 1);
    e.push_back(ComplexBall::exact_si(1, 0, wp));
    for (int k = 1; k <= d; ++k) {
        ComplexBall acc = ComplexBall::exact_si(0, 0, wp);
        for (int i = 1; i <= k; ++i) {
            ComplexBall term = (i % 2 == 1) ? ps.values[i - 1] : ball_neg(ps.values[i - 1]);
            ball_addmul(acc, e[k - i], term, wp);
        }
        e.push_back(ball_div_ui(acc, static_cast<unsigned long>(k), wp));
    }
    DensePolynomial q;
    q.coeffs.reserve(d + 1);
    for (int k = d; k >= 0; --k)
        q.coeffs.push_back(k % 2 == 0 ? e[k] : ball_neg(e[k]));
    int achieved = q.accuracy_bits();
    if (stats) stats->t_ps_to_coeffs += seconds_since(t0);
    return {std::move(q), achieved};
}

DensePolynomial oracle_for_q(const OraclePolynomial& P, const ClusterSet& C, int L,
                             const OracleForQOptions& opt, SolveStats* stats,
                             RefineLadder* ladder) {
    if (L < 1) throw std::domain_error("oracle_for_q: L must be >= 1");
    auto t0 = Clock::now();
    const int d_q = P.degree() - total_multiplicity(C);
    if (d_q < 0) throw std::invalid_argument("oracle_for_q: clusters exceed the degree");
    if (d_q == 0) {
        DensePolynomial one;
        one.coeffs.push_back(ComplexBall::exact_si(1, 0, 64));
        if (stats) stats->t_oracle_q += seconds_since(t0);
        return one;
    }

    RefineLadder local;
    if (!ladder) ladder = &local;
    if (ladder->clusters.empty()) {
        ladder->clusters = C;
        ladder->bits = 0;
    }

    int best_achieved = INT_MIN;
    int best_min_ls = INT_MIN;
    int stagnant = 0;
    long L_temp = L;
    while (true) {
        L_temp *= 2;
        if (ladder->bits < L_temp) {
            ladder->clusters =
                refine(ladder->clusters, static_cast<int>(L_temp), P, opt.solve, stats);
            ladder->bits = static_cast<int>(L_temp);
        }
        PowerSumVector all = coeffs_to_power_sums(P, d_q, static_cast<int>(L_temp), stats);

        // Subtract the cluster contributions: each cluster is treated as a
        // ball holding its roots, so m_j * ball^s encloses its s-th power sum.
        const mpfr_prec_t wp = static_cast<mpfr_prec_t>(
            L_temp + 64 + std::max<long>(0, max_ball_exp(all.values)));
        PowerSumVector q_ps;
        q_ps.values = all.values;
        std::vector<ComplexBall> power(ladder->clusters.size());
        for (size_t j = 0; j < ladder->clusters.size(); ++j) {
            const Cluster& cl = ladder->clusters[j];
            ComplexBall cb = ComplexBall::from_q(cl.disc.cre, cl.disc.cim, wp);
            BigFloat r = BigFloat::from_q(cl.disc.radius, kRadiusPrec, MPFR_RNDU);
            rad_add_inplace(cb.rad, r);
            power[j] = std::move(cb);
        }
        std::vector<ComplexBall> base = power;
        for (int s = 1; s <= d_q; ++s) {
            for (size_t j = 0; j < power.size(); ++j) {
                if (s > 1) power[j] = ball_mul(power[j], base[j], wp);
                ComplexBall contrib = ball_mul_ui(
                    power[j], static_cast<unsigned long>(ladder->clusters[j].multiplicity), wp);
                q_ps.values[s - 1] = ball_sub(q_ps.values[s - 1], contrib, wp);
            }
        }

        int min_ls = kExactBits;
        for (const auto& b : q_ps.values) min_ls = std::min(min_ls, ball_accuracy(b));
        int achieved = INT_MIN;
        DensePolynomial q;
        if (min_ls > 0) {
            auto [qq, got] = power_sums_to_coeffs(q_ps, min_ls, d_q, stats);
            q = std::move(qq);
            achieved = got;
            if (achieved >= L) {
                if (stats) stats->t_oracle_q += seconds_since(t0);
                return q;
            }
        }
        bool improved = achieved > best_achieved || min_ls > best_min_ls;
        best_achieved = std::max(best_achieved, achieved);
        best_min_ls = std::max(best_min_ls, min_ls);
        if (improved) {
            stagnant = 0;
        } else if (++stagnant >= opt.max_stagnation) {
            const Cluster* widest = nullptr;
            for (const auto& cl : ladder->clusters)
                if (!widest || cl.disc.radius > widest->disc.radius) widest = &cl;
            throw std::runtime_error(
                "oracle_for_q: accuracy stalled; widest cluster " +
                (widest ? widest->disc.to_string() : std::string("(none)")));
        }
    }
}

DeflatedOracle::DeflatedOracle(const OraclePolynomial& P, ClusterSet C,
                               OracleForQOptions opt, SolveStats* stats)
    : p_(P), c_(std::move(C)), opt_(std::move(opt)), stats_(stats),
      degree_(P.degree() - total_multiplicity(c_)) {
    if (degree_ < 0)
        throw std::invalid_argument("DeflatedOracle: clusters exceed the degree");
}

DensePolynomial DeflatedOracle::compute(int L) const {
    return oracle_for_q(p_, c_, L, opt_, stats_, &ladder_);
}

ClusterSet cluster_with_deflation(const OraclePolynomial& P, const Box& D0,
                                  const mpq_class& eps, long n,
                                  const SolveOptions& opt, SolveStats* stats) {
    if (n < 1) throw std::domain_error("cluster_with_deflation: n must be >= 1");
    auto t0 = Clock::now();
    ClusterPolResult r =
        cluster_pol(P, SearchDomain::single(D0), eps, {}, n, opt, stats);
    ClusterSet found = std::move(r.found);
    SearchDomain domain = std::move(r.remaining);
    while (!domain.empty()) {
        OracleForQOptions qopt;
        qopt.solve = opt;
        qopt.solve.real_symmetry = false;  // refinement domains are local
        DeflatedOracle q(P, found, qopt, stats);
        ClusterPolResult step = cluster_pol(q, std::move(domain), eps, found, n, opt, stats);
        domain = std::move(step.remaining);
        for (Cluster& c : step.found) found.push_back(std::move(c));
    }
    if (stats) stats->t_total += seconds_since(t0);
    return found;
}

}  // namespace rootclust
