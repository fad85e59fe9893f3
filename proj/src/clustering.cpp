#include "rootclust/clustering.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>

namespace rootclust {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Bits needed to resolve geometry at the box scale: roughly -log2(width).
long scale_bits(const mpq_class& width) {
    if (width >= 1) return 0;
    long nb = static_cast<long>(mpz_sizeinbase(width.get_num().get_mpz_t(), 2));
    long db = static_cast<long>(mpz_sizeinbase(width.get_den().get_mpz_t(), 2));
    return std::max<long>(0, db - nb + 1);
}

// Smallest rung of the L0 * 2^k ladder that resolves the given scale.
int ladder_start(int L0, long bits_needed) {
    long L = L0;
    while (L < bits_needed + 53) L *= 2;
    return static_cast<int>(L);
}

enum class Placement { Place, Absorb, Subdivide };

Placement classify(const Disc& d, const ClusterSet& C, const ClusterSet& found,
                   const Disc* extra = nullptr) {
    bool overlap = false;
    auto check = [&](const Disc& e) {
        if (discs_disjoint(e, d)) return false;
        if (e.radius >= d.radius) return true;  // absorbed by rem_doubles
        overlap = true;
        return false;
    };
    for (const Cluster& c : C)
        if (check(c.disc)) return Placement::Absorb;
    for (const Cluster& c : found)
        if (check(c.disc)) return Placement::Absorb;
    if (extra && check(*extra)) return Placement::Absorb;
    return overlap ? Placement::Subdivide : Placement::Place;
}

void log_box(SolveStats* stats, const Box& b, BoxOutcome outcome) {
    if (stats && stats->box_log) stats->box_log->push_back({b, outcome});
}

}  // namespace

int total_multiplicity(const ClusterSet& c) {
    int m = 0;
    for (const Cluster& cl : c) m += cl.multiplicity;
    return m;
}

bool pairwise_disjoint(const ClusterSet& c) {
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = i + 1; j < c.size(); ++j)
            if (!discs_disjoint(c[i].disc, c[j].disc)) return false;
    return true;
}

ClusterPolResult cluster_pol(const OraclePolynomial& Q, SearchDomain D,
                             const mpq_class& eps, const ClusterSet& C,
                             std::optional<long> n, const SolveOptions& opt,
                             SolveStats* stats) {
    if (eps <= 0) throw std::domain_error("cluster_pol: eps must be positive");
    ClusterSet found;
    const mpq_class width_floor = eps * q_pow2(-60);

    while (!D.boxes.empty()) {
        if (n && static_cast<long>(found.size()) >= *n) break;
        Box b = std::move(D.boxes.back());
        D.boxes.pop_back();
        if (stats) {
            ++stats->boxes_processed;
            stats->max_depth = std::max(stats->max_depth, b.depth);
        }

        ImSign sign = imaginary_sign(b);
        if (opt.real_symmetry && sign == ImSign::Negative) {
            if (stats) ++stats->negative_boxes_skipped;
            log_box(stats, b, BoxOutcome::Skipped);
            continue;
        }
        if (stats && sign == ImSign::Negative) ++stats->negative_boxes_tested;

        Disc disc = containing_disc(b);
        int L0 = ladder_start(opt.L0, scale_bits(b.width));
        // Boxes that are going to be subdivided on an undecided answer only
        // get a short ladder; the full one is reserved for boxes at the
        // emission width, where a certificate is actually needed.
        int Lmax = b.width <= eps ? std::max(opt.Lmax, 4 * L0)
                                  : std::min(opt.Lmax, 4 * L0);
        CountResult m = pellet_test(Q, disc, L0, Lmax, stats);
        if (m.empty()) {
            log_box(stats, b, BoxOutcome::Discarded);
            continue;
        }

        bool subdivide = true;
        if (b.width <= eps && m.positive()) {
            CountResult m3 = pellet_test(Q, scale_disc(disc, 3), L0, Lmax, stats);
            if (m3.value == m.value) {
                // Natural cluster certified; decide placement against the
                // already-known discs.
                switch (classify(disc, C, found)) {
                    case Placement::Absorb:
                        log_box(stats, b, BoxOutcome::Absorbed);
                        subdivide = false;
                        break;
                    case Placement::Subdivide:
                        break;
                    case Placement::Place: {
                        bool mirror = opt.real_symmetry && sign == ImSign::Positive;
                        if (!mirror) {
                            found.push_back({disc, m.value});
                            log_box(stats, b, BoxOutcome::Emitted);
                            subdivide = false;
                            break;
                        }
                        Box cb = conjugate_box(b);
                        Disc cdisc = containing_disc(cb);
                        Placement cp = classify(cdisc, C, found, &disc);
                        if (cp == Placement::Subdivide) break;  // retry deeper
                        found.push_back({disc, m.value});
                        log_box(stats, b, BoxOutcome::Emitted);
                        if (cp == Placement::Place) {
                            found.push_back({cdisc, m.value});
                            log_box(stats, cb, BoxOutcome::Emitted);
                        }
                        subdivide = false;
                        break;
                    }
                }
            }
        }
        if (!subdivide) continue;
        if (b.width / 2 < width_floor) throw UnresolvableRegion(b);
        log_box(stats, b, BoxOutcome::Subdivided);
        for (Box& child : quadrisect(b)) D.boxes.push_back(std::move(child));
    }
    return {std::move(found), std::move(D)};
}

namespace {

// Round a working-precision point to a short dyadic.
mpq_class dyadic_round(const BigFloat& x, mpfr_prec_t bits) {
    BigFloat r{bits};
    mpfr_set(r.raw(), x.raw(), MPFR_RNDN);
    return r.to_q();
}

// Multiplicity-aware Newton polish (Schroeder iteration) of a cluster
// center, followed by counting-test certification of the 2^-L disc. The
// iteration is heuristic; only the certificate admits the result.
std::optional<Cluster> polish_certify(const OraclePolynomial& P, const Disc& start,
                                      int m, int L, const SolveOptions& opt,
                                      SolveStats* stats) {
    const int A = std::max(2 * L + 64, 160);
    const mpfr_prec_t wp = static_cast<mpfr_prec_t>(A + 32);
    DensePolynomial approx = P.approximate(A);
    DensePolynomial dapprox = derivative(approx, wp);

    BigFloat zre = BigFloat::from_q(start.cre, wp);
    BigFloat zim = BigFloat::from_q(start.cim, wp);
    BigFloat vr{wp}, vi{wp}, dr{wp}, di{wp}, n2{wp}, t{wp}, wr{wp}, wi{wp};
    BigFloat small = BigFloat::pow2(-(L + 6), 32);
    int calm = 0;
    const int maxiter = 48 + 2 * static_cast<int>(std::log2(static_cast<double>(L)));
    for (int iter = 0; iter < maxiter && calm < 2; ++iter) {
        evaluate_center(approx, zre, zim, vr, vi, wp);
        if (mpfr_zero_p(vr.raw()) && mpfr_zero_p(vi.raw())) break;
        evaluate_center(dapprox, zre, zim, dr, di, wp);
        if (mpfr_zero_p(dr.raw()) && mpfr_zero_p(di.raw())) break;
        // w = m * v / dv
        mpfr_fmma(n2.raw(), dr.raw(), dr.raw(), di.raw(), di.raw(), MPFR_RNDN);
        mpfr_fmma(t.raw(), vr.raw(), dr.raw(), vi.raw(), di.raw(), MPFR_RNDN);
        mpfr_div(wr.raw(), t.raw(), n2.raw(), MPFR_RNDN);
        mpfr_fmms(t.raw(), vi.raw(), dr.raw(), vr.raw(), di.raw(), MPFR_RNDN);
        mpfr_div(wi.raw(), t.raw(), n2.raw(), MPFR_RNDN);
        mpfr_mul_ui(wr.raw(), wr.raw(), static_cast<unsigned long>(m), MPFR_RNDN);
        mpfr_mul_ui(wi.raw(), wi.raw(), static_cast<unsigned long>(m), MPFR_RNDN);
        mpfr_sub(zre.raw(), zre.raw(), wr.raw(), MPFR_RNDN);
        mpfr_sub(zim.raw(), zim.raw(), wi.raw(), MPFR_RNDN);
        BigFloat aw{32};
        mpfr_hypot(aw.raw(), wr.raw(), wi.raw(), MPFR_RNDU);
        calm = (aw <= small) ? calm + 1 : 0;
    }

    if (!zre.is_finite() || !zim.is_finite()) return std::nullopt;
    mpq_class cre = dyadic_round(zre, L + 16);
    mpq_class cim = dyadic_round(zim, L + 16);
    mpq_class radius = q_pow2(-L);
    Disc cand(cre, cim, radius);
    int L0 = ladder_start(opt.L0, L);
    int Lmax = std::max(opt.Lmax, 4 * (L + 53));
    CountResult c = confirm_disc(P, cand, L0, Lmax, stats);
    if (c.value == m) return Cluster{cand, m};
    return std::nullopt;
}

// Certify the disc of the same center as `small_disc` enlarged to radius
// exactly 2^-L; fall back to the original when the enlarged disc fails.
Cluster enlarge_to_target(const OraclePolynomial& P, const Disc& small_disc, int m,
                          int L, const SolveOptions& opt, SolveStats* stats) {
    mpq_class radius = q_pow2(-L);
    if (small_disc.radius == radius) return {small_disc, m};
    Disc grown(small_disc.cre, small_disc.cim, radius);
    int L0 = ladder_start(opt.L0, L);
    int Lmax = std::max(opt.Lmax, 4 * (L + 53));
    CountResult c = confirm_disc(P, grown, L0, Lmax, stats);
    if (c.value == m) return {grown, m};
    return {small_disc, m};
}

// Local subdivision refinement of one cluster; splits it as needed and
// hands separated sub-clusters back to the polish fast path.
void refine_fallback(const OraclePolynomial& P, const Cluster& cl, int L,
                     const SolveOptions& opt, SolveStats* stats, ClusterSet& out) {
    const mpq_class target = q_pow2(-L);
    const mpq_class width_floor = target * q_pow2(-60);
    const int Lmax = std::max(opt.Lmax, 4 * (L + 53));
    std::vector<Box> stack;
    stack.emplace_back(cl.disc.cre, cl.disc.cim, mpq_class(cl.disc.radius * 4));
    ClusterSet local;

    while (!stack.empty()) {
        Box b = std::move(stack.back());
        stack.pop_back();
        if (stats) {
            ++stats->boxes_processed;
            stats->max_depth = std::max(stats->max_depth, b.depth);
        }
        Disc disc = containing_disc(b);
        int L0 = ladder_start(opt.L0, scale_bits(b.width));
        int lmax_here = disc.radius <= target ? Lmax : std::min(Lmax, 4 * L0);
        CountResult m = pellet_test(P, disc, L0, lmax_here, stats);
        if (m.empty()) continue;
        if (m.positive()) {
            CountResult m3 = pellet_test(P, scale_disc(disc, 3), L0, lmax_here, stats);
            if (m3.value == m.value) {
                // A certified natural sub-cluster: finish it off the fast way
                // when possible.
                std::optional<Cluster> done;
                if (disc.radius <= target)
                    done = enlarge_to_target(P, disc, m.value, L, opt, stats);
                else if (auto p = polish_certify(P, disc, m.value, L, opt, stats))
                    done = *p;
                if (done) {
                    switch (classify(done->disc, local, {})) {
                        case Placement::Place:
                            local.push_back(*done);
                            continue;
                        case Placement::Absorb:
                            continue;
                        case Placement::Subdivide:
                            break;  // overlaps something smaller: split further
                    }
                }
            }
        }
        if (b.width / 2 < width_floor) throw UnresolvableRegion(b);
        for (Box& child : quadrisect(b)) stack.push_back(std::move(child));
    }

    if (total_multiplicity(local) != cl.multiplicity)
        throw std::logic_error("refine: sub-cluster multiplicities do not add up");
    for (Cluster& c : local) out.push_back(std::move(c));
}

}  // namespace

ClusterSet refine(const ClusterSet& C, int L, const OraclePolynomial& P,
                  const SolveOptions& opt, SolveStats* stats) {
    if (L <= 1) throw std::domain_error("refine: L must be > 1");
    auto t0 = Clock::now();
    if (stats) {
        stats->max_refine_prec = std::max(stats->max_refine_prec, L);
        stats->refine_requests.push_back(L);
    }
    const mpq_class target = q_pow2(-L);
    ClusterSet out;
    for (const Cluster& cl : C) {
        if (cl.disc.radius <= target) {
            out.push_back(cl);
            continue;
        }
        if (auto fast = polish_certify(P, cl.disc, cl.multiplicity, L, opt, stats)) {
            out.push_back(*fast);
            continue;
        }
        refine_fallback(P, cl, L, opt, stats, out);
    }
    if (stats) stats->t_refine += seconds_since(t0);
    return out;
}

ClusterSet solve_lcp(const OraclePolynomial& P, const Box& B0, const mpq_class& eps,
                     const SolveOptions& opt, SolveStats* stats) {
    if (opt.real_symmetry && B0.cim != 0)
        throw std::invalid_argument(
            "solve_lcp: real-symmetry mode needs an ROI centered on the real axis");
    auto t0 = Clock::now();
    ClusterPolResult r =
        cluster_pol(P, SearchDomain::single(B0), eps, {}, std::nullopt, opt, stats);
    assert(r.remaining.empty());
    if (stats) stats->t_total += seconds_since(t0);
    return std::move(r.found);
}

std::pair<int, long> subdivision_stats(const SolveStats& stats) {
    return {stats.max_depth, stats.boxes_processed};
}

}  // namespace rootclust
