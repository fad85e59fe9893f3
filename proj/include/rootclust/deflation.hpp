#pragma once

#include "rootclust/clustering.hpp"
#include "rootclust/polynomial.hpp"
#include "rootclust/stats.hpp"

#include <map>
#include <memory>

namespace rootclust {

/// First n power sums of a root multiset: values[i-1] encloses
/// sum of mult(alpha) * alpha^i.
struct PowerSumVector {
    std::vector<ComplexBall> values;

    int count() const { return static_cast<int>(values.size()); }
};

/// Power sums of all the roots of P through the Newton identities, each
/// ball of radius <= 2^-L. Raises the oracle accuracy internally until the
/// target is met. Requires 1 <= n <= degree.
PowerSumVector coeffs_to_power_sums(const OraclePolynomial& P, int n, int L,
                                    SolveStats* stats = nullptr);

/// Unique monic degree-d polynomial whose roots have the given first power
/// sums (d <= ps.count()), through the inverse Newton identities. Second
/// member is the achieved accuracy L' = -ceil(log2 max coefficient radius),
/// reported from honest ball propagation (kExactBits when exact).
std::pair<DensePolynomial, int> power_sums_to_coeffs(const PowerSumVector& ps, int L,
                                                     int d, SolveStats* stats = nullptr);

struct OracleForQOptions {
    SolveOptions solve;   // drives the refinement of C
    int max_stagnation = 3;  // abort after this many non-improving doublings
};

/// Shared refinement state for the deflated oracle: clusters of P refined
/// to increasingly tight radii, reused across accuracy requests.
struct RefineLadder {
    ClusterSet clusters;
    int bits = 0;  // radii are <= 2^-bits (0: untouched input)
};

/// L-bit approximation of the unique monic Q with exactly the roots of P
/// outside C (same multiplicities elsewhere), of degree deg(P) minus the
/// multiplicity in C. Power sums of all roots of P minus the cluster
/// contributions, converted back to coefficients; the refinement accuracy
/// doubles until the result reaches L.
DensePolynomial oracle_for_q(const OraclePolynomial& P, const ClusterSet& C, int L,
                             const OracleForQOptions& opt = {},
                             SolveStats* stats = nullptr, RefineLadder* ladder = nullptr);

/// Oracle view over oracle_for_q with its refinement ladder cached.
class DeflatedOracle final : public OraclePolynomial {
public:
    DeflatedOracle(const OraclePolynomial& P, ClusterSet C, OracleForQOptions opt = {},
                   SolveStats* stats = nullptr);
    int degree() const override { return degree_; }

protected:
    DensePolynomial compute(int L) const override;

private:
    const OraclePolynomial& p_;
    ClusterSet c_;
    OracleForQOptions opt_;
    SolveStats* stats_;
    int degree_;
    mutable RefineLadder ladder_;
};

/// Root clustering with explicit deflation: find up to n clusters of P,
/// deflate them away, continue on the lower-degree factor over the
/// remaining domain, and repeat until the domain drains. Returns natural
/// eps-clusters of P in D0 solving the local clustering problem.
ClusterSet cluster_with_deflation(const OraclePolynomial& P, const Box& D0,
                                  const mpq_class& eps, long n,
                                  const SolveOptions& opt = {},
                                  SolveStats* stats = nullptr);

}  // namespace rootclust
