#pragma once

#include "rootclust/counting.hpp"
#include "rootclust/geometry.hpp"
#include "rootclust/polynomial.hpp"
#include "rootclust/stats.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace rootclust {

/// A natural isolator paired with the number of roots (with multiplicity)
/// it holds: the count on the disc equals the count on its 3x inflation at
/// creation time.
struct Cluster {
    Disc disc;
    int multiplicity = 1;
};

using ClusterSet = std::vector<Cluster>;

int total_multiplicity(const ClusterSet& c);
bool pairwise_disjoint(const ClusterSet& c);

/// Pending boxes of the subdivision: a LIFO stack of leaves, giving the
/// depth-first traversal that lets a search stop early and resume later.
struct SearchDomain {
    std::vector<Box> boxes;  // top of stack at the back

    static SearchDomain single(const Box& roi) { return SearchDomain{{roi}}; }
    bool empty() const { return boxes.empty(); }
};

/// Raised when a box shrinks beneath eps * 2^-60 without the counting test
/// reaching a verdict: the region holds structure tighter than the
/// configured working limits.
class UnresolvableRegion : public std::runtime_error {
public:
    explicit UnresolvableRegion(const Box& b)
        : std::runtime_error("unresolvable region around " + b.to_string()), box(b) {}
    Box box;
};

struct SolveOptions {
    bool real_symmetry = false;  // skip imaginary-negative boxes, mirror clusters
    int L0 = kDefaultL0;
    int Lmax = kDefaultLmax;
};

struct ClusterPolResult {
    ClusterSet found;        // C*
    SearchDomain remaining;  // D*
};

/// Depth-first subdivision over D, finding at most n eps-clusters of Q.
/// C holds previously confirmed clusters whose discs the new ones must
/// avoid. On return, either n clusters were found or the remaining domain
/// is empty; roots of Q in D are covered by found clusters, absorbed into
/// equal-or-larger members of C-union-found, or still inside the remaining
/// domain.
ClusterPolResult cluster_pol(const OraclePolynomial& Q, SearchDomain D,
                             const mpq_class& eps, const ClusterSet& C,
                             std::optional<long> n, const SolveOptions& opt = {},
                             SolveStats* stats = nullptr);

/// Shrinks every cluster of C to radius 2^-L, splitting it when the roots
/// separate at that scale. Output clusters are natural for P, pairwise
/// disjoint and hold exactly the same roots. Fast path: multiplicity-aware
/// Newton polish of the known center, certified by the counting test;
/// falls back to local subdivision when certification fails.
ClusterSet refine(const ClusterSet& C, int L, const OraclePolynomial& P,
                  const SolveOptions& opt = {}, SolveStats* stats = nullptr);

/// Full solution of the local clustering problem on the ROI box: pairwise
/// disjoint natural isolators of radius <= eps covering every root in B0,
/// none beyond 2*B0, each with its multiplicity. With opt.real_symmetry the
/// solver only explores the closed upper half plane and mirrors strictly
/// positive boxes (valid for real-coefficient P over an axis-symmetric ROI).
ClusterSet solve_lcp(const OraclePolynomial& P, const Box& B0, const mpq_class& eps,
                     const SolveOptions& opt = {}, SolveStats* stats = nullptr);

/// Depth and size of the subdivision tree of the last completed solve.
std::pair<int, long> subdivision_stats(const SolveStats& stats);

}  // namespace rootclust
