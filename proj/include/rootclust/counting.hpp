#pragma once

#include "rootclust/geometry.hpp"
#include "rootclust/polynomial.hpp"
#include "rootclust/stats.hpp"

namespace rootclust {

/// Outcome of the counting test T*: -1 undecided, 0 certified root-free,
/// m >= 1 certified to hold exactly m roots counted with multiplicity.
struct CountResult {
    int value = -1;

    bool undecided() const { return value < 0; }
    bool empty() const { return value == 0; }
    bool positive() const { return value > 0; }
};

inline constexpr int kDefaultL0 = 53;
inline constexpr int kDefaultLmax = 53 << 6;

/// Number of root-squaring iterations used by the test for degree d:
/// ceil(log2(1 + log2 d)) + 2.
int graeffe_iterations(int degree);

/// Soft Pellet test on a disc, Graeffe-accelerated. Recentres P onto the
/// unit disc, then looks for a coefficient that dominates twice the sum of
/// all the others after up to graeffe_iterations(d) squarings; the dominant
/// index is the root count of the closed disc. Starts at accuracy L0 and
/// doubles up to Lmax before giving up with -1. A nonnegative answer is
/// rigorous: the inequality is checked on ball enclosures, so it holds for
/// the exact polynomial.
CountResult pellet_test(const OraclePolynomial& P, const Disc& disc, int L0, int Lmax,
                        SolveStats* stats = nullptr);

/// The natural-cluster certificate: m >= 1 only when the test returns the
/// same m on the containing disc of B and on its 3x inflation; 0 when the
/// containing disc is certified empty; -1 otherwise.
CountResult count_with_confirmation(const OraclePolynomial& P, const Box& B, int L0,
                                    int Lmax, SolveStats* stats = nullptr);

/// Same certificate on an explicit disc.
CountResult confirm_disc(const OraclePolynomial& P, const Disc& disc, int L0, int Lmax,
                         SolveStats* stats = nullptr);

}  // namespace rootclust
