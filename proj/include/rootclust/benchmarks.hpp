#pragma once

#include "rootclust/polynomial.hpp"

#include <memory>
#include <vector>

namespace rootclust {

/// Bernoulli polynomial of degree d: sum_k C(d,k) b_{d-k} z^k with the
/// Bernoulli numbers b_i from the defining recurrence. Monic, exact.
RationalPolynomial bernoulli(int d);

/// Bernoulli number b_n as an exact rational (cached).
mpq_class bernoulli_number(int n);

/// Mignotte polynomial z^d - 2 (2^a z - 1)^2, exact integer coefficients.
RationalPolynomial mignotte(int d, int a);

/// Mandelbrot-family polynomial P_k with k = floor(log2(d+1)), where
/// P_0 = 1 and P_k = z P_{k-1}^2 + 1. Degree 2^k - 1. Inputs that are not
/// of the form 2^k - 1 are mapped down; `warned` (if given) is set when
/// that happens.
RationalPolynomial mandelbrot(int d, bool* warned = nullptr);

/// Spiral polynomial prod_{k=1..d} (z - (k/d) e^{4 k pi i / d}) with the
/// transcendental root coordinates evaluated to L bits; the result is an
/// L-bit approximation.
DensePolynomial spiral(int d, int L);

/// Oracle view of the spiral polynomial (recomputes at higher precision on
/// demand).
std::unique_ptr<OraclePolynomial> spiral_oracle(int d);

struct RootEstimate {
    ComplexBall location;  // ball certified to contain `multiplicity` roots
    int multiplicity = 1;
};

/// Independent root finder used only by tests: Ehrlich-Aberth simultaneous
/// iteration at the given working precision, followed by a-posteriori
/// Weierstrass inclusion discs; overlapping discs are merged into clusters
/// with their combined multiplicity. Throws on non-convergence (caller
/// retries at higher precision). Degrees above 64 are rejected.
std::vector<RootEstimate> oracle_roots(const DensePolynomial& p, mpfr_prec_t prec);

/// Convenience wrapper with automatic precision escalation.
std::vector<RootEstimate> oracle_roots_auto(const DensePolynomial& p);

}  // namespace rootclust
