#pragma once

#include "rootclust/ball.hpp"

#include <climits>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace rootclust {

/// Achieved accuracy marker: all coefficient radii <= 2^-L means the
/// polynomial is an L-bit approximation. kExactBits flags radius zero.
inline constexpr int kExactBits = INT_MAX / 2;

/// Dense univariate polynomial with complex-ball coefficients, ascending
/// degree order. The formal degree is coeffs.size()-1; callers that need
/// the certain degree use effective_degree().
struct DensePolynomial {
    std::vector<ComplexBall> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    /// Largest index whose coefficient ball excludes zero, -1 if none.
    int effective_degree() const;
    /// Largest L such that this is an L-bit approximation (kExactBits if all
    /// radii are zero, can be negative for poor enclosures).
    int accuracy_bits() const;

    static DensePolynomial zero(int degree, mpfr_prec_t prec);
};

DensePolynomial derivative(const DensePolynomial& p, mpfr_prec_t prec);
ComplexBall evaluate(const DensePolynomial& p, const ComplexBall& z, mpfr_prec_t prec);
// Plain complex Horner on ball centers, no enclosure tracking. Heuristic use
// only (iteration steps); rigor is restored by certification afterwards.
void evaluate_center(const DensePolynomial& p, const BigFloat& zre, const BigFloat& zim,
                     BigFloat& out_re, BigFloat& out_im, mpfr_prec_t prec);

DensePolynomial poly_mul(const DensePolynomial& a, const DensePolynomial& b,
                         mpfr_prec_t prec);

/// Coefficients of P(c + r z). Degree is preserved.
DensePolynomial taylor_shift_scale(const DensePolynomial& p, const ComplexBall& c,
                                   const BigFloat& r, mpfr_prec_t prec);
/// Same with an enclosed scale (used when r is not exactly representable).
DensePolynomial taylor_shift_scale(const DensePolynomial& p, const ComplexBall& c,
                                   const ComplexBall& r, mpfr_prec_t prec);

/// Root-squaring step: result's roots are exactly the squares of p's roots,
/// same degree, leading coefficient the square of p's. Computed from the
/// even/odd split, G = (-1)^d (E^2 - z O^2).
DensePolynomial graeffe(const DensePolynomial& p, mpfr_prec_t prec);

/// Exact univariate polynomial with rational complex coefficients,
/// ascending order. Used by generators, file input and test oracles.
struct RationalPolynomial {
    std::vector<std::pair<mpq_class, mpq_class>> coeffs;  // (re, im)

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool is_real() const;
    std::pair<mpq_class, mpq_class> evaluate(const mpq_class& re,
                                             const mpq_class& im) const;
    DensePolynomial to_balls(mpfr_prec_t prec) const;

    static RationalPolynomial from_real(std::vector<mpq_class> re);
};

RationalPolynomial rational_mul(const RationalPolynomial& a, const RationalPolynomial& b);

/// A polynomial queryable at any requested bit accuracy L: approximate(L)
/// returns coefficient balls of radius <= 2^-L. Approximations at
/// increasing L are nested around the exact coefficients and the degree
/// never changes. Implementations cache their best approximation; the cache
/// is mutex-guarded so oracles can be shared.
class OraclePolynomial {
public:
    virtual ~OraclePolynomial() = default;
    virtual int degree() const = 0;

    DensePolynomial approximate(int L) const;

protected:
    /// Produce an approximation with accuracy_bits() >= L.
    virtual DensePolynomial compute(int L) const = 0;

private:
    mutable std::mutex mu_;
    mutable std::optional<DensePolynomial> best_;
    mutable int best_bits_ = -1;
};

/// Oracle over exact rational coefficients: rounds them to whatever
/// precision the requested accuracy needs.
class RationalOracle final : public OraclePolynomial {
public:
    explicit RationalOracle(RationalPolynomial p) : p_(std::move(p)) {}
    int degree() const override { return p_.degree(); }
    const RationalPolynomial& rational() const { return p_; }

protected:
    DensePolynomial compute(int L) const override;

private:
    RationalPolynomial p_;
};

/// Oracle defined by a callback (test hook and glue for derived oracles).
class FunctionOracle final : public OraclePolynomial {
public:
    FunctionOracle(int degree, std::function<DensePolynomial(int)> fn)
        : degree_(degree), fn_(std::move(fn)) {}
    int degree() const override { return degree_; }

protected:
    DensePolynomial compute(int L) const override { return fn_(L); }

private:
    int degree_;
    std::function<DensePolynomial(int)> fn_;
};

}  // namespace rootclust
