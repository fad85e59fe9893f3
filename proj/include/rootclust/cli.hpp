#pragma once

#include "rootclust/clustering.hpp"
#include "rootclust/polynomial.hpp"
#include "rootclust/stats.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace rootclust::cli {

/// Parse failure with the offending 1-based line number (0: not line-bound).
class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, int line_no = 0)
        : std::runtime_error(std::move(msg)), line(line_no) {}
    int line;
};

/// Exact rational from an integer, decimal (possibly with exponent) or
/// "p/q" string.
mpq_class parse_rational(const std::string& s);

/// Polynomial file: first line "degree d", then d+1 lines "re im" in
/// ascending degree order, decimal or rational entries.
RationalPolynomial parse_polynomial_file(const std::string& path);

/// "builtin:<family>:<d>[:<a>]" or a file path.
struct PolySource {
    RationalPolynomial rational;        // exact coefficients when available
    std::unique_ptr<OraclePolynomial> oracle;
    std::string description;
    bool real = false;
    bool builtin_spiral = false;
};
PolySource load_polynomial(const std::string& spec);

/// "a,b,c,d" -> square box [a,b] x [c,d]; throws unless exactly square.
Box parse_roi(const std::string& s);

/// "2^-53" or a positive decimal/rational.
mpq_class parse_eps(const std::string& s);

struct ReportedCluster {
    std::string center_re, center_im, radius;  // decimal strings
    int multiplicity = 1;
    Disc disc;  // exact form, for re-verification
};

struct RunReport {
    int degree = 0;
    std::vector<ReportedCluster> clusters;
    int depth = 0;
    long size = 0;
    int maxprec = 0;
    long counting_calls = 0;
    int64_t degree_weighted_cost = 0;
    double t_total = 0, t_oracle_q = 0, t_refine = 0, t_ps_to_coeffs = 0;
    // parameter echo
    std::string poly, roi, eps, mode, n, real_symmetry, output;
};

std::string to_json(const RunReport& r);
std::string to_csv(const RunReport& r);

/// Deterministic SVG of the ROI, the clusters (discs inflated to stay
/// visible, multiplicity labels for m > 1) and optionally the subdivision
/// boxes.
std::string render_svg(const RunReport& r, const Box& roi,
                       const std::vector<PlotBox>* boxes);

/// Entry point of the command-line tool. Returns the process exit code:
/// 0 success, 1 usage or input error, 2 unresolvable region.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);

}  // namespace rootclust::cli
