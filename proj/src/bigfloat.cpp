#include "rootclust/bigfloat.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace rootclust {

mpq_class BigFloat::to_q() const {
    if (!is_finite()) throw std::invalid_argument("BigFloat::to_q: not finite");
    if (is_zero()) return mpq_class(0);
    mpf_t f;
    mpf_init2(f, static_cast<mp_bitcnt_t>(prec()) + 8);
    mpfr_get_f(f, v_, MPFR_RNDN);  // exact: target has enough precision
    mpq_class q;
    mpq_set_f(q.get_mpq_t(), f);
    mpf_clear(f);
    return q;
}

std::string BigFloat::to_decimal(size_t digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) < 0 ? "-inf" : "inf";
    if (mpfr_zero_p(v_)) return "0";
    if (digits == 0) {
        // Enough digits to reconstruct the value at its precision.
        digits = static_cast<size_t>(std::ceil(static_cast<double>(prec()) * 0.30103)) + 2;
    }
    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
    std::string mant(s);
    mpfr_free_str(s);
    bool neg = !mant.empty() && mant[0] == '-';
    std::string d = neg ? mant.substr(1) : mant;
    // Trim trailing zeros but keep at least one digit.
    size_t last = d.find_last_not_of('0');
    d = d.substr(0, last == std::string::npos ? 1 : last + 1);
    std::string out = neg ? "-" : "";
    out += d.substr(0, 1);
    if (d.size() > 1) out += "." + d.substr(1);
    long ee = static_cast<long>(e) - 1;  // mpfr: mantissa is 0.d1d2... * 10^e
    if (ee != 0) out += "e" + std::to_string(ee);
    return out;
}

}  // namespace rootclust
