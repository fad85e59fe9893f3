#pragma once

#include <gmpxx.h>

#include <array>
#include <string>
#include <vector>

namespace rootclust {

/// 2^e as an exact rational.
inline mpq_class q_pow2(long e) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
    return e >= 0 ? mpq_class(p) : mpq_class(1, p);
}

/// Axis-aligned square in the complex plane, exact coordinates.
/// Subdivision keeps dyadic inputs dyadic: children are c +/- w/4 at w/2.
struct Box {
    mpq_class cre, cim;  // center a + sqrt(-1) b
    mpq_class width;     // > 0
    int depth = 0;       // subdivision level, 0 for the ROI

    Box() : width(1) {}
    Box(mpq_class re, mpq_class im, mpq_class w, int d = 0)
        : cre(std::move(re)), cim(std::move(im)), width(std::move(w)), depth(d) {}

    std::string to_string() const;
};

struct Disc {
    mpq_class cre, cim;
    mpq_class radius;  // > 0

    Disc() : radius(1) {}
    Disc(mpq_class re, mpq_class im, mpq_class r)
        : cre(std::move(re)), cim(std::move(im)), radius(std::move(r)) {}

    std::string to_string() const;
};

enum class ImSign { Positive, Negative, Mixed };

std::array<Box, 4> quadrisect(const Box& b);

/// Disc centered at the box center with radius (3/4) * width; contains the
/// box since 3/4 exceeds sqrt(2)/2.
Disc containing_disc(const Box& b);

Box conjugate_box(const Box& b);

/// Positive iff Im > 0 holds across the whole box, Negative symmetrically,
/// Mixed when the box meets the real axis (boundary touching counts as
/// Mixed).
ImSign imaginary_sign(const Box& b);

Disc scale_disc(const Disc& d, const mpq_class& k);

bool discs_disjoint(const Disc& a, const Disc& b);
bool disc_contains(const Disc& d, const mpq_class& re, const mpq_class& im);
/// d1 contains d2 entirely.
bool disc_contains_disc(const Disc& d1, const Disc& d2);
bool box_contains(const Box& b, const mpq_class& re, const mpq_class& im);

/// A box paired with the root count of its containing disc.
struct CountedBox {
    Box box;
    int multiplicity = 0;
};

/// Deduplicates overlapping candidates: repeatedly pops the largest-radius
/// box (ties by center lexicographic order) and keeps it only if its
/// containing disc is disjoint from every kept disc. Requires each input
/// disc to hold the same roots as its 3x inflation; then the kept discs
/// cover exactly the roots the input discs covered.
std::vector<CountedBox> clean(std::vector<CountedBox> q);

}  // namespace rootclust
