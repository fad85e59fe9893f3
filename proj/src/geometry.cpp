#include "rootclust/geometry.hpp"

#include <algorithm>

namespace rootclust {

namespace {

std::string q_to_string(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace

std::string Box::to_string() const {
    return "box(" + q_to_string(cre) + ", " + q_to_string(cim) + ", w=" +
           q_to_string(width) + ")";
}

std::string Disc::to_string() const {
    return "disc(" + q_to_string(cre) + ", " + q_to_string(cim) + ", r=" +
           q_to_string(radius) + ")";
}

std::array<Box, 4> quadrisect(const Box& b) {
    mpq_class q = b.width / 4;
    mpq_class w = b.width / 2;
    return {Box(b.cre - q, b.cim - q, w, b.depth + 1),
            Box(b.cre + q, b.cim - q, w, b.depth + 1),
            Box(b.cre - q, b.cim + q, w, b.depth + 1),
            Box(b.cre + q, b.cim + q, w, b.depth + 1)};
}

Disc containing_disc(const Box& b) {
    return Disc(b.cre, b.cim, mpq_class(b.width * 3 / 4));
}

Box conjugate_box(const Box& b) {
    return Box(b.cre, mpq_class(-b.cim), b.width, b.depth);
}

ImSign imaginary_sign(const Box& b) {
    mpq_class h = b.width / 2;
    if (b.cim - h > 0) return ImSign::Positive;
    if (b.cim + h < 0) return ImSign::Negative;
    return ImSign::Mixed;
}

Disc scale_disc(const Disc& d, const mpq_class& k) {
    return Disc(d.cre, d.cim, mpq_class(d.radius * k));
}

bool discs_disjoint(const Disc& a, const Disc& b) {
    mpq_class dre = a.cre - b.cre;
    mpq_class dim = a.cim - b.cim;
    mpq_class s = a.radius + b.radius;
    return dre * dre + dim * dim > s * s;
}

bool disc_contains(const Disc& d, const mpq_class& re, const mpq_class& im) {
    mpq_class dre = re - d.cre;
    mpq_class dim = im - d.cim;
    return dre * dre + dim * dim <= d.radius * d.radius;
}

bool disc_contains_disc(const Disc& d1, const Disc& d2) {
    if (d2.radius > d1.radius) return false;
    mpq_class dre = d1.cre - d2.cre;
    mpq_class dim = d1.cim - d2.cim;
    mpq_class m = d1.radius - d2.radius;
    return dre * dre + dim * dim <= m * m;
}

bool box_contains(const Box& b, const mpq_class& re, const mpq_class& im) {
    mpq_class h = b.width / 2;
    return re >= b.cre - h && re <= b.cre + h && im >= b.cim - h && im <= b.cim + h;
}

std::vector<CountedBox> clean(std::vector<CountedBox> q) {
    // Greatest containing-disc radius first, i.e. greatest width; ties broken
    // lexicographically on (center re, center im) for determinism.
    std::stable_sort(q.begin(), q.end(), [](const CountedBox& a, const CountedBox& b) {
        if (a.box.width != b.box.width) return a.box.width > b.box.width;
        if (a.box.cre != b.box.cre) return a.box.cre < b.box.cre;
        return a.box.cim < b.box.cim;
    });
    std::vector<CountedBox> kept;
    std::vector<Disc> kept_discs;
    for (auto& cb : q) {
        Disc d = containing_disc(cb.box);
        bool ok = true;
        for (const Disc& kd : kept_discs)
            if (!discs_disjoint(kd, d)) {
                ok = false;
                break;
            }
        if (ok) {
            kept_discs.push_back(d);
            kept.push_back(std::move(cb));
        }
    }
    return kept;
}

}  // namespace rootclust
