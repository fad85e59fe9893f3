#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <rootclust/geometry.hpp>

#include <random>

using namespace rootclust;

TEST_CASE("quadrisect: centers, widths, coverage") {
    Box b(mpq_class(0), mpq_class(0), mpq_class(4));
    auto kids = quadrisect(b);
    for (const Box& k : kids) {
        CHECK(k.width == 2);
        CHECK(abs(k.cre) == 1);
        CHECK(abs(k.cim) == 1);
        CHECK(k.depth == 1);
    }
    // area conservation: 4 * (w/2)^2 == w^2
    mpq_class area = 0;
    for (const Box& k : kids) area += k.width * k.width;
    CHECK(area == b.width * b.width);
}

TEST_CASE("quadrisect covers every point of the parent") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> num(-1000, 1000);
    Box b(mpq_class(1, 3), mpq_class(-2, 7), mpq_class(5, 2));
    auto kids = quadrisect(b);
    for (int k = 0; k < 200; ++k) {
        mpq_class px = b.cre + b.width * num(rng) / 2000;
        mpq_class py = b.cim + b.width * num(rng) / 2000;
        bool covered = false;
        for (const Box& kid : kids)
            if (box_contains(kid, px, py)) covered = true;
        CHECK(covered);
    }
}

TEST_CASE("containing_disc: radius (3/4)w and corner containment") {
    Box b(mpq_class(0), mpq_class(0), mpq_class(4));
    Disc d = containing_disc(b);
    CHECK(d.radius == 3);
    // all four corners inside (3/4 > sqrt(2)/2)
    mpq_class h = b.width / 2;
    for (int sx : {-1, 1})
        for (int sy : {-1, 1}) CHECK(disc_contains(d, b.cre + sx * h, b.cim + sy * h));
}

TEST_CASE("containing discs of adjacent same-width children overlap") {
    Box b(mpq_class(0), mpq_class(0), mpq_class(4));
    auto kids = quadrisect(b);
    CHECK(!discs_disjoint(containing_disc(kids[0]), containing_disc(kids[1])));
}

TEST_CASE("conjugate_box") {
    Box b(mpq_class(1), mpq_class(2), mpq_class(1));
    Box c = conjugate_box(b);
    CHECK(c.cre == 1);
    CHECK(c.cim == -2);
    CHECK(c.width == 1);
    // involution
    Box cc = conjugate_box(c);
    CHECK(cc.cim == b.cim);
    // real-centered box is its own conjugate
    Box r(mpq_class(5), mpq_class(0), mpq_class(1));
    CHECK(conjugate_box(r).cim == 0);
}

TEST_CASE("imaginary_sign") {
    CHECK(imaginary_sign(Box(mpq_class(0), mpq_class(2), mpq_class(1))) == ImSign::Positive);
    CHECK(imaginary_sign(Box(mpq_class(0), mpq_class(-2), mpq_class(1))) == ImSign::Negative);
    CHECK(imaginary_sign(Box(mpq_class(0), mpq_class(0), mpq_class(1))) == ImSign::Mixed);
    // boundary touching counts as mixed
    CHECK(imaginary_sign(Box(mpq_class(0), mpq_class(1, 2), mpq_class(1))) == ImSign::Mixed);
}

TEST_CASE("conjugate box holds as many roots of a real polynomial") {
    // real-coefficient root sets are conjugation-invariant, so the count in
    // any disc equals the count in the mirrored disc
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> pos(-20, 20);
    for (int iter = 0; iter < 50; ++iter) {
        // conjugate-closed synthetic root set
        std::vector<std::pair<mpq_class, mpq_class>> roots;
        for (int i = 0; i < 6; ++i) {
            mpq_class re(pos(rng), 4), im(pos(rng), 4);
            roots.emplace_back(re, im);
            if (im != 0) roots.emplace_back(re, mpq_class(-im));
        }
        Box b(mpq_class(pos(rng), 4), mpq_class(pos(rng), 4), mpq_class(3, 2));
        auto count = [&](const Disc& d) {
            int n = 0;
            for (auto& [re, im] : roots)
                if (disc_contains(d, re, im)) ++n;
            return n;
        };
        CHECK(count(containing_disc(b)) == count(containing_disc(conjugate_box(b))));
    }
}

TEST_CASE("clean: overlapping smaller candidate absorbed") {
    // disc(B1) = D(0,1) from width 4/3 box; disc(B2) = D(1/2, 1/4) from width 1/3
    std::vector<CountedBox> q;
    q.push_back({Box(mpq_class(0), mpq_class(0), mpq_class(4, 3)), 2});
    q.push_back({Box(mpq_class(1, 2), mpq_class(0), mpq_class(1, 3)), 1});
    auto out = clean(q);
    REQUIRE(out.size() == 1);
    CHECK(out[0].multiplicity == 2);
    CHECK(out[0].box.width == mpq_class(4, 3));
}

TEST_CASE("clean: pairwise disjoint input unchanged") {
    std::vector<CountedBox> q;
    q.push_back({Box(mpq_class(0), mpq_class(0), mpq_class(1)), 1});
    q.push_back({Box(mpq_class(10), mpq_class(0), mpq_class(1)), 1});
    q.push_back({Box(mpq_class(0), mpq_class(10), mpq_class(2)), 3});
    auto out = clean(q);
    CHECK(out.size() == 3);
}

TEST_CASE("clean: chain of three mutually overlapping discs keeps the largest") {
    // widths 4, 3, 2 all centered near each other: all pairwise overlapping
    std::vector<CountedBox> q;
    q.push_back({Box(mpq_class(0), mpq_class(0), mpq_class(2)), 1});
    q.push_back({Box(mpq_class(1), mpq_class(0), mpq_class(3)), 2});
    q.push_back({Box(mpq_class(2), mpq_class(0), mpq_class(4)), 3});
    auto out = clean(q);
    REQUIRE(out.size() == 1);
    CHECK(out[0].box.width == 4);
}

TEST_CASE("clean output discs are pairwise disjoint (random fixtures)") {
    std::mt19937_64 rng(424242);
    std::uniform_int_distribution<int> pos(-8, 8);
    std::uniform_int_distribution<int> wsel(1, 6);
    for (int iter = 0; iter < 200; ++iter) {
        std::vector<CountedBox> q;
        int nboxes = 2 + static_cast<int>(rng() % 12);
        for (int i = 0; i < nboxes; ++i)
            q.push_back({Box(mpq_class(pos(rng), 2), mpq_class(pos(rng), 2),
                             mpq_class(wsel(rng), 2)),
                         1 + static_cast<int>(rng() % 3)});
        auto out = clean(q);
        CHECK(out.size() >= 1);
        CHECK(out.size() <= q.size());
        for (size_t i = 0; i < out.size(); ++i)
            for (size_t j = i + 1; j < out.size(); ++j)
                CHECK(discs_disjoint(containing_disc(out[i].box), containing_disc(out[j].box)));
    }
}

TEST_CASE("clean is deterministic under input permutation") {
    std::vector<CountedBox> q;
    q.push_back({Box(mpq_class(0), mpq_class(0), mpq_class(2)), 1});
    q.push_back({Box(mpq_class(1), mpq_class(1), mpq_class(2)), 1});
    q.push_back({Box(mpq_class(5), mpq_class(0), mpq_class(1)), 1});
    auto out1 = clean(q);
    std::reverse(q.begin(), q.end());
    auto out2 = clean(q);
    REQUIRE(out1.size() == out2.size());
    for (size_t i = 0; i < out1.size(); ++i) {
        CHECK(out1[i].box.cre == out2[i].box.cre);
        CHECK(out1[i].box.cim == out2[i].box.cim);
    }
}
