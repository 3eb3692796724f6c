#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>

#include "wpl/lgroup.hpp"

using namespace wpl;
using namespace wpl::lgroup;

namespace {

// Independent equality oracle: a formal combination a1*x1+a2*x2+a3*x3+m*c is
// zero in L iff, after substituting c = p1*x1, the exponent vector lies in the
// lattice spanned by (p1,-p2,0) and (p1,0,-p3).
bool combo_is_zero(WeightTriple w, std::int64_t a1, std::int64_t a2, std::int64_t a3,
                   std::int64_t m) {
    std::int64_t v1 = a1 + m * w.p1;
    std::int64_t v2 = a2;
    std::int64_t v3 = a3;
    if (v2 % w.p2 != 0 || v3 % w.p3 != 0) return false;
    std::int64_t alpha = -v2 / w.p2;
    std::int64_t beta = -v3 / w.p3;
    return v1 == (alpha + beta) * w.p1;
}

}  // namespace

TEST_CASE("normalize examples and the omega normal form oracle") {
    WeightTriple w = weights(5);
    CHECK(normalize(w, 0, 0, 0, 0) == zero(w));
    CHECK(normalize(w, 2, 0, 0, 0) == c(w));  // 2*x1 = c

    for (int p : {2, 3, 4, 5, 6, 7, 8, 9}) {
        WeightTriple wp = weights(p);
        LElt om = omega(wp);
        CHECK(om == normalize(wp, 1, -1, -1, 0));
        CHECK(om.n1() == 1);
        CHECK(om.n2() == 2);
        CHECK(om.n3() == p - 1);
        CHECK(om.m() == -2);

        // Oracle: search all small normal forms for elements equal to
        // c - x1 - x2 - x3 using only lattice membership.
        int hits = 0;
        LElt found = zero(wp);
        for (std::int64_t n1 = 0; n1 < 2; ++n1)
            for (std::int64_t n2 = 0; n2 < 3; ++n2)
                for (std::int64_t n3 = 0; n3 < p; ++n3)
                    for (std::int64_t m = -5; m <= 5; ++m)
                        if (combo_is_zero(wp, n1 + 1, n2 + 1, n3 + 1, m - 1)) {
                            ++hits;
                            found = normalize(wp, n1, n2, n3, m);
                        }
        CHECK(hits == 1);
        CHECK(found == om);
    }
}

TEST_CASE("group laws, confluence of the rewriting, usage errors") {
    std::mt19937 rng(2026);
    std::uniform_int_distribution<std::int64_t> coeff(-50, 50), extra(-10, 10);
    for (int p = 2; p <= 9; ++p) {
        WeightTriple w = weights(p);
        for (int trial = 0; trial < 1000; ++trial) {
            std::int64_t a1 = coeff(rng), a2 = coeff(rng), a3 = coeff(rng), am = extra(rng);
            std::int64_t b1 = coeff(rng), b2 = coeff(rng), b3 = coeff(rng), bm = extra(rng);
            LElt x = normalize(w, a1, a2, a3, am);
            LElt y = normalize(w, b1, b2, b3, bm);
            CHECK(add(x, y) == normalize(w, a1 + b1, a2 + b2, a3 + b3, am + bm));
            CHECK(add(x, neg(x)) == zero(w));
            CHECK(smul(-3, x) == neg(add(x, add(x, x))));
        }
    }
    CHECK_THROWS_AS(add(zero(weights(5)), zero(weights(7))), UsageError);
    CHECK_THROWS_AS(weights(1), UsageError);
    CHECK_THROWS_AS(xi(weights(5), 4), UsageError);
}

TEST_CASE("is_nonneg tracks the sign of m") {
    WeightTriple w = weights(7);
    CHECK(is_nonneg(zero(w)));
    CHECK(is_nonneg(c(w)));
    for (int p : {2, 3, 5, 8}) CHECK(!is_nonneg(omega(weights(p))));
}

TEST_CASE("delta values and additivity") {
    WeightTriple w5 = weights(5);
    CHECK(delta(xi(w5, 1)) == 15);
    CHECK(delta(xi(w5, 2)) == 10);
    CHECK(delta(xi(w5, 3)) == 6);
    CHECK(delta(zero(w5)) == 0);
    CHECK(delta(omega(weights(4))) == -1);
    CHECK(delta(omega(weights(6))) == 0);

    std::mt19937 rng(11);
    std::uniform_int_distribution<std::int64_t> coeff(-20, 20);
    for (int p = 2; p <= 9; ++p) {
        WeightTriple w = weights(p);
        CHECK(delta(c(w)) == std::lcm<std::int64_t>(6, p));
        for (int trial = 0; trial < 200; ++trial) {
            LElt x = normalize(w, coeff(rng), coeff(rng), coeff(rng), 0);
            LElt y = normalize(w, coeff(rng), coeff(rng), coeff(rng), 0);
            CHECK(delta(add(x, y)) == delta(x) + delta(y));
        }
    }
    LElt general(WeightTriple{3, 3, 3}, 1, 0, 0, 0);
    CHECK_THROWS_AS(delta(general), UsageError);
}

TEST_CASE("bar classes and the tau pattern") {
    WeightTriple w = weights(5);
    CHECK(bar_class(xi(w, 2)).kind == Bar::Lower);
    CHECK(bar_class(xi(w, 1)).kind == Bar::Fading);
    CHECK(bar_class(smul(7, xi(w, 3))).kind == Bar::Upper);

    CHECK(tau_pattern(zero(w)) == "+-+---");
    CHECK(tau_pattern(omega(w)) == "-+---+");
    CHECK(tau_pattern(xi(w, 2)) == "+---+-");

    std::mt19937 rng(5);
    std::uniform_int_distribution<std::int64_t> coeff(-15, 15);
    const std::string base = "+-+---";
    for (int p = 2; p <= 9; ++p) {
        WeightTriple wp = weights(p);
        for (int trial = 0; trial < 200; ++trial) {
            LElt x = normalize(wp, coeff(rng), coeff(rng), coeff(rng), coeff(rng));
            std::string pat = tau_pattern(x);
            CHECK(std::count(pat.begin(), pat.end(), '+') == 2);
            bool rotation = false;
            for (int r = 0; r < 6 && !rotation; ++r) {
                std::string rot = base.substr(static_cast<std::size_t>(r)) +
                                  base.substr(0, static_cast<std::size_t>(r));
                rotation = (pat == rot);
            }
            CHECK(rotation);
        }
    }
}

TEST_CASE("structure: free rank 1, torsion gcd(6,p)") {
    CHECK(structure(WeightTriple{2, 3, 5}) == GroupStructure{1, {}});
    CHECK(structure(WeightTriple{2, 3, 2}) == GroupStructure{1, {2}});
    CHECK(structure(WeightTriple{2, 3, 6}) == GroupStructure{1, {6}});
    for (int p = 2; p <= 12; ++p) {
        GroupStructure gs = structure(weights(p));
        CHECK(gs.free_rank == 1);
        std::int64_t g = std::gcd<std::int64_t>(6, p);
        if (g > 1)
            CHECK(gs.torsion == std::vector<std::int64_t>{g});
        else
            CHECK(gs.torsion.empty());
    }
    // A general triple away from (2,3,p).
    GroupStructure gs = structure(WeightTriple{4, 6, 10});
    CHECK(gs.free_rank == 1);
}

TEST_CASE("quotient enumeration and orders") {
    for (int p = 2; p <= 12; ++p) {
        WeightTriple w = weights(p);
        std::vector<LElt> q = quotient(xi(w, 3));
        CHECK(q.size() == 6);
        CHECK(class_order(omega(w), xi(w, 3)) == 6);
    }
    CHECK(quotient(omega(weights(8))).size() == 2);
    CHECK(quotient(omega(weights(5))).size() == 1);
    CHECK(quotient(omega(weights(2))).size() == 4);
    CHECK(class_order(omega(weights(5)), xi(weights(5), 1)) == 15);
    CHECK_THROWS_AS(quotient(omega(weights(6))), InfiniteQuotient);
    CHECK_THROWS_AS(quotient(zero(weights(5))), InfiniteQuotient);
    // |L/Z omega| = |6 - p| whenever delta(omega) != 0.
    for (int p : {2, 3, 4, 5, 7, 8, 9, 10}) {
        WeightTriple w = weights(p);
        CHECK(quotient(omega(w)).size() == static_cast<std::size_t>(std::abs(6 - p)));
    }
}

TEST_CASE("identity suite holds for p = 2..9") {
    for (int p = 2; p <= 9; ++p) {
        Report rep = identity_suite(p);
        INFO("p = " << p);
        for (const ReportLine& line : rep.lines) {
            INFO(line.claim << " : " << line.detail);
            CHECK(line.ok);
        }
    }
    // p = 6: 6*omega = 0 exactly.
    WeightTriple w6 = weights(6);
    CHECK(smul(6, omega(w6)) == zero(w6));
    // p = 2: x1 - x3 is 2-torsion and nonzero.
    WeightTriple w2 = weights(2);
    LElt t = sub(xi(w2, 1), xi(w2, 3));
    CHECK(t != zero(w2));
    CHECK(add(t, t) == zero(w2));
}

TEST_CASE("serialization round trip") {
    WeightTriple w = weights(7);
    LElt x = normalize(w, 1, 2, 6, -3);
    CHECK(x.str() == "1,2,6,-3");
    CHECK(parse_lelt(w, x.str()) == x);
    CHECK(parse_lelt(w, "3,-4,9,0") == normalize(w, 3, -4, 9, 0));
    CHECK_THROWS_AS(parse_lelt(w, "1,2"), UsageError);
    CHECK_THROWS_AS(parse_lelt(w, "a,b,c,d"), UsageError);
}

TEST_CASE("smul(6, omega) = (p-6) x3") {
    for (int p = 2; p <= 10; ++p) {
        WeightTriple w = weights(p);
        CHECK(smul(6, omega(w)) == smul(p - 6, xi(w, 3)));
    }
}
