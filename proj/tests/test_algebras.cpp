#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "wpl/algebras.hpp"
#include "wpl/grothendieck.hpp"

using namespace wpl;
using namespace wpl::algebras;

namespace {

IntMat from_rows(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    IntMat m(static_cast<Eigen::Index>(rows.size()),
             static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& r : rows) {
        Eigen::Index j = 0;
        for (std::int64_t v : r) m(i, j++) = v;
        ++i;
    }
    return m;
}

bool self_dual(const IntPoly& p) {
    IntPoly rev(p.rbegin(), p.rend());
    IntPoly negrev = rev;
    for (auto& c : negrev) c = -c;
    return p == rev || p == negrev;
}

}  // namespace

TEST_CASE("nakayama cartan matrices") {
    CHECK(cartan_nakayama(2, 3).c == from_rows({{1, 1}, {0, 1}}));
    IntMat a43 = cartan_nakayama(4, 3).c;
    CHECK(a43.row(0) == from_rows({{1, 1, 1, 0}}).row(0));
    CHECK(cartan_nakayama(8, 3).c.rows() == 8);
    CHECK_THROWS_AS(cartan_nakayama(0, 3), UsageError);
}

TEST_CASE("poset cartan matrices and validation") {
    CHECK(cartan_poset(rectangle_poset(2)).c == from_rows({{1, 1}, {0, 1}}));

    Poset r3 = rectangle_poset(3);
    REQUIRE(r3.elems.size() == 4);
    CHECK(r3.elems[0] == "(1,1)");
    CHECK(r3.elems[1] == "(1,2)");
    CHECK(r3.elems[2] == "(2,1)");
    CHECK(r3.elems[3] == "(2,2)");
    IntMat c3 = cartan_poset(r3).c;
    std::int64_t sums[4];
    for (int i = 0; i < 4; ++i) sums[i] = c3.row(i).sum();
    CHECK(sums[0] == 4);
    CHECK(sums[1] == 2);
    CHECK(sums[2] == 2);
    CHECK(sums[3] == 1);

    CHECK(bprime_poset(3).elems ==
          std::vector<std::string>{"(1,1)", "(1,2)", "(2,1)"});

    Poset bad;
    bad.elems = {"a", "b", "c"};
    bad.le = {{true, true, false}, {false, true, true}, {false, false, true}};
    CHECK_THROWS_AS(cartan_poset(bad), NotAPartialOrder);  // a<=b<=c but not a<=c
    Poset irr;
    irr.elems = {"a"};
    irr.le = {{false}};
    CHECK_THROWS_AS(cartan_poset(irr), NotAPartialOrder);
    Poset sym;
    sym.elems = {"a", "b"};
    sym.le = {{true, true}, {true, true}};
    CHECK_THROWS_AS(cartan_poset(sym), NotAPartialOrder);
}

TEST_CASE("canonical cartan matrix") {
    for (int p : {2, 3, 5, 6, 9}) {
        CartanMatrix cm = canonical_cartan(p);
        const int n = p + 4;
        REQUIRE(cm.c.rows() == n);
        // Entry (0, c) counts dim S_c = 2; diagonal is 1.
        CHECK(cm.c(0, n - 1) == 2);
        for (int i = 0; i < n; ++i) CHECK(cm.c(i, i) == 1);
        CHECK(std::abs(det_bareiss(cm.c)) == 1);
        // Same matrix as the K0 Gram matrix (ext1 vanishes on the basis).
        CHECK(cm.c == grothendieck::gram(p));
    }
}

TEST_CASE("coxeter data examples") {
    CoxeterData a2 = coxeter(CartanMatrix{from_rows({{1, 1}, {0, 1}}), {"1", "2"}});
    CHECK(a2.phi == from_rows({{-1, -1}, {1, 0}}));
    CHECK(a2.coxpoly == IntPoly{1, 1, 1});
    CHECK(a2.order == 3);

    CoxeterData one = coxeter(CartanMatrix{from_rows({{1}}), {"1"}});
    CHECK(one.phi == from_rows({{-1}}));
    CHECK(one.order == 2);

    CHECK(coxeter(cartan_nakayama(8, 3)).order == 30);

    CHECK_THROWS_AS(coxeter(CartanMatrix{from_rows({{2}}), {"1"}}), NotUnimodular);
}

TEST_CASE("coxpoly invariants: integer, +-1 constant term, self-dual spectrum") {
    for (int p = 2; p <= 9; ++p) {
        for (const CartanMatrix& cm :
             {cartan_nakayama(2 * (p - 1), 3), cartan_poset(rectangle_poset(p)),
              canonical_cartan(p)}) {
            CoxeterData data = coxeter(cm);
            CHECK(std::abs(data.coxpoly.front()) == 1);
            CHECK(data.coxpoly.back() == 1);
            CHECK(self_dual(data.coxpoly));
        }
    }
}

TEST_CASE("coxpoly is invariant under reordering and reversal") {
    std::mt19937 rng(55);
    for (int p : {3, 5, 8}) {
        Poset poset = rectangle_poset(p);
        const std::size_t n = poset.elems.size();
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0u);
        std::shuffle(perm.begin(), perm.end(), rng);
        Poset shuffled;
        shuffled.elems.resize(n);
        shuffled.le.assign(n, std::vector<bool>(n, false));
        for (std::size_t i = 0; i < n; ++i) {
            shuffled.elems[i] = poset.elems[perm[i]];
            for (std::size_t j = 0; j < n; ++j) shuffled.le[i][j] = poset.le[perm[i]][perm[j]];
        }
        CHECK(coxeter(cartan_poset(poset)).coxpoly == coxeter(cartan_poset(shuffled)).coxpoly);

        // Nakayama vertex reversal: C -> reverse both indices.
        CartanMatrix nak = cartan_nakayama(2 * (p - 1), 3);
        const Eigen::Index m = nak.c.rows();
        CartanMatrix rev;
        rev.c = IntMat::Zero(m, m);
        rev.labels = nak.labels;
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = 0; j < m; ++j) rev.c(i, j) = nak.c(m - 1 - j, m - 1 - i);
        CHECK(coxeter(nak).coxpoly == coxeter(rev).coxpoly);
    }
}

TEST_CASE("derived pairs share coxeter polynomials for p = 2..9") {
    for (int p = 2; p <= 9; ++p) {
        Report rep = check_derived_pairs(p);
        INFO("p = " << p);
        CHECK(rep.lines.size() == (p == 2 ? 1u : 2u));
        for (const ReportLine& line : rep.lines) {
            INFO(line.claim << " : " << line.detail);
            CHECK(line.ok);
        }
    }
}

TEST_CASE("dynkin and tubular matches for p = 2..6") {
    for (int p = 2; p <= 6; ++p) {
        Report rep = check_dynkin_tubular(p);
        INFO("p = " << p);
        for (const ReportLine& line : rep.lines) {
            INFO(line.claim << " : " << line.detail);
            CHECK(line.ok);
        }
    }
    CHECK_THROWS_AS(check_dynkin_tubular(7), UsageError);
    // p = 2 is the A2 polynomial.
    CHECK(coxeter(cartan_nakayama(2, 3)).coxpoly == IntPoly{1, 1, 1});
}

TEST_CASE("fractional Calabi-Yau identities for p = 2..9") {
    for (int p = 2; p <= 9; ++p) {
        Report rep = fcy_check(p);
        INFO("p = " << p);
        for (const ReportLine& line : rep.lines) {
            INFO(line.claim << " : " << line.detail);
            CHECK(line.ok);
        }
    }
    // Spot values: p=5 gives n=15, m=14; p=8 gives n=24, m=26.
    Report r5 = fcy_check(5);
    bool found = false;
    for (const ReportLine& line : r5.lines)
        if (line.claim.find("n = 15, m = 14") != std::string::npos) found = true;
    CHECK(found);
    Report r8 = fcy_check(8);
    found = false;
    for (const ReportLine& line : r8.lines)
        if (line.claim.find("n = 24, m = 26") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("coxeter numbers for p = 2..9") {
    for (int p = 2; p <= 9; ++p) {
        Report rep = coxeter_number_check(p);
        INFO("p = " << p);
        for (const ReportLine& line : rep.lines) {
            INFO(line.claim << " : " << line.detail);
            CHECK(line.ok);
        }
    }
    // The computed orders themselves.
    const std::int64_t expected[8] = {3, 6, 12, 30, 6, 42, 24, 18};
    for (int p = 2; p <= 9; ++p) {
        CoxeterData cox = coxeter(cartan_nakayama(2 * (p - 1), 3));
        REQUIRE(cox.order.has_value());
        CHECK(*cox.order == expected[p - 2]);
    }
}

TEST_CASE("coxpoly of the K0 coxeter matrix matches the canonical algebra") {
    for (int p = 2; p <= 9; ++p) {
        IntPoly lhs = char_poly(grothendieck::coxeter_coh(p));
        IntPoly rhs = coxeter(canonical_cartan(p)).coxpoly;
        INFO("p = " << p);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("ade table stores and flags") {
    std::vector<AdeRow> rows = ade_rows(2, 9);
    REQUIRE(rows.size() == 8);
    CHECK(rows[0].cy == "1/3");
    CHECK(rows[0].chi == "1/3");
    CHECK(rows[0].h == "3");
    CHECK(rows[0].type == "A2");
    CHECK(!rows[0].h_flag);
    CHECK(rows[1].chi == "1/6");
    CHECK(rows[1].h == "6");
    CHECK(rows[1].type == "D4");
    // p = 4: computed order 12 differs from the stored 24.
    CHECK(rows[2].h == "12");
    CHECK(rows[2].h_flag);
    CHECK(!rows[2].cy_flag);
    // p = 8: computed chi -1/24 differs from the stored -1/12.
    CHECK(rows[6].chi == "-1/24");
    CHECK(rows[6].chi_flag);
    CHECK(!rows[6].h_flag);
    // All other cells agree with the stored table.
    for (const AdeRow& r : rows) {
        if (r.p != 4) CHECK(!r.h_flag);
        if (r.p != 8) CHECK(!r.chi_flag);
        CHECK(!r.cy_flag);
    }
    CHECK(rows[5].type == "<2,3,7>");
    CHECK(rows[5].repr == "wild, new type");
    CHECK(rows[4].repr == "tubular");

    std::string table = ade_table(2, 9);
    CHECK(table.find("12*") != std::string::npos);
    CHECK(table.find("-1/24*") != std::string::npos);
    CHECK(table.find("* computed value differs") != std::string::npos);
    CHECK_THROWS_AS(ade_rows(1, 9), UsageError);
    CHECK_THROWS_AS(ade_rows(2, 10), UsageError);
}
