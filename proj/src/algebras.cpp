#include "wpl/algebras.hpp"

#include <numeric>
#include <sstream>

#include "wpl/grothendieck.hpp"
#include "wpl/homspaces.hpp"

namespace wpl::algebras {

CartanMatrix cartan_nakayama(int n, int ell) {
    if (n < 1 || ell < 1) throw UsageError("cartan_nakayama needs n >= 1 and ell >= 1");
    CartanMatrix cm;
    cm.c = IntMat::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        cm.labels.push_back(std::to_string(i + 1));
        for (int j = i; j < n && j - i <= ell - 1; ++j) cm.c(i, j) = 1;
    }
    return cm;
}

CartanMatrix cartan_poset(const Poset& poset) {
    const int n = static_cast<int>(poset.elems.size());
    if (static_cast<int>(poset.le.size()) != n)
        throw UsageError("poset relation has wrong shape");
    for (const auto& row : poset.le)
        if (static_cast<int>(row.size()) != n) throw UsageError("poset relation has wrong shape");
    for (int i = 0; i < n; ++i)
        if (!poset.le[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)])
            throw NotAPartialOrder("relation is not reflexive at " + poset.elems[static_cast<std::size_t>(i)]);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i != j && poset.le[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] &&
                poset.le[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
                throw NotAPartialOrder("relation is not antisymmetric on {" +
                                       poset.elems[static_cast<std::size_t>(i)] + ", " +
                                       poset.elems[static_cast<std::size_t>(j)] + "}");
            if (poset.le[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
                for (int k = 0; k < n; ++k)
                    if (poset.le[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] &&
                        !poset.le[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)])
                        throw NotAPartialOrder("relation is not transitive via " +
                                               poset.elems[static_cast<std::size_t>(j)]);
        }
    CartanMatrix cm;
    cm.labels = poset.elems;
    cm.c = IntMat::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            cm.c(i, j) = poset.le[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] ? 1 : 0;
    return cm;
}

Poset rectangle_poset(int p) {
    if (p < 2) throw UsageError("rectangle_poset needs p >= 2");
    Poset poset;
    std::vector<std::pair<int, int>> pts;
    for (int r = 1; r <= 2; ++r)
        for (int k = 1; k <= p - 1; ++k) {
            pts.emplace_back(r, k);
            poset.elems.push_back("(" + std::to_string(r) + "," + std::to_string(k) + ")");
        }
    const std::size_t n = pts.size();
    poset.le.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            poset.le[i][j] = pts[i].first <= pts[j].first && pts[i].second <= pts[j].second;
    return poset;
}

Poset bprime_poset(int p) {
    Poset rect = rectangle_poset(p);
    // Drop the last element (2, p-1).
    rect.elems.pop_back();
    rect.le.pop_back();
    for (auto& row : rect.le) row.pop_back();
    return rect;
}

CartanMatrix canonical_cartan(int p) {
    const std::vector<grothendieck::LElt> basis = grothendieck::k0_basis(p);
    const int n = static_cast<int>(basis.size());
    CartanMatrix cm;
    cm.c = IntMat::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        cm.labels.push_back(basis[static_cast<std::size_t>(i)].str());
        for (int j = 0; j < n; ++j) {
            const auto& bi = basis[static_cast<std::size_t>(i)];
            const auto& bj = basis[static_cast<std::size_t>(j)];
            if (homspaces::ext1_dim(bi, bj) != 0)
                throw ExtObstruction("ext1(" + bi.str() + ", " + bj.str() + ") != 0 for p = " +
                                     std::to_string(p));
            cm.c(i, j) = homspaces::hom_dim(bi, bj);
        }
    }
    return cm;
}

CartanMatrix dynkin_cartan(const std::string& type) {
    // Trees as star graphs: center 0, arms listed by length.
    std::vector<int> arms;
    if (type == "A2")
        arms = {1};
    else if (type == "D4")
        arms = {1, 1, 1};
    else if (type == "E6")
        arms = {1, 2, 2};
    else if (type == "E8")
        arms = {1, 2, 4};
    else
        throw UsageError("unsupported Dynkin type " + type);
    std::vector<std::pair<int, int>> edges;
    int next = 1;
    for (int len : arms) {
        int prev = 0;
        for (int step = 0; step < len; ++step) {
            edges.emplace_back(prev, next);  // oriented away from the center
            prev = next++;
        }
    }
    const int n = next;
    // Tree: C[i][j] = 1 iff the unique undirected path runs with the arrows.
    IntMat c = IntMat::Identity(n, n);
    // Reachability closure over the DAG.
    std::vector<std::vector<int>> out(static_cast<std::size_t>(n));
    for (auto [u, v] : edges) out[static_cast<std::size_t>(u)].push_back(v);
    for (int s = 0; s < n; ++s) {
        std::vector<int> stack = {s};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : out[static_cast<std::size_t>(u)]) {
                if (c(s, v) == 0) {
                    c(s, v) = 1;
                    stack.push_back(v);
                }
            }
        }
    }
    CartanMatrix cm;
    cm.c = c;
    for (int i = 0; i < n; ++i) cm.labels.push_back(std::to_string(i));
    return cm;
}

CoxeterData coxeter(const CartanMatrix& cartan, int bound) {
    const IntMat& c = cartan.c;
    if (c.rows() != c.cols()) throw UsageError("Cartan matrix must be square");
    CoxeterData data;
    data.bound = bound;
    IntMat ct_inv = unimodular_inverse(c.transpose().eval());
    data.phi = (-(ct_inv * c)).eval();
    data.coxpoly = char_poly(data.phi);
    data.order = matrix_order(data.phi, bound);
    return data;
}

Report check_derived_pairs(int p) {
    if (p < 2) throw UsageError("check_derived_pairs needs p >= 2");
    Report rep;
    {
        IntPoly lhs = coxeter(cartan_nakayama(2 * (p - 1), 3)).coxpoly;
        IntPoly rhs = coxeter(cartan_poset(rectangle_poset(p))).coxpoly;
        rep.add("coxpoly A(2(p-1),3) = coxpoly B(2,p-1)", lhs == rhs,
                "lhs = " + poly_to_string(lhs) + ", rhs = " + poly_to_string(rhs));
    }
    if (p >= 3) {
        IntPoly lhs = coxeter(cartan_nakayama(2 * p - 3, 3)).coxpoly;
        IntPoly rhs = coxeter(cartan_poset(bprime_poset(p))).coxpoly;
        rep.add("coxpoly A(2p-3,3) = coxpoly B'(2,p-1)", lhs == rhs,
                "lhs = " + poly_to_string(lhs) + ", rhs = " + poly_to_string(rhs));
    }
    return rep;
}

Report check_dynkin_tubular(int p) {
    if (p < 2 || p > 6) throw UsageError("check_dynkin_tubular needs 2 <= p <= 6");
    Report rep;
    IntPoly lhs = coxeter(cartan_nakayama(2 * (p - 1), 3)).coxpoly;
    if (p <= 5) {
        const char* types[4] = {"A2", "D4", "E6", "E8"};
        const std::string type = types[p - 2];
        IntPoly rhs = coxeter(dynkin_cartan(type)).coxpoly;
        rep.add("coxpoly A(2(p-1),3) = coxpoly " + type, lhs == rhs,
                "lhs = " + poly_to_string(lhs) + ", rhs = " + poly_to_string(rhs));
    } else {
        IntPoly rhs = coxeter(canonical_cartan(6)).coxpoly;
        rep.add("coxpoly A(10,3) = coxpoly of the canonical algebra for p = 6", lhs == rhs,
                "lhs = " + poly_to_string(lhs) + ", rhs = " + poly_to_string(rhs));
    }
    return rep;
}

namespace {

bool is_pm_identity(const IntMat& m, int sign) {
    return m == (IntMat::Identity(m.rows(), m.cols()) * sign).eval();
}

}  // namespace

Report fcy_check(int p) {
    if (p < 2) throw UsageError("fcy_check needs p >= 2");
    Report rep;
    const Rational chi = Rational(1, p) - Rational(1, 6);
    rep.add("chi = 1/p - 1/6 computed exactly", true, "chi = " + chi.str());
    const std::int64_t n = std::lcm<std::int64_t>(3, p);
    const std::int64_t num = n * (4 * p - 6);
    const bool integral = num % (3 * p) == 0;
    rep.add("m = n(4p-6)/(3p) is an integer", integral,
            "n = " + std::to_string(n) + ", n(4p-6) = " + std::to_string(num));
    if (!integral) return rep;
    const std::int64_t m = num / (3 * p);
    // Cross-check m/n = 1 - 2 chi.
    rep.add("m/n = 1 - 2*chi", Rational(m, n) == Rational(1) - Rational(2) * chi,
            "m/n = " + Rational(m, n).str());
    const CoxeterData cox = coxeter(cartan_nakayama(2 * (p - 1), 3));
    const int sign = ((m + n) % 2 == 0) ? 1 : -1;
    IntMat pw = int_matrix_power(cox.phi, static_cast<int>(n));
    rep.add("phi^n = (-1)^{m+n} I with n = " + std::to_string(n) + ", m = " + std::to_string(m),
            is_pm_identity(pw, sign),
            std::string("expected ") + (sign > 0 ? "+I" : "-I"));
    if (p == 2) {
        IntMat cube = int_matrix_power(cox.phi, 3);
        rep.add("p = 2 canceled fraction: phi^3 = I", is_pm_identity(cube, 1), "");
    }
    return rep;
}

Report coxeter_number_check(int p) {
    if (p < 2) throw UsageError("coxeter_number_check needs p >= 2");
    Report rep;
    const CoxeterData cox = coxeter(cartan_nakayama(2 * (p - 1), 3));
    const std::int64_t expected = (p == 2) ? 3 : std::lcm<std::int64_t>(6, p);
    const bool found = cox.order.has_value();
    rep.add("order(phi) = " + std::string(p == 2 ? "3" : "lcm(6,p) = " + std::to_string(expected)),
            found && *cox.order == expected,
            found ? "computed order " + std::to_string(*cox.order)
                  : "no order found up to bound " + std::to_string(cox.bound));
    if (p >= 3 && expected % 2 == 0 && found) {
        IntMat half = int_matrix_power(cox.phi, static_cast<int>(expected / 2));
        const bool is_minus = is_pm_identity(half, -1);
        rep.add("phi^{h/2} = -I iff p odd", is_minus == (p % 2 == 1),
                std::string("phi^{h/2} is ") + (is_minus ? "-I" : "not -I"));
    }
    if (p == 4 && found) {
        // Table 2 prints 24 here; the proposition value lcm(6,4) = 12 is what
        // the matrix order must decide. Informational, never fatal.
        rep.add("stored table value 24 for p = 4 vs computed order", true,
                "computed order " + std::to_string(*cox.order) +
                    "; stored 24 disagrees with the proposition value 12");
    }
    return rep;
}

namespace {

struct StoredAde {
    const char* cy;
    const char* chi;
    std::int64_t h;
    const char* type;
    const char* repr;
};

// Published row values for p = 2..9.
const StoredAde kStored[8] = {
    {"1/3", "1/3", 3, "A2", "repr.-finite"},
    {"2/3", "1/6", 6, "D4", "repr.-finite"},
    {"10/12", "1/12", 24, "E6", "repr.-finite"},
    {"14/15", "1/30", 30, "E8", "repr.-finite"},
    {"6/6", "0", 6, "(2,3,6)", "tubular"},
    {"22/21", "-1/42", 42, "<2,3,7>", "wild, new type"},
    {"26/24", "-1/12", 24, "<2,3,8>", "wild, new type"},
    {"10/9", "-1/18", 18, "<2,3,9>", "wild, new type"},
};

}  // namespace

std::vector<AdeRow> ade_rows(int p_lo, int p_hi) {
    if (p_lo < 2 || p_hi > 9 || p_lo > p_hi)
        throw UsageError("ade table covers 2 <= p <= 9");
    std::vector<AdeRow> rows;
    for (int p = p_lo; p <= p_hi; ++p) {
        const StoredAde& stored = kStored[p - 2];
        AdeRow row;
        row.p = p;
        std::int64_t n = std::lcm<std::int64_t>(3, p);
        std::int64_t m = n * (4 * p - 6) / (3 * p);
        if (p == 2) {
            // phi^3 = I already, so the factor 2 cancels: 2/6 prints as 1/3.
            m /= 2;
            n /= 2;
        }
        row.cy = std::to_string(m) + "/" + std::to_string(n);
        row.cy_flag = row.cy != stored.cy;
        row.chi = (Rational(1, p) - Rational(1, 6)).str();
        row.chi_flag = row.chi != stored.chi;
        const CoxeterData cox = coxeter(cartan_nakayama(2 * (p - 1), 3));
        row.h = cox.order ? std::to_string(*cox.order) : "unbounded";
        row.h_flag = !cox.order || *cox.order != stored.h;
        row.type = stored.type;
        row.repr = stored.repr;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string ade_table(int p_lo, int p_hi) {
    const std::vector<AdeRow> rows = ade_rows(p_lo, p_hi);
    auto mark = [](const std::string& s, bool flag) { return flag ? s + "*" : s; };
    std::vector<std::vector<std::string>> cols;
    cols.push_back({"p", "CY-dim", "chi", "h", "type", "repr. type"});
    for (const AdeRow& r : rows)
        cols.push_back({std::to_string(r.p), mark(r.cy, r.cy_flag), mark(r.chi, r.chi_flag),
                        mark(r.h, r.h_flag), r.type, r.repr});
    std::vector<std::size_t> width(cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (const std::string& s : cols[c]) width[c] = std::max(width[c], s.size());
    std::ostringstream os;
    for (std::size_t line = 0; line < 6; ++line) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const std::string& s = cols[c][line];
            os << s << std::string(width[c] - s.size(), ' ');
            os << (c + 1 == cols.size() ? "" : "  ");
        }
        os << "\n";
    }
    bool any_flag = false;
    for (const AdeRow& r : rows) any_flag = any_flag || r.cy_flag || r.chi_flag || r.h_flag;
    if (any_flag) {
        os << "* computed value differs from the stored table entry:";
        for (const AdeRow& r : rows) {
            const StoredAde& stored = kStored[r.p - 2];
            if (r.cy_flag) os << " CY(p=" << r.p << ") stored " << stored.cy << ";";
            if (r.chi_flag) os << " chi(p=" << r.p << ") stored " << stored.chi << ";";
            if (r.h_flag) os << " h(p=" << r.p << ") stored " << stored.h << ";";
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace wpl::algebras
