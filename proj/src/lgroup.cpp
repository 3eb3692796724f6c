#include "wpl/lgroup.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "wpl/linalg.hpp"

namespace wpl::lgroup {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

void require_233p(const WeightTriple& w, const char* op) {
    if (w.p1 != 2 || w.p2 != 3)
        throw UsageError(std::string(op) + " requires the weight triple (2,3,p)");
}

std::string triple_str(const WeightTriple& w) {
    return "(" + std::to_string(w.p1) + "," + std::to_string(w.p2) + "," + std::to_string(w.p3) +
           ")";
}

}  // namespace

WeightTriple weights(int p) {
    if (p < 2) throw UsageError("weight p must be >= 2, got " + std::to_string(p));
    return WeightTriple{2, 3, p};
}

LElt::LElt(WeightTriple w, std::int64_t a1, std::int64_t a2, std::int64_t a3, std::int64_t m)
    : w_(w) {
    if (w.p1 < 2 || w.p2 < 2 || w.p3 < 2)
        throw UsageError("all weights must be >= 2, got " + triple_str(w));
    const std::int64_t ps[3] = {w.p1, w.p2, w.p3};
    std::int64_t as[3] = {a1, a2, a3};
    std::int64_t carry = m;
    for (int i = 0; i < 3; ++i) {
        std::int64_t q = floor_div(as[i], ps[i]);
        as[i] -= q * ps[i];
        carry = checked_add(carry, q);
    }
    n1_ = as[0];
    n2_ = as[1];
    n3_ = as[2];
    m_ = carry;
}

std::string LElt::str() const {
    std::ostringstream os;
    os << n1_ << "," << n2_ << "," << n3_ << "," << m_;
    return os.str();
}

LElt normalize(WeightTriple w, std::int64_t a1, std::int64_t a2, std::int64_t a3, std::int64_t m) {
    return LElt(w, a1, a2, a3, m);
}

LElt parse_lelt(WeightTriple w, const std::string& s) {
    std::array<std::int64_t, 4> v{};
    std::size_t pos = 0;
    for (int i = 0; i < 4; ++i) {
        std::size_t comma = (i == 3) ? s.size() : s.find(',', pos);
        if (comma == std::string::npos) throw UsageError("element needs 4 coefficients: " + s);
        try {
            std::size_t used = 0;
            v[static_cast<std::size_t>(i)] = std::stoll(s.substr(pos, comma - pos), &used);
            if (used != comma - pos) throw UsageError("malformed coefficient in: " + s);
        } catch (const std::logic_error&) {
            throw UsageError("malformed coefficient in: " + s);
        }
        pos = comma + 1;
    }
    return normalize(w, v[0], v[1], v[2], v[3]);
}

LElt zero(WeightTriple w) { return LElt(w, 0, 0, 0, 0); }

LElt xi(WeightTriple w, int i) {
    if (i < 1 || i > 3) throw UsageError("generator index must be 1, 2 or 3");
    return LElt(w, i == 1, i == 2, i == 3, 0);
}

LElt c(WeightTriple w) { return LElt(w, 0, 0, 0, 1); }

LElt omega(WeightTriple w) { return LElt(w, -1, -1, -1, 1); }

LElt xbar(WeightTriple w, int i) { return add(xi(w, i), omega(w)); }

LElt add(const LElt& x, const LElt& y) {
    if (!(x.w() == y.w()))
        throw UsageError("mismatched weight triples " + triple_str(x.w()) + " vs " +
                         triple_str(y.w()));
    return LElt(x.w(), checked_add(x.n1(), y.n1()), checked_add(x.n2(), y.n2()),
                checked_add(x.n3(), y.n3()), checked_add(x.m(), y.m()));
}

LElt neg(const LElt& x) { return LElt(x.w(), -x.n1(), -x.n2(), -x.n3(), -x.m()); }

LElt smul(std::int64_t k, const LElt& x) {
    return LElt(x.w(), checked_mul(k, x.n1()), checked_mul(k, x.n2()), checked_mul(k, x.n3()),
                checked_mul(k, x.m()));
}

LElt sub(const LElt& x, const LElt& y) { return add(x, neg(y)); }

bool is_nonneg(const LElt& x) { return x.m() >= 0; }

std::int64_t delta(const LElt& x) {
    require_233p(x.w(), "delta");
    const std::int64_t ell = std::lcm<std::int64_t>(6, x.w().p3);
    return checked_add(
        checked_add(checked_mul(x.n1(), ell / x.w().p1), checked_mul(x.n2(), ell / x.w().p2)),
        checked_add(checked_mul(x.n3(), ell / x.w().p3), checked_mul(x.m(), ell)));
}

BarClass bar_class(const LElt& x) {
    require_233p(x.w(), "bar_class");
    const int r1 = static_cast<int>(x.n1());
    const int r2 = static_cast<int>(x.n2());
    if (r1 == 0 && r2 == 0) return BarClass{Bar::Upper, 0, 0};
    if (r1 == 0 && r2 == 1) return BarClass{Bar::Lower, 0, 1};
    return BarClass{Bar::Fading, r1, r2};
}

std::string tau_pattern(const LElt& x) {
    require_233p(x.w(), "tau_pattern");
    std::string s(6, '-');
    const LElt om = omega(x.w());
    LElt cur = x;
    for (int k = 0; k < 6; ++k) {
        if (bar_class(cur).persistent()) s[static_cast<std::size_t>(k)] = '+';
        cur = add(cur, om);
    }
    return s;
}

namespace {

// Smith normal form diagonal of a small integer matrix.
std::vector<std::int64_t> snf_diagonal(std::vector<std::vector<std::int64_t>> m) {
    const int rows = static_cast<int>(m.size());
    const int cols = rows ? static_cast<int>(m[0].size()) : 0;
    std::vector<std::int64_t> diag;
    int t = 0;
    while (t < rows && t < cols) {
        // Find a nonzero pivot in the remaining block.
        int pi = -1, pj = -1;
        for (int i = t; i < rows && pi < 0; ++i)
            for (int j = t; j < cols; ++j)
                if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi < 0) break;
        std::swap(m[static_cast<std::size_t>(t)], m[static_cast<std::size_t>(pi)]);
        for (int i = 0; i < rows; ++i)
            std::swap(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)],
                      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(pj)]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < rows; ++i) {
                std::int64_t q = floor_div(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)],
                                           m[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)]);
                if (q != 0)
                    for (int j = t; j < cols; ++j)
                        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
                            q * m[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)];
                if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] != 0) {
                    std::swap(m[static_cast<std::size_t>(t)], m[static_cast<std::size_t>(i)]);
                    clean = false;
                }
            }
            for (int j = t + 1; j < cols; ++j) {
                std::int64_t q = floor_div(m[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)],
                                           m[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)]);
                if (q != 0)
                    for (int i = t; i < rows; ++i)
                        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
                            q * m[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)];
                if (m[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)] != 0) {
                    for (int i = 0; i < rows; ++i)
                        std::swap(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)],
                                  m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
                    clean = false;
                }
            }
        }
        // Divisibility pass: pivot must divide every remaining entry.
        bool divides = true;
        for (int i = t + 1; i < rows && divides; ++i)
            for (int j = t + 1; j < cols; ++j)
                if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] %
                        m[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)] !=
                    0) {
                    for (int jj = t; jj < cols; ++jj)
                        m[static_cast<std::size_t>(t)][static_cast<std::size_t>(jj)] +=
                            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(jj)];
                    divides = false;
                    break;
                }
        if (!divides) continue;  // redo this pivot with the merged row
        diag.push_back(std::llabs(m[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)]));
        ++t;
    }
    return diag;
}

}  // namespace

GroupStructure structure(WeightTriple w) {
    std::vector<std::vector<std::int64_t>> rel = {
        {w.p1, -w.p2, 0},
        {w.p1, 0, -w.p3},
    };
    std::vector<std::int64_t> diag = snf_diagonal(std::move(rel));
    GroupStructure gs;
    gs.free_rank = 3 - static_cast<int>(diag.size());
    for (std::int64_t d : diag)
        if (d > 1) gs.torsion.push_back(d);
    return gs;
}

LElt coset_rep(const LElt& x, const LElt& v) {
    const std::int64_t dv = delta(v);
    if (dv == 0) throw InfiniteQuotient("delta(v) = 0 for v = " + v.str());
    const LElt vpos = dv > 0 ? v : neg(v);
    const std::int64_t d = dv > 0 ? dv : -dv;
    const std::int64_t k = floor_div(delta(x), d);
    return sub(x, smul(k, vpos));
}

std::vector<LElt> quotient(const LElt& v) {
    const std::int64_t dv = delta(v);
    if (dv == 0) throw InfiniteQuotient("delta(v) = 0 for v = " + v.str());
    const WeightTriple w = v.w();
    auto key = [](const LElt& x) { return std::make_tuple(x.n1(), x.n2(), x.n3(), x.m()); };
    std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t>> seen;
    std::vector<LElt> reps;
    std::deque<LElt> work;
    const LElt start = coset_rep(zero(w), v);
    seen.insert(key(start));
    reps.push_back(start);
    work.push_back(start);
    while (!work.empty()) {
        LElt cur = work.front();
        work.pop_front();
        for (int i = 1; i <= 3; ++i)
            for (int sgn : {1, -1}) {
                LElt next = coset_rep(add(cur, smul(sgn, xi(w, i))), v);
                if (seen.insert(key(next)).second) {
                    reps.push_back(next);
                    work.push_back(next);
                }
            }
    }
    std::sort(reps.begin(), reps.end(), [](const LElt& a, const LElt& b) {
        return std::make_tuple(delta(a), a.n1(), a.n2(), a.n3(), a.m()) <
               std::make_tuple(delta(b), b.n1(), b.n2(), b.n3(), b.m());
    });
    return reps;
}

std::int64_t class_order(const LElt& x, const LElt& v) {
    const std::int64_t bound = static_cast<std::int64_t>(quotient(v).size());
    const LElt z = coset_rep(zero(x.w()), v);
    for (std::int64_t k = 1; k <= bound; ++k)
        if (coset_rep(smul(k, x), v) == z) return k;
    throw Error("class order exceeds quotient size (inconsistent state)");
}

Report identity_suite(int p) {
    Report rep;
    const WeightTriple w = weights(p);
    const LElt om = omega(w);
    auto check_eq = [&rep](const std::string& claim, const LElt& lhs, const LElt& rhs) {
        rep.add(claim, lhs == rhs, "lhs = " + lhs.str() + ", rhs = " + rhs.str());
    };

    check_eq("xbar1 = xbar2 + xbar3", xbar(w, 1), add(xbar(w, 2), xbar(w, 3)));
    check_eq("x2 = 2*xbar3", xi(w, 2), smul(2, xbar(w, 3)));
    check_eq("x1 = 3*xbar3", xi(w, 1), smul(3, xbar(w, 3)));
    check_eq("6*omega = (p-6)*x3", smul(6, om), smul(p - 6, xi(w, 3)));

    const std::int64_t l3p = std::lcm<std::int64_t>(3, p);
    const std::int64_t num = l3p * (p - 6);
    if (num % (3 * p) != 0) {
        rep.add("lcm(3,p)*(p-6)/(3p) is an integer", false,
                "lcm(3,p)*(p-6) = " + std::to_string(num) + " not divisible by " +
                    std::to_string(3 * p));
    } else {
        check_eq("lcm(3,p)*omega = lcm(3,p)*(p-6)/(3p)*x1", smul(l3p, om),
                 smul(num / (3 * p), xi(w, 1)));
    }

    // Classes of k*omega modulo Zx3 for k = 0..5, as residues (n1 mod 2, n2 mod 3).
    const int expect[6][2] = {{0, 0}, {1, 2}, {0, 1}, {1, 0}, {0, 2}, {1, 1}};
    for (int k = 0; k < 6; ++k) {
        LElt kw = smul(k, om);
        bool ok = kw.n1() == expect[k][0] && kw.n2() == expect[k][1];
        rep.add(std::to_string(k) + "*omega mod Zx3 has residues (" +
                    std::to_string(expect[k][0]) + "," + std::to_string(expect[k][1]) + ")",
                ok, "normal form " + kw.str());
    }
    return rep;
}

}  // namespace wpl::lgroup
