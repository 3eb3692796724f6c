#include "wpl/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <tuple>

namespace wpl {

Rational parse_rational(const std::string& s) {
    std::size_t slash = s.find('/');
    try {
        std::size_t used = 0;
        std::int64_t num = std::stoll(s.substr(0, slash), &used);
        if (used != (slash == std::string::npos ? s.size() : slash))
            throw UsageError("malformed rational: " + s);
        if (slash == std::string::npos) return Rational(num);
        std::int64_t den = std::stoll(s.substr(slash + 1), &used);
        if (used != s.size() - slash - 1) throw UsageError("malformed rational: " + s);
        return Rational(num, den);
    } catch (const std::logic_error&) {
        throw UsageError("malformed rational: " + s);
    }
}

namespace {

using i128 = __int128;

constexpr i128 kGuard = i128(1) << 100;

void guard(i128 v) {
    if (v > kGuard || v < -kGuard) throw Error("integer overflow in exact elimination");
}

std::int64_t narrow(i128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw Error("integer overflow narrowing to int64");
    return static_cast<std::int64_t>(v);
}

// Dense __int128 working copy of an integer matrix.
std::vector<i128> widen(const IntMat& a) {
    std::vector<i128> m(static_cast<std::size_t>(a.rows() * a.cols()));
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            m[static_cast<std::size_t>(i * a.cols() + j)] = a(i, j);
    return m;
}

}  // namespace

RatMat to_rational(const IntMat& a) {
    RatMat r(a.rows(), a.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) r(i, j) = Rational(a(i, j));
    return r;
}

std::int64_t det_bareiss(const IntMat& a) {
    if (a.rows() != a.cols()) throw Error("determinant of non-square matrix");
    const int n = static_cast<int>(a.rows());
    if (n == 0) return 1;
    std::vector<i128> m = widen(a);
    auto at = [&](int i, int j) -> i128& { return m[static_cast<std::size_t>(i) * n + j]; };
    i128 prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (at(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (at(i, k) != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(at(k, j), at(piv, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                i128 v = at(i, j) * at(k, k) - at(i, k) * at(k, j);
                guard(v);
                at(i, j) = v / prev;  // exact: Bareiss one-step condensation
            }
            at(i, k) = 0;
        }
        prev = at(k, k);
    }
    return narrow(sign * at(n - 1, n - 1));
}

std::vector<std::int64_t> char_poly(const IntMat& a) {
    if (a.rows() != a.cols()) throw Error("char_poly of non-square matrix");
    const int n = static_cast<int>(a.rows());
    std::vector<std::int64_t> coeff(static_cast<std::size_t>(n) + 1, 0);
    coeff[static_cast<std::size_t>(n)] = 1;
    if (n == 0) return coeff;
    std::vector<i128> aw = widen(a);
    auto A = [&](int i, int j) -> i128 { return aw[static_cast<std::size_t>(i) * n + j]; };
    // Faddeev-LeVerrier: B_0 = I, c_k = -tr(A B_{k-1}) / k, B_k = A B_{k-1} + c_k I.
    std::vector<i128> B(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) B[static_cast<std::size_t>(i) * n + i] = 1;
    std::vector<i128> AB(static_cast<std::size_t>(n) * n, 0);
    for (int k = 1; k <= n; ++k) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                i128 s = 0;
                for (int l = 0; l < n; ++l) s += A(i, l) * B[static_cast<std::size_t>(l) * n + j];
                guard(s);
                AB[static_cast<std::size_t>(i) * n + j] = s;
            }
        i128 tr = 0;
        for (int i = 0; i < n; ++i) tr += AB[static_cast<std::size_t>(i) * n + i];
        if (tr % k != 0) throw Error("non-exact division in char_poly");
        i128 ck = -tr / k;
        coeff[static_cast<std::size_t>(n - k)] = narrow(ck);
        B = AB;
        for (int i = 0; i < n; ++i) B[static_cast<std::size_t>(i) * n + i] += ck;
    }
    return coeff;
}

IntMat adjugate(const IntMat& a) {
    if (a.rows() != a.cols()) throw Error("adjugate of non-square matrix");
    const int n = static_cast<int>(a.rows());
    if (n == 0) return IntMat::Identity(0, 0);
    if (n == 1) return IntMat::Identity(1, 1);
    std::vector<i128> aw = widen(a);
    auto A = [&](int i, int j) -> i128 { return aw[static_cast<std::size_t>(i) * n + j]; };
    std::vector<i128> B(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) B[static_cast<std::size_t>(i) * n + i] = 1;
    std::vector<i128> AB(static_cast<std::size_t>(n) * n, 0);
    // Stop after B_{n-1}; adj(A) = (-1)^{n-1} B_{n-1}.
    for (int k = 1; k <= n - 1; ++k) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                i128 s = 0;
                for (int l = 0; l < n; ++l) s += A(i, l) * B[static_cast<std::size_t>(l) * n + j];
                guard(s);
                AB[static_cast<std::size_t>(i) * n + j] = s;
            }
        i128 tr = 0;
        for (int i = 0; i < n; ++i) tr += AB[static_cast<std::size_t>(i) * n + i];
        if (tr % k != 0) throw Error("non-exact division in adjugate");
        i128 ck = -tr / k;
        B = AB;
        for (int i = 0; i < n; ++i) B[static_cast<std::size_t>(i) * n + i] += ck;
    }
    IntMat adj(n, n);
    const int sgn = (n % 2 == 0) ? -1 : 1;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            adj(i, j) = narrow(sgn * B[static_cast<std::size_t>(i) * n + j]);
    return adj;
}

IntMat unimodular_inverse(const IntMat& a) {
    std::int64_t d = det_bareiss(a);
    if (d != 1 && d != -1) throw NotUnimodular("matrix determinant is " + std::to_string(d));
    return (adjugate(a) * d).eval();
}

IntMat int_matrix_power(const IntMat& a, int k) {
    if (a.rows() != a.cols()) throw Error("power of non-square matrix");
    IntMat r = IntMat::Identity(a.rows(), a.cols());
    IntMat base = a;
    while (k > 0) {
        if (k & 1) {
            IntMat nr(r.rows(), r.cols());
            for (Eigen::Index i = 0; i < r.rows(); ++i)
                for (Eigen::Index j = 0; j < r.cols(); ++j) {
                    std::int64_t s = 0;
                    for (Eigen::Index l = 0; l < r.cols(); ++l)
                        s = checked_add(s, checked_mul(r(i, l), base(l, j)));
                    nr(i, j) = s;
                }
            r = nr;
        }
        k >>= 1;
        if (k == 0) break;
        IntMat nb(base.rows(), base.cols());
        for (Eigen::Index i = 0; i < base.rows(); ++i)
            for (Eigen::Index j = 0; j < base.cols(); ++j) {
                std::int64_t s = 0;
                for (Eigen::Index l = 0; l < base.cols(); ++l)
                    s = checked_add(s, checked_mul(base(i, l), base(l, j)));
                nb(i, j) = s;
            }
        base = nb;
    }
    return r;
}

std::optional<int> matrix_order(const IntMat& a, int bound) {
    if (a.rows() != a.cols()) throw Error("order of non-square matrix");
    const IntMat id = IntMat::Identity(a.rows(), a.cols());
    IntMat p = a;
    try {
        for (int k = 1; k <= bound; ++k) {
            if (p == id) return k;
            if (k < bound) p = (p * a).eval();
            // Entry growth implies non-periodicity within any reachable bound.
            for (Eigen::Index i = 0; i < p.rows(); ++i)
                for (Eigen::Index j = 0; j < p.cols(); ++j)
                    if (std::llabs(p(i, j)) > (std::int64_t(1) << 50)) return std::nullopt;
        }
    } catch (const Error&) {
        return std::nullopt;
    }
    return std::nullopt;
}

std::vector<int> rref_in_place(RatMat& a) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
        int piv = -1;
        for (int i = row; i < a.rows(); ++i)
            if (!a(i, col).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != row) a.row(piv).swap(a.row(row));
        Rational inv = Rational(1) / a(row, col);
        for (int j = col; j < a.cols(); ++j) a(row, j) *= inv;
        for (int i = 0; i < a.rows(); ++i) {
            if (i == row || a(i, col).is_zero()) continue;
            Rational f = a(i, col);
            for (int j = col; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

int rank(const RatMat& a) {
    RatMat c = a;
    return static_cast<int>(rref_in_place(c).size());
}

RatMat kernel_basis(const RatMat& a) {
    RatMat c = a;
    std::vector<int> pivots = rref_in_place(c);
    std::vector<bool> is_pivot(static_cast<std::size_t>(a.cols()), false);
    for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    const int free_count = static_cast<int>(a.cols()) - static_cast<int>(pivots.size());
    RatMat k = RatMat::Constant(a.cols(), free_count, Rational(0));
    int fc = 0;
    for (int col = 0; col < a.cols(); ++col) {
        if (is_pivot[static_cast<std::size_t>(col)]) continue;
        k(col, fc) = Rational(1);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            k(pivots[r], fc) = -c(static_cast<int>(r), col);
        ++fc;
    }
    return k;
}

std::optional<RatVec> solve(const RatMat& a, const RatVec& b) {
    RatMat aug(a.rows(), a.cols() + 1);
    aug.leftCols(a.cols()) = a;
    aug.col(a.cols()) = b;
    std::vector<int> pivots = rref_in_place(aug);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    RatVec x = RatVec::Constant(a.cols(), Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x(pivots[r]) = aug(static_cast<int>(r), a.cols());
    return x;
}

IntVec solve_integral(const IntMat& a, const IntVec& b) {
    if (a.rows() != a.cols()) throw Error("solve_integral needs a square matrix");
    RatMat ar = to_rational(a);
    RatVec br(b.size());
    for (Eigen::Index i = 0; i < b.size(); ++i) br(i) = Rational(b(i));
    if (rank(ar) != a.rows()) throw Error("solve_integral on singular matrix");
    std::optional<RatVec> x = solve(ar, br);
    if (!x) throw Error("inconsistent square system");
    IntVec xi(a.cols());
    for (Eigen::Index i = 0; i < a.cols(); ++i) {
        if (!(*x)(i).is_integer())
            throw NonIntegralSolution("coordinate " + std::to_string(i) + " = " + (*x)(i).str());
        xi(i) = (*x)(i).num();
    }
    return xi;
}

std::string poly_to_string(const IntPoly& p, const std::string& var) {
    std::string out;
    bool first = true;
    for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k) {
        std::int64_t c = p[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        std::string term;
        std::int64_t ac = std::llabs(c);
        if (k == 0) {
            term = std::to_string(ac);
        } else {
            std::string pow = (k == 1) ? var : var + "^" + std::to_string(k);
            term = (ac == 1) ? pow : std::to_string(ac) + "*" + pow;
        }
        if (first) {
            out += (c < 0 ? "-" : "") + term;
            first = false;
        } else {
            out += (c < 0 ? " - " : " + ") + term;
        }
    }
    if (first) out = "0";
    return out;
}

RatPoly to_rational(const IntPoly& p) {
    RatPoly r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[i] = Rational(p[i]);
    return r;
}

RatPoly poly_trim(RatPoly p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    return p;
}

RatPoly poly_add(const RatPoly& a, const RatPoly& b) {
    RatPoly r(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return poly_trim(std::move(r));
}

RatPoly poly_mul(const RatPoly& a, const RatPoly& b) {
    if (a.empty() || b.empty()) return {};
    RatPoly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return poly_trim(std::move(r));
}

std::pair<RatPoly, RatPoly> poly_divmod(const RatPoly& a, const RatPoly& b) {
    RatPoly rem = poly_trim(a);
    RatPoly div = poly_trim(b);
    if (div.empty()) throw Error("polynomial division by zero");
    if (rem.size() < div.size()) return {{}, rem};
    RatPoly q(rem.size() - div.size() + 1, Rational(0));
    for (int k = static_cast<int>(q.size()) - 1; k >= 0; --k) {
        std::size_t top = div.size() - 1 + static_cast<std::size_t>(k);
        if (top >= rem.size() || rem[top].is_zero()) continue;
        Rational f = rem[top] / div.back();
        q[static_cast<std::size_t>(k)] = f;
        for (std::size_t i = 0; i < div.size(); ++i)
            rem[static_cast<std::size_t>(k) + i] -= f * div[i];
    }
    return {poly_trim(std::move(q)), poly_trim(std::move(rem))};
}

RatPoly poly_derivative(const RatPoly& a) {
    if (a.size() <= 1) return {};
    RatPoly d(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = a[i] * Rational(static_cast<std::int64_t>(i));
    return poly_trim(std::move(d));
}

RatPoly poly_gcd(RatPoly a, RatPoly b) {
    a = poly_trim(std::move(a));
    b = poly_trim(std::move(b));
    while (!b.empty()) {
        RatPoly r = poly_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rational lead = a.back();
        for (Rational& c : a) c /= lead;
    }
    return a;
}

Rational poly_eval(const RatPoly& p, const Rational& x) {
    Rational v(0);
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) v = v * x + p[static_cast<std::size_t>(i)];
    return v;
}

RatMat poly_eval_matrix(const RatPoly& p, const RatMat& a) {
    const Eigen::Index n = a.rows();
    RatMat v = RatMat::Constant(n, n, Rational(0));
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
        v = (v * a).eval();
        for (Eigen::Index d = 0; d < n; ++d) v(d, d) += p[static_cast<std::size_t>(i)];
    }
    return v;
}

std::tuple<RatPoly, RatPoly, RatPoly> poly_ext_gcd(const RatPoly& a, const RatPoly& b) {
    RatPoly r0 = poly_trim(a), r1 = poly_trim(b);
    RatPoly s0 = {Rational(1)}, s1 = {};
    RatPoly t0 = {}, t1 = {Rational(1)};
    while (!r1.empty()) {
        auto [q, r] = poly_divmod(r0, r1);
        RatPoly s2 = poly_add(s0, poly_mul({Rational(-1)}, poly_mul(q, s1)));
        RatPoly t2 = poly_add(t0, poly_mul({Rational(-1)}, poly_mul(q, t1)));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (!r0.empty()) {
        Rational lead = r0.back();
        for (Rational& c : r0) c /= lead;
        for (Rational& c : s0) c /= lead;
        for (Rational& c : t0) c /= lead;
    }
    return {r0, s0, t0};
}

RatPoly min_poly(const RatMat& a) {
    if (a.rows() != a.cols()) throw Error("min_poly of non-square matrix");
    const Eigen::Index n = a.rows();
    if (n == 0) return {Rational(1)};
    const Eigen::Index nn = n * n;
    std::vector<RatMat> powers;
    powers.push_back(RatMat::Identity(n, n));
    for (int k = 1;; ++k) {
        powers.push_back((powers.back() * a).eval());
        // Is a^k a combination of lower powers?
        RatMat sys(nn, k);
        for (int c = 0; c < k; ++c)
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = 0; j < n; ++j)
                    sys(i * n + j, c) = powers[static_cast<std::size_t>(c)](i, j);
        RatVec rhs(nn);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) rhs(i * n + j) = powers.back()(i, j);
        if (std::optional<RatVec> x = solve(sys, rhs)) {
            RatPoly m(static_cast<std::size_t>(k) + 1, Rational(0));
            m[static_cast<std::size_t>(k)] = Rational(1);
            for (int c = 0; c < k; ++c) m[static_cast<std::size_t>(c)] = -(*x)(c);
            return m;
        }
        if (k > n) throw Error("min_poly recurrence exceeded matrix size");
    }
}

namespace {

std::vector<std::int64_t> divisors(std::int64_t v) {
    v = std::llabs(v);
    std::vector<std::int64_t> d;
    for (std::int64_t i = 1; i * i <= v; ++i) {
        if (v % i == 0) {
            d.push_back(i);
            if (i != v / i) d.push_back(v / i);
        }
    }
    return d;
}

}  // namespace

std::vector<Rational> rational_roots(const RatPoly& p) {
    RatPoly q = poly_trim(p);
    if (q.empty()) throw Error("rational_roots of zero polynomial");
    std::vector<Rational> roots;
    std::size_t low = 0;
    while (low < q.size() && q[low].is_zero()) ++low;
    if (low > 0) {
        roots.push_back(Rational(0));
        q.erase(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(low));
    }
    if (q.size() <= 1) return roots;
    // Clear denominators to an integer polynomial.
    std::int64_t scale = 1;
    for (const Rational& c : q) scale = std::lcm(scale, c.den());
    std::vector<std::int64_t> zp(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        Rational c = q[i] * Rational(scale);
        zp[i] = c.num();
    }
    for (std::int64_t pn : divisors(zp.front()))
        for (std::int64_t qd : divisors(zp.back()))
            for (int sgn : {1, -1}) {
                Rational cand(sgn * pn, qd);
                if (poly_eval(q, cand).is_zero() &&
                    std::find(roots.begin(), roots.end(), cand) == roots.end())
                    roots.push_back(cand);
            }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace wpl
