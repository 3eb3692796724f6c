#include "wpl/grothendieck.hpp"

#include <map>
#include <mutex>
#include <random>

#include "wpl/homspaces.hpp"

namespace wpl::grothendieck {

using lgroup::add;
using lgroup::c;
using lgroup::delta;
using lgroup::neg;
using lgroup::normalize;
using lgroup::omega;
using lgroup::smul;
using lgroup::sub;
using lgroup::WeightTriple;
using lgroup::weights;
using lgroup::xi;
using lgroup::zero;

std::vector<LElt> k0_basis(int p) {
    const WeightTriple w = weights(p);
    std::vector<LElt> basis;
    basis.push_back(zero(w));
    basis.push_back(xi(w, 1));
    basis.push_back(xi(w, 2));
    basis.push_back(smul(2, xi(w, 2)));
    for (int k = 1; k <= p - 1; ++k) basis.push_back(smul(k, xi(w, 3)));
    basis.push_back(c(w));
    return basis;
}

namespace {

struct PData {
    IntMat g;
    IntMat g_inv;
    IntMat phi;
};

const PData& pdata(int p) {
    static std::mutex mu;
    static std::map<int, PData> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;

    const std::vector<LElt> basis = k0_basis(p);
    const int n = static_cast<int>(basis.size());
    IntMat g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            g(i, j) = homspaces::euler_form(basis[static_cast<std::size_t>(i)],
                                            basis[static_cast<std::size_t>(j)]);
    const std::int64_t d = det_bareiss(g);
    if (d != 1 && d != -1)
        throw NotUnimodular("K0 Gram matrix for p = " + std::to_string(p) + " has det " +
                            std::to_string(d));
    PData data;
    data.g = g;
    data.g_inv = unimodular_inverse(g);
    // Serre duality <x,y> = -<y, phi x> pins phi = -G^{-1} G^T.
    data.phi = (-(data.g_inv * g.transpose())).eval();
    return cache.emplace(p, std::move(data)).first->second;
}

int p_of(const LElt& x) {
    if (x.w().p1 != 2 || x.w().p2 != 3)
        throw UsageError("K0 operations require the weight triple (2,3,p)");
    return x.w().p3;
}

}  // namespace

const IntMat& gram(int p) { return pdata(p).g; }

IntVec class_of(const LElt& x) {
    const int p = p_of(x);
    const std::vector<LElt> basis = k0_basis(p);
    const PData& data = pdata(p);
    IntVec e(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i)
        e(static_cast<Eigen::Index>(i)) = homspaces::euler_form(basis[i], x);
    IntVec a = data.g_inv * e;
    // The inverse is exact, but guard the cross-module contract anyway.
    if (data.g * a != e) throw NonIntegralSolution("class expansion failed for " + x.str());
    return a;
}

std::int64_t rank_of(const IntVec& v) {
    std::int64_t s = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) s = checked_add(s, v(i));
    return s;
}

std::int64_t deg_of(int p, const IntVec& v) {
    const std::vector<LElt> basis = k0_basis(p);
    if (v.size() != static_cast<Eigen::Index>(basis.size()))
        throw UsageError("class vector has wrong length for p = " + std::to_string(p));
    std::int64_t s = 0;
    for (std::size_t i = 0; i < basis.size(); ++i)
        s = checked_add(s, checked_mul(v(static_cast<Eigen::Index>(i)), delta(basis[i])));
    return s;
}

const IntMat& coxeter_coh(int p) { return pdata(p).phi; }

Report sequence_additivity_suite(int p) {
    Report rep;
    const WeightTriple w = weights(p);
    const LElt om = omega(w);
    std::mt19937 rng(static_cast<unsigned>(1000 * p + 9));
    std::uniform_int_distribution<std::int64_t> coeff(-8, 8), extra(-3, 3);

    int bad_a = 0, bad_b = 0;
    std::string detail_a, detail_b;
    for (int trial = 0; trial < 100; ++trial) {
        LElt x = normalize(w, coeff(rng), coeff(rng), coeff(rng), extra(rng));
        for (int n = 1; n <= 2; ++n) {
            // [L] - [L(x1)] - [L(n x2)] + [L(x1 + n x2)] = 0.
            IntVec lhs = class_of(x) - class_of(add(x, xi(w, 1))) -
                         class_of(add(x, smul(n, xi(w, 2)))) +
                         class_of(add(x, add(xi(w, 1), smul(n, xi(w, 2)))));
            if (!lhs.isZero()) {
                ++bad_a;
                if (detail_a.empty()) detail_a = "x = " + x.str() + ", n = " + std::to_string(n);
            }
        }
        std::vector<LElt> twists = {xi(w, 1), xi(w, 2), xi(w, 3), neg(om)};
        for (std::size_t i = 0; i < twists.size(); ++i) {
            // [L(-v)] + [L(v + omega)] = [L(omega)] + [L].
            const LElt& v = twists[i];
            IntVec lhs = class_of(sub(x, v)) + class_of(add(x, add(v, om)));
            IntVec rhs = class_of(add(x, om)) + class_of(x);
            if (lhs != rhs) {
                ++bad_b;
                if (detail_b.empty())
                    detail_b = "x = " + x.str() + ", twist index " + std::to_string(i);
            }
        }
    }
    rep.add("[L] - [L(x1)] - [L(n*x2)] + [L(x1+n*x2)] = 0 for 100 random L, n in {1,2}",
            bad_a == 0, bad_a ? "first failure at " + detail_a : "200 instances hold");
    rep.add("[L(-v)] + [L(v+w)] = [L(w)] + [L] for v in {x1,x2,x3,-w}", bad_b == 0,
            bad_b ? "first failure at " + detail_b : "400 instances hold");
    return rep;
}

int rank_gap(int p) { return 2 * (p - 1) - (p + 4); }

}  // namespace wpl::grothendieck
