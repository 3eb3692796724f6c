#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wpl/error.hpp"
#include "wpl/report.hpp"

namespace wpl::lgroup {

struct WeightTriple {
    int p1 = 2;
    int p2 = 3;
    int p3 = 2;
    friend bool operator==(const WeightTriple&, const WeightTriple&) = default;
};

// The (2,3,p) triple used by every weighted claim in the toolkit.
WeightTriple weights(int p);

// Element of L(p1,p2,p3) in its unique normal form
// n1*x1 + n2*x2 + n3*x3 + m*c with 0 <= ni < pi.
class LElt {
  public:
    LElt() = default;
    LElt(WeightTriple w, std::int64_t a1, std::int64_t a2, std::int64_t a3, std::int64_t m);

    const WeightTriple& w() const { return w_; }
    std::int64_t n1() const { return n1_; }
    std::int64_t n2() const { return n2_; }
    std::int64_t n3() const { return n3_; }
    std::int64_t m() const { return m_; }

    friend bool operator==(const LElt&, const LElt&) = default;

    // Serialized form "n1,n2,n3,m".
    std::string str() const;

  private:
    WeightTriple w_;
    std::int64_t n1_ = 0, n2_ = 0, n3_ = 0, m_ = 0;
};

LElt normalize(WeightTriple w, std::int64_t a1, std::int64_t a2, std::int64_t a3, std::int64_t m);
LElt parse_lelt(WeightTriple w, const std::string& s);

LElt zero(WeightTriple w);
LElt xi(WeightTriple w, int i);  // i in {1,2,3}
LElt c(WeightTriple w);          // p1*x1 = p2*x2 = p3*x3
LElt omega(WeightTriple w);      // c - x1 - x2 - x3
LElt xbar(WeightTriple w, int i);  // xi + omega

LElt add(const LElt& x, const LElt& y);
LElt neg(const LElt& x);
LElt smul(std::int64_t k, const LElt& x);
LElt sub(const LElt& x, const LElt& y);

inline LElt operator+(const LElt& x, const LElt& y) { return add(x, y); }
inline LElt operator-(const LElt& x, const LElt& y) { return sub(x, y); }
inline LElt operator-(const LElt& x) { return neg(x); }
inline LElt operator*(std::int64_t k, const LElt& x) { return smul(k, x); }

// x >= 0 in the partial order, i.e. x is a sum of generators; equivalent to
// m >= 0 in normal form and to dim S_x > 0.
bool is_nonneg(const LElt& x);

// Degree homomorphism sending xi to lcm(6,p)/pi. Weighted triple must be (2,3,p).
std::int64_t delta(const LElt& x);

enum class Bar { Upper, Lower, Fading };

struct BarClass {
    Bar kind = Bar::Fading;
    int n1 = 0;  // residues mod (2,3) identifying the class of x in L/Zx3
    int n2 = 0;
    bool persistent() const { return kind != Bar::Fading; }
    friend bool operator==(const BarClass&, const BarClass&) = default;
};

// Upper bar: x in Zx3. Lower bar: x in x2 + Zx3. Everything else fades.
BarClass bar_class(const LElt& x);

// Symbol k is '+' iff x + k*omega is persistent; always a rotation of "+-+---".
std::string tau_pattern(const LElt& x);

struct GroupStructure {
    int free_rank = 0;
    std::vector<std::int64_t> torsion;  // invariant factors > 1, divisibility order
    friend bool operator==(const GroupStructure&, const GroupStructure&) = default;
};

// Free rank and invariant factors of L(p1,p2,p3) via Smith normal form of the
// relation matrix [[p1,-p2,0],[p1,0,-p3]].
GroupStructure structure(WeightTriple w);

// Coset representatives of L/Zv, canonicalized into the delta-window
// [0, |delta(v)|). Throws InfiniteQuotient when delta(v) = 0.
std::vector<LElt> quotient(const LElt& v);

// Canonical representative of x modulo Zv (same window as quotient()).
LElt coset_rep(const LElt& x, const LElt& v);

// Order of the class of x in L/Zv.
std::int64_t class_order(const LElt& x, const LElt& v);

// Verifies the arithmetic identities tying omega, the xbar elements and x1
// together, plus the 6-periodic congruence list modulo Zx3.
Report identity_suite(int p);

}  // namespace wpl::lgroup
