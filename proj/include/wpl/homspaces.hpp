#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "wpl/lgroup.hpp"
#include "wpl/report.hpp"

namespace wpl::homspaces {

using lgroup::LElt;

// Basis monomial x1^a * x2^b * x3^c of S = k[x1,x2,x3]/(x1^2+x2^3+x3^p);
// the relation eliminates x1^2, so a <= 1.
struct Monomial {
    int a = 0;
    std::int64_t b = 0;
    std::int64_t c = 0;
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

// All monomials of degree x; empty when the component vanishes.
std::vector<Monomial> monomials(const LElt& x);

std::int64_t dim_S(const LElt& x);

// Hom(O(x),O(y)) = S_{y-x}; Ext^1(O(x),O(y)) = Hom(O(y),O(x+omega))* by duality.
std::int64_t hom_dim(const LElt& x, const LElt& y);
std::int64_t ext1_dim(const LElt& x, const LElt& y);
std::int64_t euler_form(const LElt& x, const LElt& y);

// Monomial-level generation statement: maps from the upper bar into a fading
// degree all involve x1 or x2^2; maps from the lower bar all involve x1 or x2.
// Scans fading degrees y >= 0 with delta(y) <= window*lcm(6,p).
Report fading_generation_check(int p, int window);

// One cell of the persistent-summand table: a class modulo Zx3 with its
// residues, a display name, and whether the entry is persistent (boxed).
struct Table1Cell {
    int n1 = 0;
    int n2 = 0;
    bool boxed = false;
    std::string name;  // one of 0, x1, x2, 2x2, x1+x2, x1+2x2
    friend bool operator==(const Table1Cell&, const Table1Cell&) = default;
};

// Row k lists the classes of k*omega + {omega, -x1, -x2, -x3} modulo Zx3.
std::vector<std::array<Table1Cell, 4>> table1(int p);

// Aligned text rendering with [...] around boxed entries.
std::string table1_text(int p);

}  // namespace wpl::homspaces
