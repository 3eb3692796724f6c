#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wpl/linalg.hpp"
#include "wpl/report.hpp"

namespace wpl::algebras {

// Cartan matrix convention: C[i][j] = dim of paths i -> j surviving relations.
struct CartanMatrix {
    IntMat c;
    std::vector<std::string> labels;
};

// Finite poset: elements with a reflexive relation le[i][j] = (i <= j);
// constructors validate partial-order axioms.
struct Poset {
    std::vector<std::string> elems;
    std::vector<std::vector<bool>> le;
};

// Linear Nakayama algebra on n vertices with nilpotency ell:
// C[i][j] = 1 iff 0 <= j-i <= ell-1.
CartanMatrix cartan_nakayama(int n, int ell);

// Incidence matrix of a finite poset; throws NotAPartialOrder.
CartanMatrix cartan_poset(const Poset& poset);

// [1,2] x [1,p-1] componentwise, row-major element order (1,1)..(2,p-1).
Poset rectangle_poset(int p);
// rectangle_poset minus the top element (2, p-1).
Poset bprime_poset(int p);

// Hom matrix of the line-bundle tilting basis; throws ExtObstruction when any
// ext1 between basis classes is nonzero.
CartanMatrix canonical_cartan(int p);

// Path-algebra Cartan matrix of a Dynkin tree (types A2, D4, E6, E8),
// edges oriented away from the branch vertex.
CartanMatrix dynkin_cartan(const std::string& type);

struct CoxeterData {
    IntMat phi;         // -C^{-T} C
    IntPoly coxpoly;    // char poly of phi, ascending coefficients
    std::optional<int> order;  // smallest k <= bound with phi^k = I
    int bound = 0;
};

CoxeterData coxeter(const CartanMatrix& cartan, int bound = 400);

// coxpoly(A(2(p-1),3)) = coxpoly(B(2,p-1)); for p >= 3 also
// coxpoly(A(2p-3,3)) = coxpoly(B'(2,p-1)).
Report check_derived_pairs(int p);

// p <= 5: coxpoly(A(2(p-1),3)) matches the Dynkin tree A2/D4/E6/E8;
// p = 6: matches the canonical algebra Cartan matrix.
Report check_dynkin_tubular(int p);

// Fractional Calabi-Yau identities: chi = 1/p - 1/6, n = lcm(3,p),
// m = n(4p-6)/(3p) integral, phi^n = (-1)^{m+n} I; p = 2 also phi^3 = I.
Report fcy_check(int p);

// Coxeter number: order(phi) = 3 for p = 2, lcm(6,p) otherwise;
// phi^{h/2} = -I iff p odd (p >= 3).
Report coxeter_number_check(int p);

struct AdeRow {
    int p = 0;
    std::string cy;    // printed as m/n, unreduced
    std::string chi;   // reduced fraction
    std::string h;     // computed matrix order
    std::string type;
    std::string repr;
    bool cy_flag = false;   // computed differs from the stored table value
    bool chi_flag = false;
    bool h_flag = false;
};

std::vector<AdeRow> ade_rows(int p_lo, int p_hi);
std::string ade_table(int p_lo, int p_hi);

}  // namespace wpl::algebras
