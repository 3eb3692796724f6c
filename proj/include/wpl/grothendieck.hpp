#pragma once

#include <cstdint>
#include <vector>

#include "wpl/lgroup.hpp"
#include "wpl/linalg.hpp"
#include "wpl/report.hpp"

namespace wpl::grothendieck {

using lgroup::LElt;

// The p+4 line-bundle classes {x : 0 <= x <= c} in the fixed order
// (0, x1, x2, 2x2, x3, 2x3, ..., (p-1)x3, c).
std::vector<LElt> k0_basis(int p);

// Gram matrix G_ij = euler_form(b_i, b_j); checked unimodular.
const IntMat& gram(int p);

// Coefficients of [O(x)] over the basis; exact integral solve against G.
IntVec class_of(const LElt& x);

// Linear forms fixed by rank = 1 and deg = delta on line-bundle classes.
std::int64_t rank_of(const IntVec& v);
std::int64_t deg_of(int p, const IntVec& v);

// Integer matrix sending class_of(x) to class_of(x + omega) for every x.
const IntMat& coxeter_coh(int p);

// K0-additivity of the displayed exact sequences on random line bundles.
Report sequence_additivity_suite(int p);

// 2(p-1) - (p+4).
int rank_gap(int p);

}  // namespace wpl::grothendieck
