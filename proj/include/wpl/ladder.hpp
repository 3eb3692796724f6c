#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wpl/error.hpp"
#include "wpl/linalg.hpp"
#include "wpl/report.hpp"

namespace wpl::ladder {

// Finite-dimensional Z-graded module over A = k[x]/(x^p), x of degree +1.
// maps[d] is the matrix of x from degree d to d+1 (rows = dim(d+1)).
struct GradedModule {
    int p = 2;
    std::map<int, int> dims;
    std::map<int, RatMat> maps;

    int dim(int d) const {
        auto it = dims.find(d);
        return it == dims.end() ? 0 : it->second;
    }
    int total_dim() const {
        int t = 0;
        for (auto& [d, n] : dims) t += n;
        return t;
    }
    // Materialized x_d with the correct shape (zero when absent).
    RatMat x(int d) const;
    int min_degree() const { return dims.empty() ? 0 : dims.begin()->first; }
    int max_degree() const { return dims.empty() ? 0 : dims.rbegin()->first; }
};

// Free module A(n): one generator in degree n, dimension p.
GradedModule free_module(int p, int n);
// Cyclic module A(n)/x^k (k <= p), dimension k.
GradedModule cyclic_module(int p, int n, int k);

GradedModule module_direct_sum(const GradedModule& a, const GradedModule& b);
bool module_valid(const GradedModule& n, std::string* why = nullptr);

// Degreewise map between graded modules.
struct ModuleHom {
    std::map<int, RatMat> f;
    RatMat at(const GradedModule& src, const GradedModule& dst, int d) const;
};

// Ladder representation: iota : sub -> ambient, commuting with x.
// The ambient module is the upper bar, the sub module the lower bar.
struct LadderRep {
    GradedModule sub;
    GradedModule amb;
    std::map<int, RatMat> iota;

    int p() const { return amb.p; }
    int total_dim() const { return sub.total_dim() + amb.total_dim(); }
    RatMat iota_at(int d) const;
};

Report validate(const LadderRep& x);
bool valid(const LadderRep& x);
// In nil(p): every iota_d injective.
bool in_nil(const LadderRep& x);

enum class Vertex { Upper, Lower };

LadderRep projective(Vertex bar, int n, int p);
LadderRep simple(Vertex bar, int n, int p);
LadderRep direct_sum(const LadderRep& a, const LadderRep& b);
LadderRep shift_s(const LadderRep& x, int k);

// Morphism of ladder representations: degreewise pairs commuting with x and
// compatible with iota.
struct Morphism {
    std::map<int, RatMat> f_sub;
    std::map<int, RatMat> f_amb;
};

struct HomSpace {
    std::vector<Morphism> basis;
    int dim() const { return static_cast<int>(basis.size()); }
};

Morphism identity_morphism(const LadderRep& x);
Morphism compose(const LadderRep& x, const LadderRep& y, const LadderRep& z,
                 const Morphism& g, const Morphism& f);  // g after f

HomSpace hom(const LadderRep& x, const LadderRep& y);
HomSpace stable_hom(const LadderRep& x, const LadderRep& y);

struct CoverData {
    LadderRep cover;
    Morphism epi;  // cover -> x
};

CoverData proj_cover(const LadderRep& x);
LadderRep syzygy(const LadderRep& x);
LadderRep cosyzygy(const LadderRep& x);

// Kernel and cokernel of a morphism f : x -> y as representations.
LadderRep kernel_rep(const LadderRep& x, const LadderRep& y, const Morphism& f);
LadderRep cokernel_rep(const LadderRep& x, const LadderRep& y, const Morphism& f);

bool is_isomorphic(const LadderRep& x, const LadderRep& y, int seed = 1);
bool is_indecomposable(const LadderRep& x, int seed = 1);
std::vector<std::pair<LadderRep, int>> decompose(const LadderRep& x, int seed = 1);

// Projective-injective test for arbitrary representations.
bool is_proj_inj(const LadderRep& x);

// Left adjoint on upper-bar modules, computed from a minimal free
// presentation; lambda(A(n)) = projective(Lower, n).
LadderRep lambda(const GradedModule& n);

// The 2(p-1) summands, uppers first: (x^{j+1}A(-j) <= A(-j)) and
// lambda(x^{j+1}A(-j)) for j = 0..p-2. Generators are arranged so every
// sub-object starts in degree 1, which lines the grading up with the
// rectangle poset chains.
std::vector<LadderRep> rect_tilting(int p);
Report verify_rect_tilting(int p);

// JSON serialization (field restricted to "Q").
std::string rep_to_json(const LadderRep& x);
LadderRep rep_from_json(const std::string& text);

}  // namespace wpl::ladder
