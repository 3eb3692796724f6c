#include "wpl/ladder.hpp"

#include <json.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

#include "wpl/algebras.hpp"

namespace wpl::ladder {

namespace {

RatMat rzero(int r, int c) { return RatMat::Constant(r, c, Rational(0)); }

bool mat_is_zero(const RatMat& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero()) return false;
    return true;
}

// Exact solution X of A*X = B; every column must be consistent.
RatMat solve_matrix(const RatMat& a, const RatMat& b) {
    RatMat aug(a.rows(), a.cols() + b.cols());
    aug.leftCols(a.cols()) = a;
    aug.rightCols(b.cols()) = b;
    std::vector<int> pivots = rref_in_place(aug);
    for (int p : pivots)
        if (p >= a.cols()) throw Error("internal: inconsistent linear solve");
    RatMat x = rzero(static_cast<int>(a.cols()), static_cast<int>(b.cols()));
    for (std::size_t r = 0; r < pivots.size(); ++r)
        x.row(pivots[r]) = aug.block(static_cast<int>(r), a.cols(), 1, b.cols());
    return x;
}

// Exact solution X of X*A = B.
RatMat solve_left(const RatMat& a, const RatMat& b) {
    return solve_matrix(a.transpose(), b.transpose()).transpose();
}

// Rows form a basis of the left annihilator of the columns of m.
RatMat left_annihilator(const RatMat& m) { return kernel_basis(m.transpose()).transpose(); }

void set_dim(GradedModule& m, int d, int n) {
    if (n > 0) m.dims[d] = n;
}

void set_map(GradedModule& m, int d, RatMat mat) {
    if (mat.rows() > 0 && mat.cols() > 0) m.maps[d] = std::move(mat);
}

std::set<int> degree_window(const GradedModule& a, const GradedModule& b) {
    std::set<int> ds;
    for (auto& [d, n] : a.dims) ds.insert(d);
    for (auto& [d, n] : b.dims) ds.insert(d);
    return ds;
}

std::set<int> rep_degrees(const LadderRep& x) {
    return degree_window(x.sub, x.amb);
}

// ---------------------------------------------------------------------------
// graded-free modules with generator bookkeeping

struct FreeSum {
    int p = 2;
    std::vector<int> gen_deg;
    GradedModule mod;

    std::vector<int> active(int d) const {
        std::vector<int> out;
        for (std::size_t i = 0; i < gen_deg.size(); ++i)
            if (gen_deg[i] <= d && d <= gen_deg[i] + p - 1) out.push_back(static_cast<int>(i));
        return out;
    }
};

FreeSum build_free(int p, std::vector<int> degs) {
    FreeSum fs;
    fs.p = p;
    fs.gen_deg = std::move(degs);
    fs.mod.p = p;
    if (fs.gen_deg.empty()) return fs;
    int lo = *std::min_element(fs.gen_deg.begin(), fs.gen_deg.end());
    int hi = *std::max_element(fs.gen_deg.begin(), fs.gen_deg.end()) + p - 1;
    for (int d = lo; d <= hi; ++d) set_dim(fs.mod, d, static_cast<int>(fs.active(d).size()));
    for (int d = lo; d < hi; ++d) {
        std::vector<int> src = fs.active(d);
        std::vector<int> dst = fs.active(d + 1);
        RatMat m = rzero(static_cast<int>(dst.size()), static_cast<int>(src.size()));
        for (std::size_t r = 0; r < dst.size(); ++r)
            for (std::size_t c = 0; c < src.size(); ++c)
                if (dst[r] == src[c]) m(static_cast<int>(r), static_cast<int>(c)) = Rational(1);
        set_map(fs.mod, d, std::move(m));
    }
    return fs;
}

// ---------------------------------------------------------------------------
// module-level constructions

ModuleHom compose_module(const GradedModule& a, const GradedModule& b, const GradedModule& c,
                         const ModuleHom& g, const ModuleHom& f) {
    ModuleHom h;
    for (int d : degree_window(a, c)) {
        if (a.dim(d) == 0 || c.dim(d) == 0) continue;
        h.f[d] = (g.at(b, c, d) * f.at(a, b, d)).eval();
    }
    return h;
}

struct ModuleSub {
    GradedModule mod;
    ModuleHom incl;
};

ModuleSub module_kernel(const GradedModule& src, const GradedModule& dst, const ModuleHom& f) {
    ModuleSub out;
    out.mod.p = src.p;
    std::map<int, RatMat> basis;
    for (auto& [d, n] : src.dims) {
        RatMat k = kernel_basis(f.at(src, dst, d));
        if (k.cols() == 0) continue;
        basis[d] = k;
        set_dim(out.mod, d, static_cast<int>(k.cols()));
        out.incl.f[d] = k;
    }
    for (auto& [d, k] : basis) {
        auto it = basis.find(d + 1);
        if (it == basis.end()) continue;
        out.mod.maps[d] = solve_matrix(it->second, (src.x(d) * k).eval());
    }
    return out;
}

struct ModuleQuot {
    GradedModule mod;
    ModuleHom proj;
};

ModuleQuot module_cokernel(const GradedModule& src, const GradedModule& dst, const ModuleHom& f) {
    ModuleQuot out;
    out.mod.p = dst.p;
    std::map<int, RatMat> qmaps;
    for (auto& [d, n] : dst.dims) {
        RatMat q = left_annihilator(f.at(src, dst, d));
        if (q.rows() == 0) continue;
        qmaps[d] = q;
        set_dim(out.mod, d, static_cast<int>(q.rows()));
        out.proj.f[d] = q;
    }
    for (auto& [d, q] : qmaps) {
        auto it = qmaps.find(d + 1);
        if (it == qmaps.end()) continue;
        out.mod.maps[d] = solve_left(q, (it->second * dst.x(d)).eval());
    }
    return out;
}

// Minimal graded-free cover F -> N built from the top N/xN.
struct ModuleCover {
    FreeSum fs;
    ModuleHom pi;
};

ModuleCover module_cover(const GradedModule& n) {
    std::vector<int> gens;
    std::map<int, RatMat> lifts;  // degree -> columns lifting a top basis
    for (auto& [d, dim] : n.dims) {
        RatMat q = left_annihilator(n.x(d - 1));
        int t = static_cast<int>(q.rows());
        if (t == 0) continue;
        lifts[d] = solve_matrix(q, RatMat::Identity(t, t));
        for (int k = 0; k < t; ++k) gens.push_back(d);
    }
    ModuleCover out;
    out.fs = build_free(n.p, gens);
    // Column of the generator (d, k) in degree e is x^{e-d} applied to its lift.
    for (auto& [e, edim] : out.fs.mod.dims) {
        (void)edim;
        if (n.dim(e) == 0) continue;
        std::vector<int> act = out.fs.active(e);
        RatMat m = rzero(n.dim(e), static_cast<int>(act.size()));
        for (std::size_t c = 0; c < act.size(); ++c) {
            int gen = act[c];
            int gd = out.fs.gen_deg[static_cast<std::size_t>(gen)];
            int copy = 0;
            for (int g = 0; g < gen; ++g)
                if (out.fs.gen_deg[static_cast<std::size_t>(g)] == gd) ++copy;
            RatVec w = lifts[gd].col(copy);
            for (int s = gd; s < e; ++s) {
                if (n.dim(s) == 0 || n.dim(s + 1) == 0) {
                    RatVec z(n.dim(s + 1));
                    for (Eigen::Index ii = 0; ii < z.size(); ++ii) z(ii) = Rational(0);
                    w = z;
                } else {
                    w = (n.x(s) * w).eval();
                }
            }
            if (w.size() == n.dim(e)) m.col(static_cast<int>(c)) = w;
        }
        out.pi.f[e] = m;
    }
    return out;
}

GradedModule module_dual(const GradedModule& n) {
    GradedModule d;
    d.p = n.p;
    for (auto& [deg, dim] : n.dims) set_dim(d, -deg, dim);
    for (auto& [deg, dim] : d.dims) {
        RatMat m = n.x(-deg - 1).transpose();
        set_map(d, deg, std::move(m));
    }
    return d;
}

// Minimal embedding of u into a graded-free (= injective) module, obtained by
// dualizing the minimal cover of the dual.
struct Envelope {
    FreeSum fs;
    ModuleHom emb;  // u -> fs.mod
};

Envelope injective_envelope(const GradedModule& u) {
    GradedModule du = module_dual(u);
    ModuleCover cov = module_cover(du);
    std::vector<int> gens;
    gens.reserve(cov.fs.gen_deg.size());
    for (int d : cov.fs.gen_deg) gens.push_back(-d - u.p + 1);
    Envelope out;
    out.fs = build_free(u.p, gens);
    for (auto& [e, dim] : out.fs.mod.dims) {
        if (u.dim(e) == 0) continue;
        out.emb.f[e] = cov.pi.at(cov.fs.mod, du, -e).transpose();
    }
    return out;
}

// ---------------------------------------------------------------------------
// morphism plumbing

RatMat mor_sub_at(const LadderRep& x, const LadderRep& y, const Morphism& f, int d) {
    auto it = f.f_sub.find(d);
    if (it != f.f_sub.end()) return it->second;
    return rzero(y.sub.dim(d), x.sub.dim(d));
}

RatMat mor_amb_at(const LadderRep& x, const LadderRep& y, const Morphism& f, int d) {
    auto it = f.f_amb.find(d);
    if (it != f.f_amb.end()) return it->second;
    return rzero(y.amb.dim(d), x.amb.dim(d));
}

// Unknown layout of the commutation system for hom(x, y): one block per
// (bar, degree) where both ends are nonzero, entries column-major.
struct HomLayout {
    struct Block {
        int bar;  // 0 = sub, 1 = amb
        int d;
        int rows, cols, offset;
    };
    std::vector<Block> blocks;
    std::map<std::pair<int, int>, int> index;
    int total = 0;

    const Block* find(int bar, int d) const {
        auto it = index.find({bar, d});
        return it == index.end() ? nullptr : &blocks[static_cast<std::size_t>(it->second)];
    }
};

HomLayout make_layout(const LadderRep& x, const LadderRep& y) {
    HomLayout lo;
    auto add = [&](int bar, int d, int rows, int cols) {
        if (rows == 0 || cols == 0) return;
        lo.index[{bar, d}] = static_cast<int>(lo.blocks.size());
        lo.blocks.push_back({bar, d, rows, cols, lo.total});
        lo.total += rows * cols;
    };
    for (int d : rep_degrees(x)) add(0, d, y.sub.dim(d), x.sub.dim(d));
    for (int d : rep_degrees(x)) add(1, d, y.amb.dim(d), x.amb.dim(d));
    return lo;
}

RatVec vec_of(const HomLayout& lo, const LadderRep& x, const LadderRep& y, const Morphism& f) {
    RatVec v(lo.total);
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Rational(0);
    for (const auto& b : lo.blocks) {
        RatMat m = b.bar == 0 ? mor_sub_at(x, y, f, b.d) : mor_amb_at(x, y, f, b.d);
        for (int c = 0; c < b.cols; ++c)
            for (int r = 0; r < b.rows; ++r) v(b.offset + c * b.rows + r) = m(r, c);
    }
    return v;
}

Morphism morphism_of(const HomLayout& lo, const RatVec& v) {
    Morphism f;
    for (const auto& b : lo.blocks) {
        RatMat m = rzero(b.rows, b.cols);
        for (int c = 0; c < b.cols; ++c)
            for (int r = 0; r < b.rows; ++r) m(r, c) = v(b.offset + c * b.rows + r);
        (b.bar == 0 ? f.f_sub : f.f_amb)[b.d] = std::move(m);
    }
    return f;
}

// Sparse accumulation for the commutation systems.
struct EqBuilder {
    std::vector<std::tuple<int, int, Rational>> entries;
    int rows = 0;

    int new_rows(int n) {
        int base = rows;
        rows += n;
        return base;
    }
    void add(int r, int c, const Rational& v) {
        if (!v.is_zero()) entries.emplace_back(r, c, v);
    }
    RatMat materialize(int cols) const {
        RatMat a = rzero(rows, cols);
        for (auto& [r, c, v] : entries) a(r, c) += v;
        return a;
    }
};

// Total-space layout for endomorphisms (block-diagonal matrices).
struct SpaceLayout {
    struct Part {
        int bar, d, dim, offset;
    };
    std::vector<Part> parts;
    int total = 0;
};

SpaceLayout space_layout(const LadderRep& x) {
    SpaceLayout sl;
    for (auto& [d, n] : x.sub.dims) {
        sl.parts.push_back({0, d, n, sl.total});
        sl.total += n;
    }
    for (auto& [d, n] : x.amb.dims) {
        sl.parts.push_back({1, d, n, sl.total});
        sl.total += n;
    }
    return sl;
}

RatMat endo_matrix(const LadderRep& x, const SpaceLayout& sl, const Morphism& f) {
    RatMat m = rzero(sl.total, sl.total);
    for (const auto& p : sl.parts) {
        RatMat blk = p.bar == 0 ? mor_sub_at(x, x, f, p.d) : mor_amb_at(x, x, f, p.d);
        m.block(p.offset, p.offset, p.dim, p.dim) = blk;
    }
    return m;
}

Morphism endo_from_matrix(const SpaceLayout& sl, const RatMat& m) {
    Morphism f;
    for (const auto& p : sl.parts)
        (p.bar == 0 ? f.f_sub : f.f_amb)[p.d] = m.block(p.offset, p.offset, p.dim, p.dim).eval();
    return f;
}

LadderRep zero_rep(int p) {
    LadderRep z;
    z.sub.p = p;
    z.amb.p = p;
    return z;
}

LadderRep free_pair(const GradedModule& f) {
    LadderRep x;
    x.sub = f;
    x.amb = f;
    for (auto& [d, n] : f.dims) x.iota[d] = RatMat::Identity(n, n);
    return x;
}

}  // namespace

// ---------------------------------------------------------------------------
// GradedModule / LadderRep basics

RatMat GradedModule::x(int d) const {
    auto it = maps.find(d);
    if (it != maps.end()) return it->second;
    return rzero(dim(d + 1), dim(d));
}

RatMat ModuleHom::at(const GradedModule& src, const GradedModule& dst, int d) const {
    auto it = f.find(d);
    if (it != f.end()) return it->second;
    return rzero(dst.dim(d), src.dim(d));
}

RatMat LadderRep::iota_at(int d) const {
    auto it = iota.find(d);
    if (it != iota.end()) return it->second;
    return rzero(amb.dim(d), sub.dim(d));
}

GradedModule free_module(int p, int n) {
    if (p < 2) throw UsageError("graded modules need p >= 2");
    return cyclic_module(p, n, p);
}

GradedModule cyclic_module(int p, int n, int k) {
    if (p < 2) throw UsageError("graded modules need p >= 2");
    if (k < 1 || k > p) throw UsageError("cyclic module length must lie in [1, p]");
    GradedModule m;
    m.p = p;
    for (int d = n; d < n + k; ++d) m.dims[d] = 1;
    for (int d = n; d + 1 < n + k; ++d) m.maps[d] = RatMat::Identity(1, 1);
    return m;
}

GradedModule module_direct_sum(const GradedModule& a, const GradedModule& b) {
    if (a.p != b.p) throw UsageError("direct sum of modules over different p");
    GradedModule s;
    s.p = a.p;
    for (int d : degree_window(a, b)) set_dim(s, d, a.dim(d) + b.dim(d));
    for (int d : degree_window(a, b)) {
        int r = a.dim(d + 1) + b.dim(d + 1);
        int c = a.dim(d) + b.dim(d);
        if (r == 0 || c == 0) continue;
        RatMat m = rzero(r, c);
        m.block(0, 0, a.dim(d + 1), a.dim(d)) = a.x(d);
        m.block(a.dim(d + 1), a.dim(d), b.dim(d + 1), b.dim(d)) = b.x(d);
        set_map(s, d, std::move(m));
    }
    return s;
}

bool module_valid(const GradedModule& n, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (n.p < 2) return fail("p = " + std::to_string(n.p) + " < 2");
    for (auto& [d, dim] : n.dims)
        if (dim <= 0) return fail("nonpositive dimension at degree " + std::to_string(d));
    for (auto& [d, m] : n.maps) {
        if (m.rows() != n.dim(d + 1) || m.cols() != n.dim(d))
            return fail("x map at degree " + std::to_string(d) + " has shape " +
                        std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                        ", expected " + std::to_string(n.dim(d + 1)) + "x" +
                        std::to_string(n.dim(d)));
    }
    for (auto& [d, dim] : n.dims) {
        RatMat c = n.x(d);
        for (int i = 1; i < n.p; ++i) c = (n.x(d + i) * c).eval();
        if (!mat_is_zero(c))
            return fail("x^p does not vanish starting at degree " + std::to_string(d));
    }
    if (why) why->clear();
    return true;
}

Report validate(const LadderRep& x) {
    Report r;
    r.add("weight p is at least 2 and equal on both bars", x.sub.p >= 2 && x.sub.p == x.amb.p,
          "sub p = " + std::to_string(x.sub.p) + ", ambient p = " + std::to_string(x.amb.p));
    std::string why;
    bool subok = module_valid(x.sub, &why);
    r.add("lower bar is a graded module with x^p = 0", subok, why);
    bool ambok = module_valid(x.amb, &why);
    r.add("upper bar is a graded module with x^p = 0", ambok, why);
    bool shapes = true;
    std::string detail;
    for (auto& [d, m] : x.iota) {
        if (m.rows() != x.amb.dim(d) || m.cols() != x.sub.dim(d)) {
            shapes = false;
            detail = "iota at degree " + std::to_string(d) + " has shape " +
                     std::to_string(m.rows()) + "x" + std::to_string(m.cols());
            break;
        }
    }
    r.add("iota maps U_d into M_d with matching shapes", shapes, detail);
    bool commutes = true;
    detail.clear();
    if (subok && ambok && shapes) {
        for (int d : rep_degrees(x)) {
            RatMat lhs = (x.amb.x(d) * x.iota_at(d)).eval();
            RatMat rhs = (x.iota_at(d + 1) * x.sub.x(d)).eval();
            if (!mat_is_zero((lhs - rhs).eval())) {
                commutes = false;
                detail = "square at degree " + std::to_string(d) + " does not commute";
                break;
            }
        }
    } else {
        commutes = false;
        detail = "skipped: shapes invalid";
    }
    r.add("iota commutes with x", commutes, detail);
    return r;
}

bool valid(const LadderRep& x) { return validate(x).ok(); }

bool in_nil(const LadderRep& x) {
    if (!valid(x)) return false;
    for (auto& [d, n] : x.sub.dims)
        if (rank(x.iota_at(d)) != n) return false;
    return true;
}

LadderRep projective(Vertex bar, int n, int p) {
    if (p < 2) throw UsageError("projective needs p >= 2");
    LadderRep x = zero_rep(p);
    if (bar == Vertex::Upper) {
        x.amb = free_module(p, n);
    } else {
        x = free_pair(free_module(p, n));
    }
    return x;
}

LadderRep simple(Vertex bar, int n, int p) {
    if (p < 2) throw UsageError("simple needs p >= 2");
    LadderRep x = zero_rep(p);
    if (bar == Vertex::Upper)
        x.amb.dims[n] = 1;
    else
        x.sub.dims[n] = 1;
    return x;
}

LadderRep direct_sum(const LadderRep& a, const LadderRep& b) {
    if (a.p() != b.p()) throw UsageError("direct sum of representations over different p");
    LadderRep s;
    s.sub = module_direct_sum(a.sub, b.sub);
    s.amb = module_direct_sum(a.amb, b.amb);
    for (int d : degree_window(s.sub, s.amb)) {
        int r = s.amb.dim(d);
        int c = s.sub.dim(d);
        if (r == 0 || c == 0) continue;
        RatMat m = rzero(r, c);
        m.block(0, 0, a.amb.dim(d), a.sub.dim(d)) = a.iota_at(d);
        m.block(a.amb.dim(d), a.sub.dim(d), b.amb.dim(d), b.sub.dim(d)) = b.iota_at(d);
        s.iota[d] = std::move(m);
    }
    return s;
}

LadderRep shift_s(const LadderRep& x, int k) {
    LadderRep y = zero_rep(x.p());
    for (auto& [d, n] : x.sub.dims) y.sub.dims[d + k] = n;
    for (auto& [d, m] : x.sub.maps) y.sub.maps[d + k] = m;
    for (auto& [d, n] : x.amb.dims) y.amb.dims[d + k] = n;
    for (auto& [d, m] : x.amb.maps) y.amb.maps[d + k] = m;
    for (auto& [d, m] : x.iota) y.iota[d + k] = m;
    return y;
}

Morphism identity_morphism(const LadderRep& x) {
    Morphism f;
    for (auto& [d, n] : x.sub.dims) f.f_sub[d] = RatMat::Identity(n, n);
    for (auto& [d, n] : x.amb.dims) f.f_amb[d] = RatMat::Identity(n, n);
    return f;
}

Morphism compose(const LadderRep& x, const LadderRep& y, const LadderRep& z, const Morphism& g,
                 const Morphism& f) {
    Morphism h;
    for (int d : rep_degrees(x)) {
        if (x.sub.dim(d) > 0 && z.sub.dim(d) > 0)
            h.f_sub[d] = (mor_sub_at(y, z, g, d) * mor_sub_at(x, y, f, d)).eval();
        if (x.amb.dim(d) > 0 && z.amb.dim(d) > 0)
            h.f_amb[d] = (mor_amb_at(y, z, g, d) * mor_amb_at(x, y, f, d)).eval();
    }
    return h;
}

HomSpace hom(const LadderRep& x, const LadderRep& y) {
    HomSpace hs;
    HomLayout lo = make_layout(x, y);
    if (lo.total == 0) return hs;
    EqBuilder eq;
    std::set<int> degs;
    for (int d : rep_degrees(x)) degs.insert(d);
    for (int d : rep_degrees(y)) degs.insert(d);
    auto commute_rows = [&](int bar, const GradedModule& xm, const GradedModule& ym) {
        for (int d : degs) {
            int rows = ym.dim(d + 1);
            int cols = xm.dim(d);
            if (rows == 0 || cols == 0) continue;
            int base = eq.new_rows(rows * cols);
            const HomLayout::Block* bd = lo.find(bar, d);
            const HomLayout::Block* bd1 = lo.find(bar, d + 1);
            RatMat yx = ym.x(d);
            RatMat xx = xm.x(d);
            for (int c = 0; c < cols; ++c)
                for (int r = 0; r < rows; ++r) {
                    int row = base + c * rows + r;
                    if (bd)
                        for (int k = 0; k < bd->rows; ++k)
                            eq.add(row, bd->offset + c * bd->rows + k, yx(r, k));
                    if (bd1)
                        for (int k = 0; k < bd1->cols; ++k)
                            eq.add(row, bd1->offset + k * bd1->rows + r, -xx(k, c));
                }
        }
    };
    commute_rows(0, x.sub, y.sub);
    commute_rows(1, x.amb, y.amb);
    for (int d : degs) {
        int rows = y.amb.dim(d);
        int cols = x.sub.dim(d);
        if (rows == 0 || cols == 0) continue;
        int base = eq.new_rows(rows * cols);
        const HomLayout::Block* bs = lo.find(0, d);
        const HomLayout::Block* ba = lo.find(1, d);
        RatMat iy = y.iota_at(d);
        RatMat ix = x.iota_at(d);
        for (int c = 0; c < cols; ++c)
            for (int r = 0; r < rows; ++r) {
                int row = base + c * rows + r;
                if (bs)
                    for (int k = 0; k < bs->rows; ++k)
                        eq.add(row, bs->offset + c * bs->rows + k, iy(r, k));
                if (ba)
                    for (int k = 0; k < ba->cols; ++k)
                        eq.add(row, ba->offset + k * ba->rows + r, -ix(k, c));
            }
    }
    RatMat a = eq.materialize(lo.total);
    RatMat k = kernel_basis(a);
    for (int j = 0; j < k.cols(); ++j) hs.basis.push_back(morphism_of(lo, k.col(j)));
    return hs;
}

// ---------------------------------------------------------------------------
// covers, kernels, cokernels

CoverData proj_cover(const LadderRep& x) {
    const int p = x.p();
    std::vector<int> upper_gens, lower_gens;
    std::map<int, RatMat> upper_lifts, lower_lifts;
    for (auto& [d, n] : x.amb.dims) {
        RatMat gen_img(n, x.amb.dim(d - 1) + x.sub.dim(d));
        gen_img.leftCols(x.amb.dim(d - 1)) = x.amb.x(d - 1);
        gen_img.rightCols(x.sub.dim(d)) = x.iota_at(d);
        RatMat q = left_annihilator(gen_img);
        int t = static_cast<int>(q.rows());
        if (t == 0) continue;
        upper_lifts[d] = solve_matrix(q, RatMat::Identity(t, t));
        for (int k = 0; k < t; ++k) upper_gens.push_back(d);
    }
    for (auto& [d, n] : x.sub.dims) {
        RatMat q = left_annihilator(x.sub.x(d - 1));
        int t = static_cast<int>(q.rows());
        if (t == 0) continue;
        lower_lifts[d] = solve_matrix(q, RatMat::Identity(t, t));
        for (int k = 0; k < t; ++k) lower_gens.push_back(d);
    }
    const int nu = static_cast<int>(upper_gens.size());

    CoverData out;
    out.cover = zero_rep(p);
    FreeSum sub_fs = build_free(p, lower_gens);
    std::vector<int> amb_gens = upper_gens;
    amb_gens.insert(amb_gens.end(), lower_gens.begin(), lower_gens.end());
    FreeSum amb_fs = build_free(p, amb_gens);
    out.cover.sub = sub_fs.mod;
    out.cover.amb = amb_fs.mod;
    for (auto& [d, n] : out.cover.sub.dims) {
        std::vector<int> sa = sub_fs.active(d);
        std::vector<int> aa = amb_fs.active(d);
        RatMat m = rzero(static_cast<int>(aa.size()), static_cast<int>(sa.size()));
        for (std::size_t c = 0; c < sa.size(); ++c)
            for (std::size_t r = 0; r < aa.size(); ++r)
                if (aa[r] == nu + sa[c]) m(static_cast<int>(r), static_cast<int>(c)) = Rational(1);
        out.cover.iota[d] = std::move(m);
    }

    // Push each generator's lift up the grading once per degree.
    auto gen_column = [&](const std::map<int, RatMat>& lifts, const GradedModule& target,
                          int gen_deg, int copy, int e) {
        RatVec w = lifts.at(gen_deg).col(copy);
        for (int s = gen_deg; s < e; ++s) {
            if (target.dim(s) == 0 || target.dim(s + 1) == 0) {
                RatVec z(target.dim(s + 1));
                for (Eigen::Index ii = 0; ii < z.size(); ++ii) z(ii) = Rational(0);
                w = z;
            } else {
                w = (target.x(s) * w).eval();
            }
        }
        return w;
    };
    auto copy_index = [](const std::vector<int>& gens, int gen) {
        int copy = 0;
        for (int g = 0; g < gen; ++g)
            if (gens[static_cast<std::size_t>(g)] == gens[static_cast<std::size_t>(gen)]) ++copy;
        return copy;
    };
    // iota(lower lift) seeds the ambient column of a lower generator.
    std::map<int, RatMat> lower_amb_lifts;
    for (auto& [d, v] : lower_lifts) lower_amb_lifts[d] = (x.iota_at(d) * v).eval();

    for (auto& [e, n] : out.cover.amb.dims) {
        if (x.amb.dim(e) == 0) continue;
        std::vector<int> aa = amb_fs.active(e);
        RatMat m = rzero(x.amb.dim(e), static_cast<int>(aa.size()));
        for (std::size_t c = 0; c < aa.size(); ++c) {
            int gen = aa[c];
            RatVec w;
            if (gen < nu) {
                w = gen_column(upper_lifts, x.amb,
                               upper_gens[static_cast<std::size_t>(gen)],
                               copy_index(upper_gens, gen), e);
            } else {
                int lg = gen - nu;
                w = gen_column(lower_amb_lifts, x.amb,
                               lower_gens[static_cast<std::size_t>(lg)],
                               copy_index(lower_gens, lg), e);
            }
            if (w.size() == x.amb.dim(e)) m.col(static_cast<int>(c)) = w;
        }
        out.epi.f_amb[e] = std::move(m);
    }
    for (auto& [e, n] : out.cover.sub.dims) {
        if (x.sub.dim(e) == 0) continue;
        std::vector<int> sa = sub_fs.active(e);
        RatMat m = rzero(x.sub.dim(e), static_cast<int>(sa.size()));
        for (std::size_t c = 0; c < sa.size(); ++c) {
            int lg = sa[c];
            RatVec w = gen_column(lower_lifts, x.sub, lower_gens[lg], copy_index(lower_gens, lg), e);
            if (w.size() == x.sub.dim(e)) m.col(static_cast<int>(c)) = w;
        }
        out.epi.f_sub[e] = std::move(m);
    }
    return out;
}

LadderRep kernel_rep(const LadderRep& x, const LadderRep& y, const Morphism& f) {
    LadderRep k = zero_rep(x.p());
    std::map<int, RatMat> ks, ka;
    for (auto& [d, n] : x.sub.dims) {
        RatMat b = kernel_basis(mor_sub_at(x, y, f, d));
        if (b.cols() == 0) continue;
        ks[d] = b;
        set_dim(k.sub, d, static_cast<int>(b.cols()));
    }
    for (auto& [d, n] : x.amb.dims) {
        RatMat b = kernel_basis(mor_amb_at(x, y, f, d));
        if (b.cols() == 0) continue;
        ka[d] = b;
        set_dim(k.amb, d, static_cast<int>(b.cols()));
    }
    for (auto& [d, b] : ks) {
        auto it = ks.find(d + 1);
        if (it != ks.end()) set_map(k.sub, d, solve_matrix(it->second, (x.sub.x(d) * b).eval()));
    }
    for (auto& [d, b] : ka) {
        auto it = ka.find(d + 1);
        if (it != ka.end()) set_map(k.amb, d, solve_matrix(it->second, (x.amb.x(d) * b).eval()));
    }
    for (auto& [d, b] : ks) {
        auto it = ka.find(d);
        if (it != ka.end()) k.iota[d] = solve_matrix(it->second, (x.iota_at(d) * b).eval());
    }
    return k;
}

LadderRep cokernel_rep(const LadderRep& x, const LadderRep& y, const Morphism& f) {
    LadderRep c = zero_rep(y.p());
    std::map<int, RatMat> qs, qa;
    for (auto& [d, n] : y.sub.dims) {
        RatMat q = left_annihilator(mor_sub_at(x, y, f, d));
        if (q.rows() == 0) continue;
        qs[d] = q;
        set_dim(c.sub, d, static_cast<int>(q.rows()));
    }
    for (auto& [d, n] : y.amb.dims) {
        RatMat q = left_annihilator(mor_amb_at(x, y, f, d));
        if (q.rows() == 0) continue;
        qa[d] = q;
        set_dim(c.amb, d, static_cast<int>(q.rows()));
    }
    for (auto& [d, q] : qs) {
        auto it = qs.find(d + 1);
        if (it != qs.end()) set_map(c.sub, d, solve_left(q, (it->second * y.sub.x(d)).eval()));
    }
    for (auto& [d, q] : qa) {
        auto it = qa.find(d + 1);
        if (it != qa.end()) set_map(c.amb, d, solve_left(q, (it->second * y.amb.x(d)).eval()));
    }
    for (auto& [d, q] : qs) {
        auto it = qa.find(d);
        if (it != qa.end()) c.iota[d] = solve_left(q, (it->second * y.iota_at(d)).eval());
    }
    return c;
}

LadderRep syzygy(const LadderRep& x) {
    CoverData cov = proj_cover(x);
    return kernel_rep(cov.cover, x, cov.epi);
}

HomSpace stable_hom(const LadderRep& x, const LadderRep& y) {
    HomSpace h = hom(x, y);
    const int n = h.dim();
    if (n == 0) return h;
    CoverData cov = proj_cover(y);
    HomSpace hp = hom(x, cov.cover);
    if (hp.dim() == 0) return h;
    HomLayout lo = make_layout(x, y);
    RatMat b(lo.total, n);
    for (int j = 0; j < n; ++j) b.col(j) = vec_of(lo, x, y, h.basis[static_cast<std::size_t>(j)]);
    RatMat v(lo.total, hp.dim());
    for (int j = 0; j < hp.dim(); ++j) {
        Morphism m = compose(x, cov.cover, y, cov.epi, hp.basis[static_cast<std::size_t>(j)]);
        v.col(j) = vec_of(lo, x, y, m);
    }
    RatMat w = solve_matrix(b, v);  // coordinates of the factoring maps
    RatMat aug(n, hp.dim() + n);
    aug.leftCols(hp.dim()) = w;
    aug.rightCols(n) = RatMat::Identity(n, n);
    std::vector<int> pivots = rref_in_place(aug);
    HomSpace out;
    for (int p : pivots)
        if (p >= hp.dim()) out.basis.push_back(h.basis[static_cast<std::size_t>(p - hp.dim())]);
    return out;
}

bool is_proj_inj(const LadderRep& x) { return stable_hom(x, x).dim() == 0; }

LadderRep cosyzygy(const LadderRep& x) {
    if (!in_nil(x)) throw NotInNil("cosyzygy requires every iota_d injective");
    if (x.total_dim() == 0) return zero_rep(x.p());

    Envelope eu = injective_envelope(x.sub);
    const GradedModule& e = eu.fs.mod;

    // phi : M -> E extending the envelope embedding along iota.
    struct Blk {
        int d, rows, cols, offset;
    };
    std::vector<Blk> blocks;
    std::map<int, int> bindex;
    int total = 0;
    for (int d : degree_window(x.amb, e)) {
        int rows = e.dim(d);
        int cols = x.amb.dim(d);
        if (rows == 0 || cols == 0) continue;
        bindex[d] = static_cast<int>(blocks.size());
        blocks.push_back({d, rows, cols, total});
        total += rows * cols;
    }
    EqBuilder eq;
    std::vector<Rational> rhs;
    auto push_rhs = [&](int count) { rhs.resize(rhs.size() + static_cast<std::size_t>(count), Rational(0)); };
    for (int d : degree_window(x.amb, e)) {  // commutation with x
        int rows = e.dim(d + 1);
        int cols = x.amb.dim(d);
        if (rows == 0 || cols == 0) continue;
        int base = eq.new_rows(rows * cols);
        push_rhs(rows * cols);
        RatMat ex = e.x(d);
        RatMat mx = x.amb.x(d);
        const Blk* bd = bindex.count(d) ? &blocks[static_cast<std::size_t>(bindex[d])] : nullptr;
        const Blk* bd1 =
            bindex.count(d + 1) ? &blocks[static_cast<std::size_t>(bindex[d + 1])] : nullptr;
        for (int c = 0; c < cols; ++c)
            for (int r = 0; r < rows; ++r) {
                int row = base + c * rows + r;
                if (bd)
                    for (int k = 0; k < bd->rows; ++k)
                        eq.add(row, bd->offset + c * bd->rows + k, ex(r, k));
                if (bd1)
                    for (int k = 0; k < bd1->cols; ++k)
                        eq.add(row, bd1->offset + k * bd1->rows + r, -mx(k, c));
            }
    }
    for (auto& [d, n] : x.sub.dims) {  // phi_d iota_d = emb_d
        int rows = e.dim(d);
        int cols = n;
        if (rows == 0) continue;
        int base = eq.new_rows(rows * cols);
        push_rhs(rows * cols);
        RatMat ix = x.iota_at(d);
        RatMat em = eu.emb.at(x.sub, e, d);
        const Blk* bd = bindex.count(d) ? &blocks[static_cast<std::size_t>(bindex[d])] : nullptr;
        for (int c = 0; c < cols; ++c)
            for (int r = 0; r < rows; ++r) {
                int row = base + c * rows + r;
                if (bd)
                    for (int k = 0; k < bd->cols; ++k)
                        eq.add(row, bd->offset + k * bd->rows + r, ix(k, c));
                rhs[static_cast<std::size_t>(row)] = em(r, c);
            }
    }
    RatMat a = eq.materialize(total);
    RatVec bvec(eq.rows);
    for (int i = 0; i < eq.rows; ++i) bvec(i) = rhs[static_cast<std::size_t>(i)];
    std::optional<RatVec> sol = solve(a, bvec);
    if (!sol) throw Error("internal: envelope extension system inconsistent");
    ModuleHom phi;
    for (const auto& blk : blocks) {
        RatMat m = rzero(blk.rows, blk.cols);
        for (int c = 0; c < blk.cols; ++c)
            for (int r = 0; r < blk.rows; ++r) m(r, c) = (*sol)(blk.offset + c * blk.rows + r);
        phi.f[blk.d] = std::move(m);
    }

    // psi : M ->> M/iota(U) -> G, its envelope.
    ModuleHom iota_hom;
    for (auto& [d, m] : x.iota) iota_hom.f[d] = m;
    ModuleQuot cq = module_cokernel(x.sub, x.amb, iota_hom);
    Envelope eg = injective_envelope(cq.mod);
    ModuleHom psi = compose_module(x.amb, cq.mod, eg.fs.mod, eg.emb, cq.proj);

    // I = (E -> E + G), f = (emb, [phi; psi]) is an admissible mono.
    LadderRep inj = zero_rep(x.p());
    std::vector<int> amb_gens = eu.fs.gen_deg;
    amb_gens.insert(amb_gens.end(), eg.fs.gen_deg.begin(), eg.fs.gen_deg.end());
    FreeSum amb_fs = build_free(x.p(), amb_gens);
    inj.sub = e;
    inj.amb = amb_fs.mod;
    for (auto& [d, n] : inj.sub.dims) {
        std::vector<int> sa = eu.fs.active(d);
        std::vector<int> aa = amb_fs.active(d);
        RatMat m = rzero(static_cast<int>(aa.size()), static_cast<int>(sa.size()));
        for (std::size_t c = 0; c < sa.size(); ++c)
            for (std::size_t r = 0; r < aa.size(); ++r)
                if (aa[r] == sa[c]) m(static_cast<int>(r), static_cast<int>(c)) = Rational(1);
        inj.iota[d] = std::move(m);
    }
    Morphism f;
    for (auto& [d, n] : x.sub.dims)
        if (e.dim(d) > 0) f.f_sub[d] = eu.emb.at(x.sub, e, d);
    for (auto& [d, n] : x.amb.dims) {
        int rows = inj.amb.dim(d);
        if (rows == 0) continue;
        RatMat m = rzero(rows, n);
        m.topRows(e.dim(d)) = phi.at(x.amb, e, d);
        m.bottomRows(eg.fs.mod.dim(d)) = psi.at(x.amb, eg.fs.mod, d);
        f.f_amb[d] = std::move(m);
    }

    LadderRep coker = cokernel_rep(x, inj, f);
    std::vector<std::pair<LadderRep, int>> pieces = decompose(coker, 1);
    LadderRep out = zero_rep(x.p());
    for (auto& [piece, mult] : pieces) {
        if (is_proj_inj(piece)) continue;
        for (int i = 0; i < mult; ++i) out = direct_sum(out, piece);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Krull-Schmidt decomposition

namespace {

// One splitting step: true if x decomposed into two proper summands.
struct EndoAlgebra {
    int n = 0;                    // dim End
    std::vector<RatMat> action;   // total-space matrices of the basis
    RatMat basis;                 // columns: vectorized basis morphisms
    HomLayout layout;
    SpaceLayout space;
};

RatVec coords_of_matrix(const LadderRep& x, const EndoAlgebra& ea, const RatMat& m) {
    Morphism f = endo_from_matrix(ea.space, m);
    RatMat v = solve_matrix(ea.basis, vec_of(ea.layout, x, x, f));
    return v.col(0);
}

bool try_split(const LadderRep& x, std::mt19937& rng, LadderRep& out1, LadderRep& out2) {
    HomSpace ends = hom(x, x);
    const int n = ends.dim();
    if (n <= 1) return false;

    EndoAlgebra ea;
    ea.n = n;
    ea.layout = make_layout(x, x);
    ea.space = space_layout(x);
    ea.basis = RatMat(ea.layout.total, n);
    for (int j = 0; j < n; ++j)
        ea.basis.col(j) = vec_of(ea.layout, x, x, ends.basis[static_cast<std::size_t>(j)]);
    for (int j = 0; j < n; ++j)
        ea.action.push_back(endo_matrix(x, ea.space, ends.basis[static_cast<std::size_t>(j)]));

    // Left-multiplication matrices and the characteristic-zero trace form.
    std::vector<RatMat> lmul;
    for (int k = 0; k < n; ++k) {
        RatMat m(n, n);
        for (int j = 0; j < n; ++j)
            m.col(j) = coords_of_matrix(x, ea, (ea.action[static_cast<std::size_t>(k)] *
                                                ea.action[static_cast<std::size_t>(j)])
                                                   .eval());
        lmul.push_back(std::move(m));
    }
    RatMat trace_form(n, n);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            trace_form(k, j) =
                (lmul[static_cast<std::size_t>(k)] * lmul[static_cast<std::size_t>(j)]).trace();
    RatMat jrad = kernel_basis(trace_form);
    const int q = n - static_cast<int>(jrad.cols());
    if (q <= 1) return false;  // local: End/rad is one-dimensional

    // Complement of the radical: representatives of a basis of End/rad.
    std::vector<int> comp;
    RatMat cur = jrad;
    for (int i = 0; i < n && static_cast<int>(comp.size()) < q; ++i) {
        RatMat ext(n, cur.cols() + 1);
        ext.leftCols(cur.cols()) = cur;
        RatVec unit(n);
        for (int t = 0; t < n; ++t) unit(t) = Rational(t == i ? 1 : 0);
        ext.col(cur.cols()) = unit;
        if (rank(ext) > rank(cur)) {
            comp.push_back(i);
            cur = ext;
        }
    }
    RatMat s(n, n);
    s.leftCols(jrad.cols()) = jrad;
    for (int j = 0; j < q; ++j) {
        RatVec unit(n);
        for (int t = 0; t < n; ++t) unit(t) = Rational(t == comp[static_cast<std::size_t>(j)] ? 1 : 0);
        s.col(static_cast<int>(jrad.cols()) + j) = unit;
    }
    RatMat sinv = solve_matrix(s, RatMat::Identity(n, n));

    auto project_bar = [&](const RatVec& coords) {
        RatVec full = (sinv * coords).eval();
        RatVec barv(q);
        for (int i = 0; i < q; ++i) barv(i) = full(n - q + i);
        return barv;
    };
    auto lift_bar = [&](const RatVec& barv) {
        RatVec coords(n);
        for (int i = 0; i < n; ++i) coords(i) = Rational(0);
        for (int i = 0; i < q; ++i) coords(comp[static_cast<std::size_t>(i)]) = barv(i);
        return coords;
    };
    auto matrix_of_coords = [&](const RatVec& coords) {
        RatMat m = rzero(ea.space.total, ea.space.total);
        for (int k = 0; k < n; ++k)
            if (!coords(k).is_zero()) m += ea.action[static_cast<std::size_t>(k)] * coords(k);
        return m;
    };
    auto mult_bar = [&](const RatVec& a, const RatVec& b) {
        RatMat prod = (matrix_of_coords(lift_bar(a)) * matrix_of_coords(lift_bar(b))).eval();
        return project_bar(coords_of_matrix(x, ea, prod));
    };
    RatVec one_bar = project_bar(coords_of_matrix(x, ea, RatMat::Identity(ea.space.total, ea.space.total)));

    // Candidate elements of End/rad whose minimal polynomial may split.
    std::vector<RatVec> candidates;
    for (int i = 0; i < q; ++i) {
        RatVec unit(q);
        for (int t = 0; t < q; ++t) unit(t) = Rational(t == i ? 1 : 0);
        candidates.push_back(unit);
    }
    for (int i = 0; i < q && static_cast<int>(candidates.size()) < q + 30; ++i)
        for (int j = 0; j < q && static_cast<int>(candidates.size()) < q + 30; ++j)
            if (i != j)
                candidates.push_back(mult_bar(candidates[static_cast<std::size_t>(i)],
                                              candidates[static_cast<std::size_t>(j)]));
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int t = 0; t < 60; ++t) {
        RatVec v(q);
        for (int i = 0; i < q; ++i) v(i) = Rational(coeff(rng));
        candidates.push_back(v);
    }

    for (const RatVec& cand : candidates) {
        bool zero = true;
        for (int i = 0; i < q; ++i)
            if (!cand(i).is_zero()) zero = false;
        if (zero) continue;
        RatMat lbar(q, q);
        for (int j = 0; j < q; ++j) {
            RatVec unit(q);
            for (int t = 0; t < q; ++t) unit(t) = Rational(t == j ? 1 : 0);
            lbar.col(j) = mult_bar(cand, unit);
        }
        RatPoly mp;
        try {
            mp = min_poly(lbar);
        } catch (const Error&) {
            continue;
        }
        if (mp.size() <= 2) continue;  // scalar element
        std::vector<Rational> roots = rational_roots(mp);
        if (roots.empty()) continue;
        // Split off the full (t - root)^k factor of the first usable root.
        RatPoly fpart, gpart;
        bool found = false;
        for (const Rational& root : roots) {
            RatPoly lin{-root, Rational(1)};
            RatPoly f{Rational(1)};
            RatPoly g = mp;
            while (true) {
                auto [qq, rr] = poly_divmod(g, lin);
                if (poly_trim(rr).empty()) {
                    g = qq;
                    f = poly_mul(f, lin);
                } else {
                    break;
                }
            }
            if (poly_trim(g).size() >= 2) {  // both factors nonconstant
                fpart = f;
                gpart = g;
                found = true;
                break;
            }
        }
        if (!found) continue;
        auto [gcd_fg, u, v] = poly_ext_gcd(fpart, gpart);
        if (gcd_fg.size() != 1) continue;
        // e = (u * fpart)(cand) inside End/rad, computed via powers of cand.
        std::vector<RatVec> powers{one_bar};
        std::size_t need = std::max(fpart.size(), u.size()) + 1;
        while (powers.size() < need + fpart.size())
            powers.push_back(mult_bar(powers.back(), cand));
        auto eval_bar = [&](const RatPoly& poly) {
            RatVec acc(q);
            for (int i = 0; i < q; ++i) acc(i) = Rational(0);
            for (std::size_t i = 0; i < poly.size(); ++i)
                acc += powers[i] * poly[i];
            return acc;
        };
        RatVec ebar = mult_bar(eval_bar(u), eval_bar(fpart));
        bool is_zero_bar = true, is_one_bar = true;
        for (int i = 0; i < q; ++i) {
            if (!ebar(i).is_zero()) is_zero_bar = false;
            if (ebar(i) != one_bar(i)) is_one_bar = false;
        }
        if (is_zero_bar || is_one_bar) continue;

        // Newton-lift to an exact idempotent endomorphism.
        RatMat em = matrix_of_coords(lift_bar(ebar));
        bool idem = false;
        try {
            for (int it = 0; it < 30; ++it) {
                RatMat sq = (em * em).eval();
                if (sq == em) {
                    idem = true;
                    break;
                }
                em = (sq * (RatMat::Identity(ea.space.total, ea.space.total) * Rational(3) -
                            em * Rational(2)))
                         .eval();
            }
        } catch (const Error&) {
            continue;
        }
        if (!idem || mat_is_zero(em)) continue;
        RatMat idm = RatMat::Identity(ea.space.total, ea.space.total);
        if (em == idm) continue;
        Morphism emor = endo_from_matrix(ea.space, em);
        Morphism cmor = endo_from_matrix(ea.space, (idm - em).eval());
        LadderRep k1 = kernel_rep(x, x, emor);
        LadderRep k2 = kernel_rep(x, x, cmor);
        if (k1.total_dim() == 0 || k2.total_dim() == 0) continue;
        if (k1.total_dim() + k2.total_dim() != x.total_dim()) continue;
        out1 = std::move(k1);
        out2 = std::move(k2);
        return true;
    }
    return false;
}

void split_rec(const LadderRep& x, std::mt19937& rng, std::vector<LadderRep>& pieces) {
    if (x.total_dim() == 0) return;
    LadderRep a, b;
    if (try_split(x, rng, a, b)) {
        split_rec(a, rng, pieces);
        split_rec(b, rng, pieces);
    } else {
        pieces.push_back(x);
    }
}

}  // namespace

bool is_isomorphic(const LadderRep& x, const LadderRep& y, int seed) {
    if (x.p() != y.p()) return false;
    std::set<int> degs = rep_degrees(x);
    for (int d : rep_degrees(y)) degs.insert(d);
    for (int d : degs)
        if (x.sub.dim(d) != y.sub.dim(d) || x.amb.dim(d) != y.amb.dim(d)) return false;
    if (x.total_dim() == 0) return true;
    HomSpace h = hom(x, y);
    if (h.dim() == 0) return false;
    HomLayout lo = make_layout(x, y);
    auto invertible = [&](const Morphism& f) {
        for (int d : degs) {
            if (x.sub.dim(d) > 0 && rank(mor_sub_at(x, y, f, d)) != x.sub.dim(d)) return false;
            if (x.amb.dim(d) > 0 && rank(mor_amb_at(x, y, f, d)) != x.amb.dim(d)) return false;
        }
        return true;
    };
    for (const Morphism& f : h.basis)
        if (invertible(f)) return true;
    std::mt19937 rng(static_cast<unsigned>(seed) * 7919u + 13u);
    std::uniform_int_distribution<int> coeff(-2, 2);
    for (int t = 0; t < 40; ++t) {
        RatVec v(lo.total);
        for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Rational(0);
        for (const Morphism& f : h.basis) {
            int c = coeff(rng);
            if (c != 0) v += vec_of(lo, x, y, f) * Rational(c);
        }
        if (invertible(morphism_of(lo, v))) return true;
    }
    return false;
}

std::vector<std::pair<LadderRep, int>> decompose(const LadderRep& x, int seed) {
    std::mt19937 rng(static_cast<unsigned>(seed));
    std::vector<LadderRep> pieces;
    split_rec(x, rng, pieces);
    int total = 0;
    for (const LadderRep& piece : pieces) total += piece.total_dim();
    if (total != x.total_dim()) throw Error("internal: decomposition lost dimensions");
    std::vector<std::pair<LadderRep, int>> out;
    for (LadderRep& piece : pieces) {
        bool matched = false;
        for (auto& [rep, mult] : out) {
            if (is_isomorphic(piece, rep, seed)) {
                ++mult;
                matched = true;
                break;
            }
        }
        if (!matched) out.emplace_back(std::move(piece), 1);
    }
    return out;
}

bool is_indecomposable(const LadderRep& x, int seed) {
    if (x.total_dim() == 0) return false;
    std::vector<std::pair<LadderRep, int>> parts = decompose(x, seed);
    return parts.size() == 1 && parts[0].second == 1;
}

// ---------------------------------------------------------------------------
// lambda and the rectangle tilting object

LadderRep lambda(const GradedModule& n) {
    std::string why;
    if (!module_valid(n, &why)) throw UsageError("lambda of invalid module: " + why);
    if (n.total_dim() == 0) return zero_rep(n.p);
    ModuleCover c0 = module_cover(n);
    ModuleSub k = module_kernel(c0.fs.mod, n, c0.pi);
    ModuleCover c1 = module_cover(k.mod);
    ModuleHom pres = compose_module(c1.fs.mod, k.mod, c0.fs.mod, k.incl, c1.pi);
    LadderRep f1 = free_pair(c1.fs.mod);
    LadderRep f0 = free_pair(c0.fs.mod);
    Morphism phi;
    phi.f_sub = pres.f;
    phi.f_amb = pres.f;
    return cokernel_rep(f1, f0, phi);
}

std::vector<LadderRep> rect_tilting(int p) {
    if (p < 2) throw UsageError("rect_tilting needs p >= 2");
    std::vector<LadderRep> out;
    for (int j = 0; j <= p - 2; ++j) {
        LadderRep t = zero_rep(p);
        t.amb = free_module(p, -j);
        t.sub = cyclic_module(p, 1, p - 1 - j);
        for (int d = 1; d <= p - 1 - j; ++d) t.iota[d] = RatMat::Identity(1, 1);
        out.push_back(std::move(t));
    }
    for (int j = 0; j <= p - 2; ++j) out.push_back(lambda(cyclic_module(p, 1, p - 1 - j)));
    return out;
}

Report verify_rect_tilting(int p) {
    Report r;
    std::vector<LadderRep> t = rect_tilting(p);
    const int n = static_cast<int>(t.size());
    const int half = p - 1;

    bool all_ok = true;
    std::string detail;
    for (int i = 0; i < n; ++i) {
        if (!in_nil(t[static_cast<std::size_t>(i)]) ||
            !is_indecomposable(t[static_cast<std::size_t>(i)])) {
            all_ok = false;
            detail += (detail.empty() ? "summand " : ", summand ") + std::to_string(i);
        }
    }
    r.add("every tilting summand is indecomposable and lies in nil(p)", all_ok, detail);

    IntMat s(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            s(i, j) = stable_hom(t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(j)])
                          .dim();
    IntMat c = algebras::cartan_poset(algebras::rectangle_poset(p)).c;
    auto sigma = [&](bool barswap, bool reverse) {
        std::vector<int> m(static_cast<std::size_t>(n));
        for (int j = 0; j < half; ++j) {
            int jj = reverse ? half - 1 - j : j;
            m[static_cast<std::size_t>(j)] = (barswap ? half : 0) + jj;        // upper summands
            m[static_cast<std::size_t>(half + j)] = (barswap ? 0 : half) + jj;  // lower summands
        }
        return m;
    };
    bool matched = false;
    std::string how = "no re-indexing of the rectangle matches";
    for (bool barswap : {false, true}) {
        for (bool reverse : {false, true}) {
            std::vector<int> m = sigma(barswap, reverse);
            bool ok = true;
            for (int i = 0; i < n && ok; ++i)
                for (int j = 0; j < n && ok; ++j)
                    if (s(i, j) != c(m[static_cast<std::size_t>(i)], m[static_cast<std::size_t>(j)]))
                        ok = false;
            if (ok && !matched) {
                matched = true;
                how = std::string("rows (") + (barswap ? "2,*),(1,*)" : "1,*),(2,*)") +
                      " against (upper, lower), index " + (reverse ? "descending" : "ascending");
            }
        }
    }
    r.add("stable-hom matrix equals the Cartan matrix of B(2,p-1) up to one re-indexing", matched,
          how);

    bool ext_ok = true;
    detail.clear();
    std::vector<LadderRep> cos;
    cos.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) cos.push_back(cosyzygy(t[static_cast<std::size_t>(j)]));
    for (int i = 0; i < n && ext_ok; ++i)
        for (int j = 0; j < n && ext_ok; ++j)
            if (stable_hom(t[static_cast<std::size_t>(i)], cos[static_cast<std::size_t>(j)]).dim() !=
                0) {
                ext_ok = false;
                detail = "nonzero at (" + std::to_string(i) + ", " + std::to_string(j) + ")";
            }
    r.add("stable_hom(T_i, cosyzygy(T_j)) = 0 for all i, j", ext_ok, detail);

    r.add("summand count equals 2(p-1)", n == 2 * (p - 1),
          "count = " + std::to_string(n) + ", 2(p-1) = " + std::to_string(2 * (p - 1)));
    return r;
}

// ---------------------------------------------------------------------------
// JSON serialization

namespace {

using nlohmann::json;

json rat_to_json(const Rational& r) {
    if (r.is_integer()) return json(r.num());
    return json(r.str());
}

Rational rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw UsageError("matrix entries must be integers or \"a/b\" strings");
}

json matrix_to_json(const RatMat& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(rat_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

RatMat matrix_from_json(const json& j, int rows, int cols, const std::string& what) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw UsageError(what + ": expected " + std::to_string(rows) + " rows");
    RatMat m = RatMat::Constant(rows, cols, Rational(0));
    for (int r = 0; r < rows; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw UsageError(what + ": expected " + std::to_string(cols) + " columns");
        for (int c = 0; c < cols; ++c) m(r, c) = rat_from_json(row[static_cast<std::size_t>(c)]);
    }
    return m;
}

json module_to_json(const GradedModule& m) {
    json dims = json::array();
    for (auto& [d, n] : m.dims) dims.push_back(json{{"degree", d}, {"dim", n}});
    json maps = json::array();
    for (auto& [d, mat] : m.maps) {
        if (mat_is_zero(mat)) continue;
        maps.push_back(json{{"from_degree", d}, {"matrix", matrix_to_json(mat)}});
    }
    return json{{"dims", dims}, {"maps", maps}};
}

GradedModule module_from_json(const json& j, int p, const std::string& what) {
    if (!j.is_object()) throw UsageError(what + " must be an object");
    GradedModule m;
    m.p = p;
    if (j.contains("dims")) {
        for (const json& e : j.at("dims")) {
            int d = e.at("degree").get<int>();
            int n = e.at("dim").get<int>();
            if (n <= 0) throw UsageError(what + ": dimensions must be positive");
            if (m.dims.count(d)) throw UsageError(what + ": duplicate degree " + std::to_string(d));
            m.dims[d] = n;
        }
    }
    if (j.contains("maps")) {
        for (const json& e : j.at("maps")) {
            int d = e.at("from_degree").get<int>();
            if (m.dim(d) == 0 || m.dim(d + 1) == 0)
                throw UsageError(what + ": map at degree " + std::to_string(d) +
                                 " between zero components");
            m.maps[d] = matrix_from_json(e.at("matrix"), m.dim(d + 1), m.dim(d),
                                         what + " map at degree " + std::to_string(d));
        }
    }
    return m;
}

}  // namespace

std::string rep_to_json(const LadderRep& x) {
    json iota = json::array();
    for (auto& [d, m] : x.iota) {
        if (mat_is_zero(m)) continue;
        iota.push_back(json{{"degree", d}, {"matrix", matrix_to_json(m)}});
    }
    json top{{"p", x.p()},
             {"field", "Q"},
             {"ambient", module_to_json(x.amb)},
             {"sub", module_to_json(x.sub)},
             {"iota", iota}};
    return top.dump(2);
}

LadderRep rep_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw UsageError(std::string("malformed representation JSON: ") + e.what());
    }
    if (!j.is_object()) throw UsageError("representation JSON must be an object");
    if (!j.contains("p") || !j.at("p").is_number_integer())
        throw UsageError("representation JSON needs an integer field \"p\"");
    int p = j.at("p").get<int>();
    if (p < 2) throw UsageError("representation p must be >= 2");
    std::string field = j.value("field", std::string("Q"));
    if (field != "Q") throw FieldNotSupported("field \"" + field + "\" (only \"Q\" is supported)");
    LadderRep x = zero_rep(p);
    if (j.contains("ambient")) x.amb = module_from_json(j.at("ambient"), p, "ambient");
    if (j.contains("sub")) x.sub = module_from_json(j.at("sub"), p, "sub");
    if (j.contains("iota")) {
        for (const json& e : j.at("iota")) {
            int d = e.at("degree").get<int>();
            if (x.sub.dim(d) == 0 || x.amb.dim(d) == 0)
                throw UsageError("iota at degree " + std::to_string(d) +
                                 " between zero components");
            x.iota[d] = matrix_from_json(e.at("matrix"), x.amb.dim(d), x.sub.dim(d),
                                         "iota at degree " + std::to_string(d));
        }
    }
    return x;
}

}  // namespace wpl::ladder
