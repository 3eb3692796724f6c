#include "wpl/arquiver.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

#include "wpl/error.hpp"
#include "wpl/lgroup.hpp"

namespace wpl::arquiver {

namespace {

// Persistence pattern of the line-bundle orbits, one symbol per slice step.
constexpr const char* kPattern = "+-+---";

int pattern_pluses(int phase, int width) {
    int n = 0;
    for (int j = 0; j < width; ++j)
        if (kPattern[((j + phase) % 6 + 6) % 6] == '+') ++n;
    return n;
}

// Index of the vertex the affine extension attaches to.
int ext_attach(int p) {
    if (p == 2) return 2;      // arm-2 vertex at the center  (D~5)
    if (p == 3) return 1;      // arm-1 end                   (E~6)
    if (p == 4) return 3;      // arm-2 end                   (E~7)
    return p + 2;              // arm-3 end                   (E~8 at p = 5)
}

void require_window(int a, int b) {
    if (a > b) throw UsageError("slice window must satisfy begin <= end");
}

}  // namespace

int star_vertex_count(const StarTree& t) {
    if (t.p < 2) throw UsageError("star trees need p >= 2");
    return t.p + 3 + (t.extended ? 1 : 0);
}

std::vector<std::pair<int, int>> star_edges(const StarTree& t) {
    int n = star_vertex_count(t);
    std::vector<std::pair<int, int>> e;
    e.emplace_back(0, 1);                                     // arm 1
    e.emplace_back(0, 2);                                     // arm 2
    e.emplace_back(2, 3);
    for (int i = 4; i <= t.p + 2; ++i)                        // arm 3
        e.emplace_back(i == 4 ? 0 : i - 1, i);
    if (t.extended) e.emplace_back(ext_attach(t.p), n - 1);
    return e;
}

std::vector<std::string> star_vertex_names(const StarTree& t) {
    std::vector<std::string> names = {"center", "a1", "b1", "b2"};
    for (int i = 1; i <= t.p - 1; ++i) names.push_back("t" + std::to_string(i));
    if (t.extended) names.push_back("ext");
    return names;
}

IntVec null_root(const StarTree& t) {
    int n = star_vertex_count(t);
    RatMat a = RatMat::Zero(n, n);
    for (const auto& [u, v] : star_edges(t)) {
        a(u, v) = Rational(1);
        a(v, u) = Rational(1);
    }
    for (int i = 0; i < n; ++i) a(i, i) = a(i, i) - Rational(2);
    RatMat k = kernel_basis(a);
    if (k.cols() != 1)
        throw NoNullRoot("the star tree has no one-dimensional radical, so no null root");
    RatVec f = k.col(0);
    if (f(0).num() < 0) f = -f;
    Rational mn = f(0);
    for (int i = 0; i < n; ++i) {
        if (f(i).num() <= 0)
            throw NoNullRoot("the radical generator is not strictly positive");
        if (f(i) < mn) mn = f(i);
    }
    IntVec root(n);
    for (int i = 0; i < n; ++i) {
        Rational scaled = f(i) / mn;
        if (!scaled.is_integer())
            throw NoNullRoot("the radical generator does not scale to an integer vector");
        root(i) = scaled.num();
    }
    return root;
}

int TransQuiver::at(int orbit, int slice) const {
    int s = slice;
    if (cyclic && period > 0) {
        int r = (s - slice_begin) % period;
        if (r < 0) r += period;
        s = slice_begin + r;
    }
    if (s < slice_begin || s >= slice_end || orbit < 0 || orbit >= num_orbits) return -1;
    QVertex key{orbit, s};
    auto less = [](const QVertex& x, const QVertex& y) {
        return std::tie(x.slice, x.orbit) < std::tie(y.slice, y.orbit);
    };
    auto it = std::lower_bound(vertices.begin(), vertices.end(), key, less);
    if (it == vertices.end() || it->orbit != orbit || it->slice != s) return -1;
    return static_cast<int>(it - vertices.begin());
}

TransQuiver build_domestic(int p, int slice_begin, int slice_end) {
    if (p < 2 || p > 5) throw UsageError("domestic windows need 2 <= p <= 5");
    require_window(slice_begin, slice_end);
    StarTree t{p, true};
    IntVec root = null_root(t);
    auto edges = star_edges(t);
    int n = star_vertex_count(t);

    TransQuiver q;
    q.p = p;
    q.kind = "domestic";
    q.num_orbits = n;
    q.slice_begin = slice_begin;
    q.slice_end = slice_end;
    q.distinguished_components = 1;
    q.orbit_name = star_vertex_names(t);
    for (int s = slice_begin; s < slice_end; ++s)
        for (int o = 0; o < n; ++o) q.vertices.push_back({o, s});
    int nv = static_cast<int>(q.vertices.size());
    q.rank.resize(nv);
    q.is_line.resize(nv);
    q.mark.assign(nv, Mark::NonLine);
    q.tau.resize(nv);
    for (int i = 0; i < nv; ++i) {
        q.rank[i] = static_cast<int>(root(q.vertices[i].orbit));
        q.is_line[i] = (q.rank[i] == 1);
        q.tau[i] = q.at(q.vertices[i].orbit, q.vertices[i].slice - 1);
    }
    for (int s = slice_begin; s < slice_end; ++s) {
        for (const auto& [u, v] : edges) {
            int a = q.at(u, s);
            int b = q.at(v, s);
            if (a >= 0 && b >= 0) q.arrows.push_back({a, b});
            int d = q.at(u, s + 1);
            if (b >= 0 && d >= 0) q.arrows.push_back({b, d});
        }
    }
    return q;
}

namespace {

// Shared grid construction for tubes and wild strips: rows are tau-orbits,
// row r has rank r+1, arrows go up within a slice and down into the next.
TransQuiver build_grid(int p, const std::string& kind, int slice_begin,
                       int slice_end, int height, bool cyclic, int period) {
    require_window(slice_begin, slice_end);
    if (height < 1) throw UsageError("grid windows need at least one row");
    TransQuiver q;
    q.p = p;
    q.kind = kind;
    q.num_orbits = height;
    q.slice_begin = slice_begin;
    q.slice_end = slice_end;
    q.cyclic = cyclic;
    q.period = cyclic ? period : 0;
    for (int r = 0; r < height; ++r) q.orbit_name.push_back("row" + std::to_string(r));
    for (int s = slice_begin; s < slice_end; ++s)
        for (int r = 0; r < height; ++r) q.vertices.push_back({r, s});
    int nv = static_cast<int>(q.vertices.size());
    q.rank.resize(nv);
    q.is_line.resize(nv);
    q.mark.assign(nv, Mark::NonLine);
    q.tau.resize(nv);
    for (int i = 0; i < nv; ++i) {
        q.rank[i] = q.vertices[i].orbit + 1;
        q.is_line[i] = (q.rank[i] == 1);
        q.tau[i] = q.at(q.vertices[i].orbit, q.vertices[i].slice - 1);
    }
    for (int s = slice_begin; s < slice_end; ++s) {
        for (int r = 0; r < height; ++r) {
            int a = q.at(r, s);
            int up = q.at(r + 1, s);
            if (up >= 0) q.arrows.push_back({a, up});
            if (r >= 1) {
                int down = q.at(r - 1, s + 1);
                if (down >= 0) q.arrows.push_back({a, down});
            }
        }
    }
    return q;
}

}  // namespace

TransQuiver build_tube(int period, int slice_begin, int slice_end, int height) {
    if (period < 1) throw UsageError("tubes need period >= 1");
    require_window(slice_begin, slice_end);
    if (slice_end - slice_begin > period)
        throw UsageError("tube windows cannot exceed one period");
    bool closed = (slice_end - slice_begin == period);
    TransQuiver q = build_grid(6, "tube", slice_begin, slice_end, height, closed, period);
    q.distinguished_components = 1;
    return q;
}

TransQuiver build_wild_window(int p, int slice_begin, int slice_end, int height) {
    if (p < 7) throw UsageError("wild windows need p >= 7");
    TransQuiver q = build_grid(p, "wild", slice_begin, slice_end, height, false, 0);
    q.distinguished_components = p - 6;
    return q;
}

Report check_mesh(const TransQuiver& q) {
    Report rep;
    bool bij_ok = true;
    bool middle_ok = true;
    bool rank_ok = true;
    std::string bij_detail;
    std::string middle_detail;
    std::string rank_detail;
    int checked = 0;

    auto vertex_name = [&](int i) {
        return "(" + q.orbit_name[q.vertices[i].orbit] + "," +
               std::to_string(q.vertices[i].slice) + ")";
    };

    for (int x = 0; x < static_cast<int>(q.vertices.size()); ++x) {
        int tx = q.tau[x];
        if (tx < 0) continue;
        // Grid windows truncate the top row, so its meshes are incomplete.
        if (q.kind != "domestic" && q.vertices[x].orbit == q.num_orbits - 1) continue;
        ++checked;
        std::vector<int> sources;
        std::vector<int> targets;
        for (const auto& a : q.arrows) {
            if (a.to == x) sources.push_back(a.from);
            if (a.from == tx) targets.push_back(a.to);
        }
        std::sort(sources.begin(), sources.end());
        std::sort(targets.begin(), targets.end());
        if (sources != targets && bij_ok) {
            bij_ok = false;
            bij_detail = "first failure at " + vertex_name(x);
        }
        if (sources.empty() && middle_ok) {
            middle_ok = false;
            middle_detail = "empty mesh at " + vertex_name(x);
        }
        int sum = 0;
        for (int s : sources) sum += q.rank[s];
        if (q.rank[x] + q.rank[tx] != sum && rank_ok) {
            rank_ok = false;
            rank_detail = "first failure at " + vertex_name(x) + ": " +
                          std::to_string(q.rank[x]) + "+" + std::to_string(q.rank[tx]) +
                          " != " + std::to_string(sum);
        }
    }
    std::string count = "checked " + std::to_string(checked) + " meshes";
    rep.add("arrows into each interior vertex biject with arrows out of its translate",
            bij_ok, bij_ok ? count : bij_detail);
    rep.add("every interior mesh has at least one middle term", middle_ok,
            middle_ok ? count : middle_detail);
    rep.add("rank labels are mesh-additive", rank_ok, rank_ok ? count : rank_detail);
    return rep;
}

std::vector<int> line_orbits(const TransQuiver& q) {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(q.vertices.size()); ++i) {
        if (!q.is_line[i]) continue;
        int o = q.vertices[i].orbit;
        if (std::find(out.begin(), out.end(), o) == out.end()) out.push_back(o);
    }
    std::sort(out.begin(), out.end());
    return out;
}

TransQuiver mark_pattern(const TransQuiver& q, const std::vector<int>& phases) {
    auto lo = line_orbits(q);
    if (phases.size() != lo.size())
        throw UsageError("mark_pattern needs one phase per line orbit");
    std::map<int, int> phase_of;
    for (std::size_t k = 0; k < lo.size(); ++k) phase_of[lo[k]] = phases[k];
    TransQuiver out = q;
    for (int i = 0; i < static_cast<int>(q.vertices.size()); ++i) {
        if (!q.is_line[i]) {
            out.mark[i] = Mark::NonLine;
            continue;
        }
        int pos = ((q.vertices[i].slice + phase_of[q.vertices[i].orbit]) % 6 + 6) % 6;
        out.mark[i] = kPattern[pos] == '+' ? Mark::Persistent : Mark::Fading;
    }
    return out;
}

PhaseConstraints default_constraints(int p) {
    if (p < 2) throw UsageError("phase constraints need p >= 2");
    PhaseConstraints c;
    c.total_persistent = 2;
    if (p == 2) {
        c.window = {2, 1, 2, 1};
    } else if (p == 3) {
        c.window = {2, 2, 2};
    } else if (p == 4) {
        c.window = {3, 3};
        c.per_orbit = {1, 1};  // one persistent line per bar, forced
    } else {
        c.window = {6};
    }
    return c;
}

std::vector<std::vector<int>> phase_search(const TransQuiver& q,
                                           const PhaseConstraints& c) {
    auto lo = line_orbits(q);
    std::size_t k = lo.size();
    if (c.window.size() != k)
        throw UsageError("phase_search needs one window per line orbit");
    if (!c.per_orbit.empty() && c.per_orbit.size() != k)
        throw UsageError("per-orbit persistence targets must match the line orbits");
    int cells = 0;
    for (int w : c.window) {
        if (w < 0) throw UsageError("window widths must be nonnegative");
        cells += w;
    }
    if (cells != 6)
        throw UsageError("constraint windows must cover 6 line vertices");

    std::vector<std::vector<int>> results;
    std::vector<int> phases(k, 0);
    // Lexicographic odometer over {0..5}^k.
    while (true) {
        int total = 0;
        bool orbit_ok = true;
        for (std::size_t i = 0; i < k; ++i) {
            int n = pattern_pluses(phases[i], c.window[i]);
            total += n;
            if (!c.per_orbit.empty() && n != c.per_orbit[i]) orbit_ok = false;
        }
        if (orbit_ok && total == c.total_persistent) results.push_back(phases);
        std::size_t i = k;
        while (i > 0 && phases[i - 1] == 5) phases[--i] = 0;
        if (i == 0) break;
        ++phases[i - 1];
    }
    if (results.empty())
        throw NoConsistentPhase("no phase tuple meets the persistence constraints");
    return results;
}

TransQuiver delete_fading(const TransQuiver& q) {
    TransQuiver out;
    out.p = q.p;
    out.kind = q.kind;
    out.num_orbits = q.num_orbits;
    out.slice_begin = q.slice_begin;
    out.slice_end = q.slice_end;
    out.cyclic = q.cyclic;
    out.period = q.period;
    out.distinguished_components = q.distinguished_components;
    out.orbit_name = q.orbit_name;

    int nv = static_cast<int>(q.vertices.size());
    std::vector<int> remap(nv, -1);
    for (int i = 0; i < nv; ++i) {
        if (q.mark[i] == Mark::Fading) continue;
        remap[i] = static_cast<int>(out.vertices.size());
        out.vertices.push_back(q.vertices[i]);
        out.rank.push_back(q.rank[i]);
        out.is_line.push_back(q.is_line[i]);
        out.mark.push_back(q.mark[i]);
    }
    for (int i = 0; i < nv; ++i) {
        if (remap[i] < 0) continue;
        int t = q.tau[i];
        out.tau.push_back(t >= 0 && remap[t] >= 0 ? remap[t] : -1);
    }
    for (const auto& a : q.arrows)
        if (remap[a.from] >= 0 && remap[a.to] >= 0)
            out.arrows.push_back({remap[a.from], remap[a.to]});
    return out;
}

FdCounts fd_counts(int p) {
    if (p < 3) throw WeightTooSmall("fundamental-domain counts need weight p >= 3");
    auto w = lgroup::weights(p);
    auto x1 = lgroup::xi(w, 1);
    auto x2 = lgroup::xi(w, 2);
    auto x3 = lgroup::xi(w, 3);
    auto cc = lgroup::c(w);
    std::int64_t d3 = lgroup::delta(x3);
    std::int64_t dw = lgroup::delta(lgroup::omega(w));

    // delta(n1 x1 + n2 x2 + n3 x3) < 3 delta(c), so m in [-4, 1] reaches every
    // class whose delta (or Auslander slope) can land in the target window.
    std::vector<std::pair<std::int64_t, lgroup::LElt>> lines;
    int auslander = 0;
    for (int n1 = 0; n1 < 2; ++n1)
        for (int n2 = 0; n2 < 3; ++n2)
            for (int n3 = 0; n3 < p; ++n3)
                for (int m = -4; m <= 1; ++m) {
                    auto x = lgroup::smul(n1, x1) + lgroup::smul(n2, x2) +
                             lgroup::smul(n3, x3) + lgroup::smul(m, cc);
                    std::int64_t d = lgroup::delta(x);
                    if (d >= 0 && d < d3) lines.emplace_back(d, x);
                    if (2 * d + dw >= 0 && 2 * d + dw < 2 * d3) ++auslander;
                }
    std::sort(lines.begin(), lines.end(),
              [](const auto& a, const auto& b) {
                  return std::make_tuple(a.first, a.second.n1(), a.second.n2(),
                                         a.second.n3(), a.second.m()) <
                         std::make_tuple(b.first, b.second.n1(), b.second.n2(),
                                         b.second.n3(), b.second.m());
              });

    FdCounts out;
    out.line_bundles = static_cast<int>(lines.size());
    out.auslander = auslander;
    for (const auto& [d, x] : lines) {
        out.lines.push_back(x.str());
        if (lgroup::bar_class(x).persistent()) {
            ++out.persistent;
            out.persistent_lines.push_back(x.str());
        }
    }
    return out;
}

namespace {

std::string ascii_cell(const TransQuiver& q, int i) {
    if (i < 0) return ".";
    if (q.mark[i] == Mark::Persistent) return "•";  // •
    if (q.mark[i] == Mark::Fading) return "∘";      // ∘
    return std::to_string(q.rank[i]);
}

std::string emit_ascii(const TransQuiver& q) {
    std::ostringstream os;
    os << q.kind << " p=" << q.p << " slices [" << q.slice_begin << ","
       << q.slice_end << ")";
    if (q.cyclic) os << " period=" << q.period;
    os << "\n";
    std::size_t name_w = 0;
    for (const auto& n : q.orbit_name) name_w = std::max(name_w, n.size());
    for (int o = 0; o < q.num_orbits; ++o) {
        std::string name = q.orbit_name[o];
        os << name << std::string(name_w - name.size(), ' ');
        int r = 0;
        for (int s = q.slice_begin; s < q.slice_end; ++s) {
            int i = q.at(o, s);
            if (i >= 0) r = q.rank[i];
        }
        os << " r" << r << ":";
        for (int s = q.slice_begin; s < q.slice_end; ++s)
            os << " " << ascii_cell(q, q.at(o, s));
        os << "\n";
    }
    return os.str();
}

std::string emit_dot(const TransQuiver& q) {
    std::ostringstream os;
    os << "digraph quiver {\n  rankdir=LR;\n";
    for (int i = 0; i < static_cast<int>(q.vertices.size()); ++i) {
        const auto& v = q.vertices[i];
        os << "  \"v" << v.orbit << "_" << v.slice << "\" [label=\""
           << q.orbit_name[v.orbit] << " s" << v.slice << " r" << q.rank[i] << "\"";
        os << ", shape=" << (q.is_line[i] ? "circle" : "box");
        if (q.mark[i] == Mark::Persistent) os << ", style=filled";
        if (q.mark[i] == Mark::Fading) os << ", style=dotted";
        os << "];\n";
    }
    for (const auto& a : q.arrows) {
        const auto& u = q.vertices[a.from];
        const auto& v = q.vertices[a.to];
        os << "  \"v" << u.orbit << "_" << u.slice << "\" -> \"v" << v.orbit
           << "_" << v.slice << "\"";
        if (q.mark[a.from] == Mark::Fading || q.mark[a.to] == Mark::Fading)
            os << " [style=dotted]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace

std::string emit(const TransQuiver& q, const std::string& format) {
    if (format == "dot") return emit_dot(q);
    if (format == "ascii") return emit_ascii(q);
    throw UsageError("unknown quiver format: " + format);
}

}  // namespace wpl::arquiver
