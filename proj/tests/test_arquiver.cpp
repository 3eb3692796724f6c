#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "wpl/arquiver.hpp"
#include "wpl/error.hpp"
#include "wpl/lgroup.hpp"

using namespace wpl;
using namespace wpl::arquiver;

namespace {

std::vector<int> as_vector(const IntVec& v) {
    std::vector<int> out;
    for (int i = 0; i < v.size(); ++i) out.push_back(static_cast<int>(v(i)));
    return out;
}

int count_ones(const IntVec& v) {
    int n = 0;
    for (int i = 0; i < v.size(); ++i)
        if (v(i) == 1) ++n;
    return n;
}

// Persistence sequence of one orbit along the slices, as '+'/'-' symbols.
std::string orbit_symbols(const TransQuiver& q, int orbit) {
    std::string s;
    for (int j = q.slice_begin; j < q.slice_end; ++j) {
        int i = q.at(orbit, j);
        REQUIRE(i >= 0);
        s += q.mark[i] == Mark::Persistent ? '+' : '-';
    }
    return s;
}

bool is_rotation(const std::string& a, const std::string& b) {
    return a.size() == b.size() && (a + a).find(b) != std::string::npos;
}

}  // namespace

TEST_CASE("star trees and their null roots") {
    // Base trees have p+3 vertices, extended ones p+4.
    for (int p = 2; p <= 6; ++p) {
        CHECK(star_vertex_count({p, false}) == p + 3);
        CHECK(star_vertex_count({p, true}) == p + 4);
        CHECK(static_cast<int>(star_vertex_names({p, true}).size()) == p + 4);
        CHECK(static_cast<int>(star_edges({p, true}).size()) == p + 3);
    }

    // Null roots of the extended trees, in the documented vertex order.
    CHECK(as_vector(null_root({2, true})) == std::vector<int>{2, 1, 2, 1, 1, 1});
    CHECK(as_vector(null_root({3, true})) == std::vector<int>{3, 2, 2, 1, 2, 1, 1});
    CHECK(as_vector(null_root({4, true})) == std::vector<int>{4, 2, 3, 2, 3, 2, 1, 1});
    CHECK(as_vector(null_root({5, true})) == std::vector<int>{6, 3, 4, 2, 5, 4, 3, 2, 1});

    // Number of rank-one entries is 6 - p on the domestic range.
    for (int p = 2; p <= 5; ++p) CHECK(count_ones(null_root({p, true})) == 6 - p);

    // The unextended (2,3,6) tree is itself affine, with the same marks as
    // the p = 5 extension.
    auto e8 = as_vector(null_root({6, false}));
    auto e8x = as_vector(null_root({5, true}));
    std::sort(e8.begin(), e8.end());
    std::sort(e8x.begin(), e8x.end());
    CHECK(e8 == e8x);

    // Finite and wild trees have no null root.
    CHECK_THROWS_AS(null_root({5, false}), NoNullRoot);  // finite type
    CHECK_THROWS_AS(null_root({7, false}), NoNullRoot);  // wild
    CHECK_THROWS_AS(null_root({6, true}), NoNullRoot);   // over-extended
}

TEST_CASE("domestic windows: shape, meshes and line orbits") {
    for (int p = 2; p <= 5; ++p) {
        TransQuiver q = build_domestic(p, -1, 4);
        CHECK(q.kind == "domestic");
        CHECK(q.num_orbits == p + 4);
        CHECK(static_cast<int>(q.vertices.size()) == 5 * (p + 4));
        CHECK(q.distinguished_components == 1);

        // Vertices are sorted by (slice, orbit) and at() inverts the layout.
        for (int i = 0; i < static_cast<int>(q.vertices.size()); ++i)
            CHECK(q.at(q.vertices[i].orbit, q.vertices[i].slice) == i);

        // tau shifts one slice back and is undefined on the first slice.
        for (int i = 0; i < static_cast<int>(q.vertices.size()); ++i) {
            if (q.vertices[i].slice == -1) {
                CHECK(q.tau[i] == -1);
            } else {
                CHECK(q.tau[i] == q.at(q.vertices[i].orbit, q.vertices[i].slice - 1));
            }
        }

        Report rep = check_mesh(q);
        for (const auto& line : rep.lines) {
            INFO("p=" << p << " " << line.claim << ": " << line.detail);
            CHECK(line.ok);
        }

        // Rank-one orbits match the omega-quotient of the weight lattice.
        auto w = lgroup::weights(p);
        auto omega_classes = lgroup::quotient(lgroup::omega(w));
        CHECK(line_orbits(q).size() == omega_classes.size());
        CHECK(static_cast<int>(line_orbits(q).size()) == 6 - p);
    }

    CHECK_THROWS_AS(build_domestic(1, 0, 2), UsageError);
    CHECK_THROWS_AS(build_domestic(6, 0, 2), UsageError);
    CHECK_THROWS_AS(build_domestic(3, 2, 0), UsageError);
}

TEST_CASE("tube windows: wrap, period and meshes") {
    TransQuiver q = build_tube(6, 0, 6, 3);
    CHECK(q.cyclic);
    CHECK(q.period == 6);
    CHECK(static_cast<int>(q.vertices.size()) == 18);
    CHECK(line_orbits(q) == std::vector<int>{0});

    // tau has period 6 on the closed tube.
    for (int i = 0; i < static_cast<int>(q.vertices.size()); ++i) {
        int x = i;
        for (int k = 0; k < 6; ++k) {
            x = q.tau[x];
            REQUIRE(x >= 0);
            if (k < 5) CHECK(x != i);
        }
        CHECK(x == i);
    }

    Report rep = check_mesh(q);
    for (const auto& line : rep.lines) {
        INFO(line.claim << ": " << line.detail);
        CHECK(line.ok);
    }

    // Ranks grow up the rows; the mouth is the line orbit.
    for (int i = 0; i < static_cast<int>(q.vertices.size()); ++i) {
        CHECK(q.rank[i] == q.vertices[i].orbit + 1);
        CHECK(q.is_line[i] == (q.vertices[i].orbit == 0));
    }

    // Open windows do not wrap.
    TransQuiver open = build_tube(6, 0, 3, 3);
    CHECK_FALSE(open.cyclic);
    CHECK(open.tau[open.at(1, 0)] == -1);
    CHECK(open.at(0, 3) == -1);

    CHECK_THROWS_AS(build_tube(6, 0, 7, 3), UsageError);
    CHECK_THROWS_AS(build_tube(0, 0, 0, 3), UsageError);
    CHECK_THROWS_AS(build_tube(6, 0, 6, 0), UsageError);
}

TEST_CASE("wild windows: boundary row and component count") {
    for (int p : {7, 8, 9, 10}) {
        TransQuiver q = build_wild_window(p, 0, 5, 4);
        CHECK(q.kind == "wild");
        CHECK(q.distinguished_components == p - 6);
        CHECK(line_orbits(q) == std::vector<int>{0});

        Report rep = check_mesh(q);
        for (const auto& line : rep.lines) {
            INFO("p=" << p << " " << line.claim << ": " << line.detail);
            CHECK(line.ok);
        }

        // Component count agrees with the omega-quotient of the lattice.
        auto w = lgroup::weights(p);
        CHECK(lgroup::quotient(lgroup::omega(w)).size() ==
              static_cast<std::size_t>(p - 6));
    }
    CHECK_THROWS_AS(build_wild_window(6, 0, 4, 3), UsageError);
}

TEST_CASE("marking line orbits with the six-periodic pattern") {
    // Phase 0 reproduces the pattern itself along slices 0..5.
    TransQuiver q = mark_pattern(build_domestic(5, 0, 6), {0});
    CHECK(orbit_symbols(q, line_orbits(q).front()) == "+-+---");

    // Shifting the phase rotates the pattern.
    for (int ph = 0; ph < 6; ++ph) {
        TransQuiver m = mark_pattern(build_domestic(5, 0, 6), {ph});
        std::string s = orbit_symbols(m, line_orbits(m).front());
        CHECK(is_rotation("+-+---", s));
        CHECK(std::count(s.begin(), s.end(), '+') == 2);
    }

    // Non-line vertices stay NonLine, and every line vertex gets a mark.
    for (int i = 0; i < static_cast<int>(q.vertices.size()); ++i) {
        if (q.is_line[i]) {
            CHECK(q.mark[i] != Mark::NonLine);
        } else {
            CHECK(q.mark[i] == Mark::NonLine);
        }
    }

    // The marked tube mouth reads as a rotation of the pattern.
    TransQuiver tube = mark_pattern(build_tube(6, 0, 6, 3), {4});
    CHECK(is_rotation("+-+---", orbit_symbols(tube, 0)));

    CHECK_THROWS_AS(mark_pattern(build_domestic(4, 0, 6), {0}), UsageError);
}

TEST_CASE("phase search under fundamental-domain constraints") {
    // p = 5: one orbit, window 6, any phase gives exactly 2 persistent.
    {
        TransQuiver q = build_domestic(5, 0, 6);
        auto sols = phase_search(q, default_constraints(5));
        CHECK(sols.size() == 6);
        CHECK(sols.front() == std::vector<int>{0});
        for (std::size_t i = 1; i < sols.size(); ++i) CHECK(sols[i - 1] < sols[i]);
    }

    // p = 4: the per-orbit split (1,1) is forced; phases 1,2,4,5 each give
    // one persistent vertex in a window of width 3.
    {
        TransQuiver q = build_domestic(4, 0, 6);
        auto sols = phase_search(q, default_constraints(4));
        CHECK(sols.size() == 16);
        CHECK(sols.front() == std::vector<int>{1, 1});
        std::set<int> allowed = {1, 2, 4, 5};
        for (const auto& s : sols) {
            CHECK(allowed.count(s[0]) == 1);
            CHECK(allowed.count(s[1]) == 1);
        }
        // Without the per-orbit pin, (2,0) splits appear as well.
        PhaseConstraints relaxed = default_constraints(4);
        relaxed.per_orbit.clear();
        auto more = phase_search(q, relaxed);
        CHECK(more.size() == 18);
    }

    // p = 3: three orbits of width 2; exactly two of them carry a plus.
    {
        TransQuiver q = build_domestic(3, 0, 6);
        auto sols = phase_search(q, default_constraints(3));
        CHECK(sols.size() == 96);
        for (const auto& s : sols) {
            int total = 0;
            for (std::size_t k = 0; k < s.size(); ++k) {
                std::string window;
                for (int j = 0; j < default_constraints(3).window[k]; ++j)
                    window += "+-+---"[(j + s[k]) % 6];
                total += static_cast<int>(std::count(window.begin(), window.end(), '+'));
            }
            CHECK(total == 2);
        }
    }

    // p = 2: four orbits with windows (2,1,2,1); solutions exist.
    {
        TransQuiver q = build_domestic(2, 0, 6);
        auto sols = phase_search(q, default_constraints(2));
        CHECK_FALSE(sols.empty());
    }

    // Unsatisfiable totals raise NoConsistentPhase.
    {
        TransQuiver q = build_domestic(5, 0, 6);
        PhaseConstraints c = default_constraints(5);
        c.total_persistent = 3;
        CHECK_THROWS_AS(phase_search(q, c), NoConsistentPhase);
    }

    // Malformed constraints are usage errors.
    {
        TransQuiver q = build_domestic(5, 0, 6);
        PhaseConstraints c;
        c.window = {3, 3};  // wrong arity for one line orbit
        CHECK_THROWS_AS(phase_search(q, c), UsageError);
        c.window = {5};  // does not cover 6 line vertices
        CHECK_THROWS_AS(phase_search(q, c), UsageError);
    }
}

TEST_CASE("deleting fading vertices") {
    // p = 5 over a full period: the line orbit loses 4 of its 6 vertices.
    TransQuiver q = mark_pattern(build_domestic(5, 0, 6), {0});
    TransQuiver d = delete_fading(q);
    CHECK(d.vertices.size() == q.vertices.size() - 4);
    for (int i = 0; i < static_cast<int>(d.vertices.size()); ++i)
        CHECK(d.mark[i] != Mark::Fading);

    // Arrow and tau indices survive reindexing consistently.
    for (const auto& a : d.arrows) {
        CHECK(a.from >= 0);
        CHECK(a.from < static_cast<int>(d.vertices.size()));
        CHECK(a.to >= 0);
        CHECK(a.to < static_cast<int>(d.vertices.size()));
    }
    for (int t : d.tau) CHECK(t < static_cast<int>(d.vertices.size()));

    // No arrow of the original window between two survivors is lost.
    int kept = 0;
    for (const auto& a : q.arrows)
        if (q.mark[a.from] != Mark::Fading && q.mark[a.to] != Mark::Fading) ++kept;
    CHECK(static_cast<int>(d.arrows.size()) == kept);

    // Closed tube: 2 of 6 mouth vertices survive per period.
    TransQuiver tube = mark_pattern(build_tube(6, 0, 6, 3), {0});
    TransQuiver td = delete_fading(tube);
    int mouth = 0;
    for (const auto& v : td.vertices)
        if (v.orbit == 0) ++mouth;
    CHECK(mouth == 2);
    CHECK(td.vertices.size() == tube.vertices.size() - 4);
}

TEST_CASE("fundamental-domain counts by lattice enumeration") {
    CHECK_THROWS_AS(fd_counts(2), WeightTooSmall);

    // Frozen p = 4 domain: the six line-bundle classes and the two
    // persistent ones among them, as normal forms "n1,n2,n3,m".
    FdCounts f4 = fd_counts(4);
    std::set<std::string> lines(f4.lines.begin(), f4.lines.end());
    CHECK(lines == std::set<std::string>{"0,0,0,0", "1,0,2,-1", "0,1,3,-1",
                                         "0,2,2,-1", "1,1,1,-1", "1,2,0,-1"});
    CHECK(f4.persistent_lines ==
          std::vector<std::string>{"0,0,0,0", "0,1,3,-1"});

    // Frozen p = 5 persistent classes: 0 and x2 - x3.
    FdCounts f5 = fd_counts(5);
    CHECK(f5.persistent_lines ==
          std::vector<std::string>{"0,0,0,0", "0,1,4,-1"});

    // The (6, 2, 6) invariant across domestic, tubular and wild weights,
    // and agreement with the canonical x3-quotient transversal.
    for (int p = 3; p <= 12; ++p) {
        FdCounts f = fd_counts(p);
        CHECK(f.line_bundles == 6);
        CHECK(f.persistent == 2);
        CHECK(f.auslander == 6);
        CHECK(f.lines.size() == 6);
        CHECK(f.persistent_lines.size() == 2);

        auto w = lgroup::weights(p);
        std::set<std::string> canon;
        for (const auto& x : lgroup::quotient(lgroup::xi(w, 3)))
            canon.insert(x.str());
        CHECK(std::set<std::string>(f.lines.begin(), f.lines.end()) == canon);
    }
}

TEST_CASE("emission is deterministic and shape-faithful") {
    TransQuiver q = mark_pattern(build_domestic(4, 0, 6),
                                 phase_search(build_domestic(4, 0, 6),
                                              default_constraints(4)).front());

    // Byte-determinism across repeated builds and emissions.
    TransQuiver q2 = mark_pattern(build_domestic(4, 0, 6),
                                  phase_search(build_domestic(4, 0, 6),
                                               default_constraints(4)).front());
    CHECK(emit(q, "dot") == emit(q2, "dot"));
    CHECK(emit(q, "ascii") == emit(q2, "ascii"));

    // DOT: one node statement per vertex, dotted styling at fading ends.
    std::string dot = emit(q, "dot");
    std::size_t nodes = 0;
    for (std::size_t pos = dot.find("[label="); pos != std::string::npos;
         pos = dot.find("[label=", pos + 1))
        ++nodes;
    CHECK(nodes == q.vertices.size());
    CHECK(dot.find("style=filled") != std::string::npos);
    CHECK(dot.find("style=dotted") != std::string::npos);
    CHECK(dot.rfind("digraph quiver {", 0) == 0);

    // ASCII: one row per orbit plus a header; marked cells use the two
    // bullet glyphs.
    std::string ascii = emit(q, "ascii");
    CHECK(std::count(ascii.begin(), ascii.end(), '\n') ==
          static_cast<long>(q.num_orbits) + 1);
    CHECK(ascii.find("•") != std::string::npos);
    CHECK(ascii.find("∘") != std::string::npos);
    CHECK(ascii.rfind("domestic p=4", 0) == 0);

    // Empty windows emit an empty graph body.
    CHECK(emit(build_domestic(4, 2, 2), "dot") == "digraph quiver {\n  rankdir=LR;\n}\n");

    CHECK_THROWS_AS(emit(q, "svg"), UsageError);
}
