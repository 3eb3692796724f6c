#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "wpl/homspaces.hpp"
#include "wpl/ladder.hpp"
#include "wpl/linalg.hpp"

namespace {

std::string g_cli;
int g_run = 0;

struct RunResult {
    int code = -1;
    std::string out;
};

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    f << text;
}

RunResult run(const std::string& args) {
    std::string path = "cli_out_" + std::to_string(++g_run) + ".txt";
    std::string cmd = "\"" + g_cli + "\" " + args + " > " + path + " 2>&1";
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = read_file(path);
    std::remove(path.c_str());
    return r;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

// The smallest band representation x*A(0) inside A(0) at p = 2.
wpl::ladder::LadderRep band_fixture() {
    wpl::ladder::LadderRep x;
    x.amb = wpl::ladder::free_module(2, 0);
    x.sub = wpl::ladder::cyclic_module(2, 1, 1);
    x.iota[1] = wpl::RatMat::Identity(1, 1);
    return x;
}

}  // namespace

TEST_CASE("check command: verdicts, selection and exit codes") {
    RunResult full = run("check --p 2..6");
    CHECK(full.code == 0);
    CHECK(contains(full.out, "ALL CHECKS PASSED"));
    CHECK_FALSE(contains(full.out, "[FAIL]"));

    RunResult fcy = run("check --only fcy --p 8");
    CHECK(fcy.code == 0);
    CHECK(contains(fcy.out, "n = 24, m = 26"));
    CHECK(contains(fcy.out, "[PASS]"));

    // The p = 4 Coxeter-number table discrepancy is informational.
    RunResult cox4 = run("check --only coxeter-number --p 4");
    CHECK(cox4.code == 0);
    CHECK(contains(cox4.out, "[INFO]"));
    CHECK(contains(cox4.out, "computed order 12"));
    CHECK_FALSE(contains(cox4.out, "[FAIL]"));

    CHECK(run("check bogus-name").code == 2);

    // Out-of-range weights skip every check without failing.
    RunResult skipped = run("check --p 99");
    CHECK(skipped.code == 0);
    CHECK(contains(skipped.out, "skipped"));

    RunResult list = run("check --list");
    CHECK(list.code == 0);
    CHECK(contains(list.out, "lgroup-identities"));
    CHECK(contains(list.out, "rect-tilting"));
}

TEST_CASE("deterministic table output") {
    RunResult a = run("table ade --p 2..9");
    RunResult b = run("table ade --p 2..9");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    // Flagged cells where the computed value disagrees with the stored table.
    CHECK(contains(a.out, "12*"));
    CHECK(contains(a.out, "-1/24*"));
    CHECK(contains(a.out, "26/24"));
    CHECK(contains(a.out, "tubular"));

    RunResult tsv = run("table ade --p 2..9 --format tsv");
    CHECK(tsv.code == 0);
    CHECK(tsv.out.rfind("p\tcy\tchi\th\ttype\trepr\n", 0) == 0);

    // The rendered summand table equals the library rendering exactly.
    RunResult t1 = run("table persistent-summands --p 7");
    CHECK(t1.code == 0);
    CHECK(t1.out == wpl::homspaces::table1_text(7));

    RunResult fd = run("table fd --p 4");
    CHECK(fd.code == 0);
    CHECK(contains(fd.out, "line_bundles=6 persistent=2 auslander=6"));
    CHECK(contains(fd.out, "persistent: 0,0,0,0;0,1,3,-1"));

    CHECK(run("table nope").code == 2);
}

TEST_CASE("lgroup, k0 and cox commands") {
    RunResult lg = run("lgroup --p 6 --pattern 0,1,0,0");
    CHECK(lg.code == 0);
    CHECK(contains(lg.out, "torsion Z/6"));
    CHECK(contains(lg.out, "|L/Zomega| = infinite"));
    CHECK(contains(lg.out, "|L/Zx3| = 6"));
    CHECK(contains(lg.out, "class lower"));

    RunResult lg2 = run("lgroup --p 2 --pattern 0,0,0,0");
    CHECK(lg2.code == 0);
    CHECK(contains(lg2.out, "pattern(0,0,0,0) = +-+---"));

    RunResult k0 = run("k0 --p 8");
    CHECK(k0.code == 0);
    CHECK(contains(k0.out, "gram 12x12"));
    CHECK(contains(k0.out, "rank gap = 2"));

    RunResult k0c = run("k0 --p 2 --class 0,1,1,-1");
    CHECK(k0c.code == 0);
    CHECK(contains(k0c.out, "rank 1"));

    RunResult cox = run("cox --p 2..9");
    CHECK(cox.code == 0);
    CHECK(contains(cox.out, "p=2 order=3"));
    CHECK(contains(cox.out, "p=4 order=12"));
    CHECK(contains(cox.out, "p=8 order=24"));
}

TEST_CASE("quiver command renders all three shapes") {
    // Marked domestic window: the ext orbit carries the 6-periodic pattern.
    RunResult dom = run("quiver --p 5 --slices 0..6 --mark --format ascii");
    CHECK(dom.code == 0);
    CHECK(contains(dom.out, "domestic p=5 slices [0,6)"));
    CHECK(contains(dom.out, "• ∘ • ∘ ∘ ∘"));

    // Marked and pruned tube: 2 mouth vertices per period survive.
    RunResult tube = run("quiver --p 6 --slices 0..6 --mark --delete-fading --format ascii");
    CHECK(tube.code == 0);
    CHECK(contains(tube.out, "tube p=6 slices [0,6) period=6"));
    CHECK(contains(tube.out, "row0 r1: • . • . . ."));

    // Wild DOT snapshot is byte-stable and sized by the window.
    RunResult wild = run("quiver --p 7 --slices 0..4 --height 3 --format dot");
    RunResult wild2 = run("quiver --p 7 --slices 0..4 --height 3 --format dot");
    CHECK(wild.code == 0);
    CHECK(wild.out == wild2.out);
    std::size_t nodes = 0;
    for (std::size_t pos = wild.out.find("[label="); pos != std::string::npos;
         pos = wild.out.find("[label=", pos + 1))
        ++nodes;
    CHECK(nodes == 12);

    // Explicit phases are honored.
    RunResult ph = run("quiver --p 5 --slices 0..6 --phases 2 --format ascii");
    CHECK(ph.code == 0);
    CHECK(contains(ph.out, "• ∘ ∘ ∘ • ∘"));

    CHECK(run("quiver --p 4 --format svg").code == 2);
    CHECK(run("quiver --p 6 --slices 0..9").code == 2);
    CHECK(run("quiver --p 1 --slices 0..4").code == 2);
}

TEST_CASE("rep command round trips") {
    write_file("cli_band.json", wpl::ladder::rep_to_json(band_fixture()));

    RunResult val = run("rep validate cli_band.json");
    CHECK(val.code == 0);
    CHECK(contains(val.out, "valid: yes, in nil(p): yes"));

    RunResult dec = run("rep decompose cli_band.json --seed 1");
    CHECK(dec.code == 0);
    CHECK(contains(dec.out, "summands: 1"));
    CHECK(dec.out == run("rep decompose cli_band.json --seed 1").out);

    // A decomposable fixture: P(0) + P(0) + simple(1) on the upper bar.
    using wpl::ladder::Vertex;
    auto big = wpl::ladder::direct_sum(
        wpl::ladder::direct_sum(wpl::ladder::projective(Vertex::Upper, 0, 3),
                                wpl::ladder::projective(Vertex::Upper, 0, 3)),
        wpl::ladder::simple(Vertex::Upper, 1, 3));
    write_file("cli_big.json", wpl::ladder::rep_to_json(big));
    RunResult dec2 = run("rep decompose cli_big.json --seed 1");
    CHECK(dec2.code == 0);
    CHECK(contains(dec2.out, "summands: 2"));
    CHECK(contains(dec2.out, "multiplicity 2"));

    // WPL_SEED overrides the flag but keeps the multiset of summands.
    setenv("WPL_SEED", "7", 1);
    RunResult dec3 = run("rep decompose cli_big.json --seed 1");
    unsetenv("WPL_SEED");
    CHECK(dec3.code == 0);
    CHECK(contains(dec3.out, "summands: 2"));

    // Syzygy output is a valid representation file.
    RunResult syz = run("rep syzygy cli_big.json --out cli_syz.json");
    CHECK(syz.code == 0);
    RunResult sval = run("rep validate cli_syz.json");
    CHECK(sval.code == 0);

    // Cosyzygy JSON printed to stdout parses back to the library value.
    RunResult cos = run("rep cosyzygy cli_band.json");
    CHECK(cos.code == 0);
    auto parsed = wpl::ladder::rep_from_json(cos.out);
    auto expected = wpl::ladder::cosyzygy(band_fixture());
    CHECK(parsed.total_dim() == expected.total_dim());
    CHECK(wpl::ladder::is_isomorphic(parsed, expected));

    // Invalid inputs are usage errors.
    write_file("cli_bad.json", "not json");
    CHECK(run("rep decompose cli_bad.json").code == 2);
    CHECK(run("rep decompose missing_file.json").code == 2);
    CHECK(run("rep frobnicate cli_band.json").code == 2);

    std::remove("cli_band.json");
    std::remove("cli_big.json");
    std::remove("cli_syz.json");
    std::remove("cli_bad.json");
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <path-to-wpl-binary>\n");
        return 1;
    }
    g_cli = argv[1];
    doctest::Context ctx;
    return ctx.run();
}
