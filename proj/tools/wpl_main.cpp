#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "wpl/algebras.hpp"
#include "wpl/arquiver.hpp"
#include "wpl/checks.hpp"
#include "wpl/error.hpp"
#include "wpl/grothendieck.hpp"
#include "wpl/homspaces.hpp"
#include "wpl/ladder.hpp"
#include "wpl/lgroup.hpp"

namespace {

using namespace wpl;

int parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw UsageError("bad " + what + ": " + s);
        return v;
    } catch (const std::logic_error&) {
        throw UsageError("bad " + what + ": " + s);
    }
}

// "4" or "2..6", inclusive on both ends.
std::vector<int> parse_range(const std::string& s) {
    auto pos = s.find("..");
    if (pos == std::string::npos) return {parse_int(s, "weight")};
    int lo = parse_int(s.substr(0, pos), "weight range");
    int hi = parse_int(s.substr(pos + 2), "weight range");
    if (lo > hi) throw UsageError("empty weight range: " + s);
    std::vector<int> out;
    for (int p = lo; p <= hi; ++p) out.push_back(p);
    return out;
}

// "A..B", a half-open slice window.
std::pair<int, int> parse_window(const std::string& s) {
    auto pos = s.find("..");
    if (pos == std::string::npos)
        throw UsageError("slice window must look like A..B: " + s);
    return {parse_int(s.substr(0, pos), "slice"),
            parse_int(s.substr(pos + 2), "slice")};
}

std::vector<int> parse_csv_ints(const std::string& s, const std::string& what) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_int(item, what));
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw UsageError("cannot write file: " + path);
    f << text;
}

std::string bar_name(lgroup::Bar b) {
    if (b == lgroup::Bar::Upper) return "upper";
    if (b == lgroup::Bar::Lower) return "lower";
    return "fading";
}

int cmd_lgroup(int p, const std::vector<std::string>& patterns, std::ostream& os) {
    auto w = lgroup::weights(p);
    auto st = lgroup::structure(w);
    os << "L(2,3," << p << ")\n";
    os << "structure: free rank " << st.free_rank << ", torsion";
    if (st.torsion.empty()) {
        os << " none";
    } else {
        for (auto d : st.torsion) os << " Z/" << d;
    }
    os << "\n";
    auto x1 = lgroup::xi(w, 1);
    auto x2 = lgroup::xi(w, 2);
    auto x3 = lgroup::xi(w, 3);
    auto om = lgroup::omega(w);
    os << "c = " << lgroup::c(w).str() << ", delta(c) = " << lgroup::delta(lgroup::c(w))
       << "\n";
    os << "omega = " << om.str() << ", delta(omega) = " << lgroup::delta(om) << "\n";
    os << "delta(x1) = " << lgroup::delta(x1) << ", delta(x2) = " << lgroup::delta(x2)
       << ", delta(x3) = " << lgroup::delta(x3) << "\n";
    os << "xbar1 = " << lgroup::xbar(w, 1).str() << ", xbar2 = "
       << lgroup::xbar(w, 2).str() << ", xbar3 = " << lgroup::xbar(w, 3).str() << "\n";
    os << "|L/Zx3| = " << lgroup::quotient(x3).size() << "\n";
    std::string omega_classes = "infinite";
    try {
        omega_classes = std::to_string(lgroup::quotient(om).size());
    } catch (const InfiniteQuotient&) {
    }
    os << "|L/Zomega| = " << omega_classes << "\n";
    for (const auto& s : patterns) {
        auto x = lgroup::parse_lelt(w, s);
        os << "pattern(" << x.str() << ") = " << lgroup::tau_pattern(x) << ", class "
           << bar_name(lgroup::bar_class(x).kind) << "\n";
    }
    return 0;
}

int cmd_table(const std::string& name, const std::string& range,
              const std::string& format, std::ostream& os) {
    if (name == "ade") {
        auto ps = parse_range(range.empty() ? "2..9" : range);
        if (format == "tsv") {
            os << "p\tcy\tchi\th\ttype\trepr\n";
            for (const auto& r : algebras::ade_rows(ps.front(), ps.back()))
                os << r.p << "\t" << r.cy << "\t" << r.chi << "\t" << r.h << "\t"
                   << r.type << "\t" << r.repr << "\n";
        } else {
            os << algebras::ade_table(ps.front(), ps.back());
        }
        return 0;
    }
    if (name == "persistent-summands") {
        auto ps = parse_range(range.empty() ? "7" : range);
        bool first = true;
        for (int p : ps) {
            if (!first) os << "\n";
            first = false;
            if (format == "tsv") {
                auto rows = homspaces::table1(p);
                for (std::size_t k = 0; k < rows.size(); ++k) {
                    os << p << "\t" << k;
                    for (const auto& cell : rows[k])
                        os << "\t" << (cell.boxed ? "[" + cell.name + "]" : cell.name);
                    os << "\n";
                }
            } else {
                os << homspaces::table1_text(p);
            }
        }
        return 0;
    }
    if (name == "fd") {
        auto ps = parse_range(range.empty() ? "3..12" : range);
        if (format == "tsv")
            os << "p\tline_bundles\tpersistent\tauslander\tlines\tpersistent_lines\n";
        for (int p : ps) {
            auto f = arquiver::fd_counts(p);
            auto join = [](const std::vector<std::string>& v) {
                std::string s;
                for (std::size_t i = 0; i < v.size(); ++i)
                    s += (i ? ";" : "") + v[i];
                return s;
            };
            if (format == "tsv") {
                os << p << "\t" << f.line_bundles << "\t" << f.persistent << "\t"
                   << f.auslander << "\t" << join(f.lines) << "\t"
                   << join(f.persistent_lines) << "\n";
            } else {
                os << "p=" << p << " line_bundles=" << f.line_bundles
                   << " persistent=" << f.persistent << " auslander=" << f.auslander
                   << "\n  lines: " << join(f.lines)
                   << "\n  persistent: " << join(f.persistent_lines) << "\n";
            }
        }
        return 0;
    }
    throw UsageError("unknown table: " + name +
                     " (expected ade, persistent-summands or fd)");
}

int cmd_k0(int p, const std::string& cls, std::ostream& os) {
    auto basis = grothendieck::k0_basis(p);
    const IntMat& g = grothendieck::gram(p);
    os << "basis:";
    for (const auto& b : basis) os << " " << b.str();
    os << "\n";
    os << "gram " << g.rows() << "x" << g.cols() << ", det = " << det_bareiss(g)
       << "\n";
    for (int i = 0; i < g.rows(); ++i) {
        for (int j = 0; j < g.cols(); ++j) os << (j ? " " : "") << g(i, j);
        os << "\n";
    }
    os << "rank gap = " << grothendieck::rank_gap(p) << "\n";
    if (!cls.empty()) {
        auto w = lgroup::weights(p);
        auto x = lgroup::parse_lelt(w, cls);
        IntVec v = grothendieck::class_of(x);
        os << "class(" << x.str() << ") =";
        for (int i = 0; i < v.size(); ++i) os << " " << v(i);
        os << ", rank " << grothendieck::rank_of(v) << ", deg "
           << grothendieck::deg_of(p, v) << "\n";
    }
    return 0;
}

int cmd_cox(const std::string& range, std::ostream& os) {
    for (int p : parse_range(range)) {
        auto cox = algebras::coxeter(algebras::cartan_nakayama(2 * (p - 1), 3));
        os << "p=" << p << " order=";
        if (cox.order) {
            os << *cox.order;
        } else {
            os << "none<=" << cox.bound;
        }
        os << " coxpoly " << poly_to_string(cox.coxpoly) << "\n";
    }
    return 0;
}

int cmd_quiver(int p, const std::string& window, int height,
               const std::string& phases_csv, bool mark, bool del,
               const std::string& format, std::ostream& os) {
    auto [a, b] = parse_window(window);
    arquiver::TransQuiver q;
    if (p <= 5) {
        q = arquiver::build_domestic(p, a, b);
    } else if (p == 6) {
        q = arquiver::build_tube(6, a, b, height);
    } else {
        q = arquiver::build_wild_window(p, a, b, height);
    }
    if (mark || del || !phases_csv.empty()) {
        std::vector<int> phases;
        if (!phases_csv.empty()) {
            phases = parse_csv_ints(phases_csv, "phase");
        } else {
            phases =
                arquiver::phase_search(q, arquiver::default_constraints(p)).front();
        }
        q = arquiver::mark_pattern(q, phases);
    }
    if (del) q = arquiver::delete_fading(q);
    os << arquiver::emit(q, format);
    return 0;
}

std::string dims_of(const ladder::GradedModule& m) {
    std::ostringstream os;
    bool first = true;
    for (int d = m.min_degree(); d <= m.max_degree(); ++d) {
        if (m.dim(d) == 0) continue;
        if (!first) os << " ";
        first = false;
        os << d << ":" << m.dim(d);
    }
    return os.str();
}

int cmd_rep(const std::string& mode, const std::string& file, int seed,
            const std::string& out, std::ostream& os) {
    if (const char* env = std::getenv("WPL_SEED")) seed = parse_int(env, "WPL_SEED");
    ladder::LadderRep x = ladder::rep_from_json(read_file(file));
    if (mode == "validate") {
        Report rep = ladder::validate(x);
        for (const auto& line : rep.lines) {
            os << (line.ok ? "[PASS] " : "[FAIL] ") << line.claim;
            if (!line.detail.empty()) os << " -- " << line.detail;
            os << "\n";
        }
        bool ok = rep.ok();
        os << "valid: " << (ok ? "yes" : "no");
        if (ok) os << ", in nil(p): " << (ladder::in_nil(x) ? "yes" : "no");
        os << "\n";
        return ok ? 0 : 1;
    }
    if (!ladder::valid(x))
        throw UsageError("representation in " + file + " is not valid");
    if (mode == "decompose") {
        auto parts = ladder::decompose(x, seed);
        os << "summands: " << parts.size() << "\n";
        int i = 0;
        for (const auto& [rep, mult] : parts) {
            os << ++i << ". multiplicity " << mult << ", sub[" << dims_of(rep.sub)
               << "], amb[" << dims_of(rep.amb) << "], total " << rep.total_dim()
               << "\n";
        }
        return 0;
    }
    if (mode == "syzygy" || mode == "cosyzygy") {
        ladder::LadderRep y =
            mode == "syzygy" ? ladder::syzygy(x) : ladder::cosyzygy(x);
        std::string json = ladder::rep_to_json(y) + "\n";
        if (out.empty()) {
            os << json;
        } else {
            write_file(out, json);
        }
        return 0;
    }
    throw UsageError("unknown rep mode: " + mode +
                     " (expected validate, decompose, syzygy or cosyzygy)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"toolkit for graded invariant subspaces of nilpotent operators "
                 "and the associated weighted projective line data"};
    app.require_subcommand(1);

    int lg_p = 6;
    std::vector<std::string> lg_patterns;
    auto* sub_lgroup = app.add_subcommand("lgroup", "weight lattice structure and patterns");
    sub_lgroup->add_option("--p", lg_p, "weight p of the triple (2,3,p)")->required();
    sub_lgroup->add_option("--pattern", lg_patterns,
                           "element n1,n2,n3,m whose tau-pattern to print");

    std::string tb_name;
    std::string tb_range;
    std::string tb_format = "text";
    auto* sub_table = app.add_subcommand("table", "render a computed table");
    sub_table->add_option("name", tb_name, "ade | persistent-summands | fd")->required();
    sub_table->add_option("--p", tb_range, "weight or range, e.g. 7 or 2..9");
    sub_table->add_option("--format", tb_format, "text | tsv")
        ->check(CLI::IsMember({"text", "tsv"}));

    int k0_p = 6;
    std::string k0_class;
    auto* sub_k0 = app.add_subcommand("k0", "Grothendieck group data");
    sub_k0->add_option("--p", k0_p, "weight p")->required();
    sub_k0->add_option("--class", k0_class, "element n1,n2,n3,m to expand over the basis");

    std::string cox_range;
    auto* sub_cox = app.add_subcommand("cox", "Coxeter polynomial and matrix order");
    sub_cox->add_option("--p", cox_range, "weight or range")->required();

    int qv_p = 4;
    std::string qv_window = "0..6";
    int qv_height = 3;
    std::string qv_phases;
    bool qv_mark = false;
    bool qv_delete = false;
    std::string qv_format = "ascii";
    auto* sub_quiver = app.add_subcommand("quiver", "translation-quiver windows");
    sub_quiver->add_option("--p", qv_p, "weight p")->required();
    sub_quiver->add_option("--slices", qv_window, "half-open window A..B");
    sub_quiver->add_option("--height", qv_height, "rows for tube/wild windows");
    sub_quiver->add_option("--phases", qv_phases, "comma-separated phases per line orbit");
    sub_quiver->add_flag("--mark", qv_mark, "mark line orbits (default phases if none given)");
    sub_quiver->add_flag("--delete-fading", qv_delete, "remove fading vertices after marking");
    sub_quiver->add_option("--format", qv_format, "dot | ascii")
        ->check(CLI::IsMember({"dot", "ascii"}));

    std::string rep_mode;
    std::string rep_file;
    int rep_seed = 1;
    std::string rep_out;
    auto* sub_rep = app.add_subcommand("rep", "representation file operations");
    sub_rep->add_option("mode", rep_mode, "validate | decompose | syzygy | cosyzygy")
        ->required();
    sub_rep->add_option("file", rep_file, "JSON representation file")->required();
    sub_rep->add_option("--seed", rep_seed, "decomposition seed (WPL_SEED overrides)");
    sub_rep->add_option("--out", rep_out, "write the resulting JSON here instead of stdout");

    std::vector<std::string> ck_names;
    std::string ck_only;
    std::string ck_range;
    bool ck_list = false;
    auto* sub_check = app.add_subcommand("check", "run the named claim checks");
    sub_check->add_option("names", ck_names, "check names, or 'all'");
    sub_check->add_option("--only", ck_only, "comma-separated check names");
    sub_check->add_option("--p", ck_range, "weight or range to restrict to");
    sub_check->add_flag("--list", ck_list, "print the claim registry and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(sub_lgroup))
            return cmd_lgroup(lg_p, lg_patterns, std::cout);
        if (app.got_subcommand(sub_table))
            return cmd_table(tb_name, tb_range, tb_format, std::cout);
        if (app.got_subcommand(sub_k0)) return cmd_k0(k0_p, k0_class, std::cout);
        if (app.got_subcommand(sub_cox)) return cmd_cox(cox_range, std::cout);
        if (app.got_subcommand(sub_quiver))
            return cmd_quiver(qv_p, qv_window, qv_height, qv_phases, qv_mark,
                              qv_delete, qv_format, std::cout);
        if (app.got_subcommand(sub_rep))
            return cmd_rep(rep_mode, rep_file, rep_seed, rep_out, std::cout);
        if (app.got_subcommand(sub_check)) {
            if (ck_list) {
                std::cout << checks::registry_table();
                return 0;
            }
            std::vector<std::string> names;
            for (const auto& n : ck_names)
                if (n != "all") names.push_back(n);
            if (!ck_only.empty()) {
                std::stringstream ss(ck_only);
                std::string item;
                while (std::getline(ss, item, ',')) names.push_back(item);
            }
            std::vector<int> ps;
            if (!ck_range.empty()) ps = parse_range(ck_range);
            return checks::run_checks(names, ps, std::cout);
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const FieldNotSupported& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
