#include "wpl/homspaces.hpp"

#include <numeric>
#include <sstream>

namespace wpl::homspaces {

using lgroup::add;
using lgroup::bar_class;
using lgroup::delta;
using lgroup::neg;
using lgroup::omega;
using lgroup::smul;
using lgroup::sub;
using lgroup::WeightTriple;
using lgroup::weights;
using lgroup::xi;

namespace {

void require_233p(const WeightTriple& w, const char* op) {
    if (w.p1 != 2 || w.p2 != 3)
        throw UsageError(std::string(op) + " requires the weight triple (2,3,p)");
}

}  // namespace

std::vector<Monomial> monomials(const LElt& x) {
    require_233p(x.w(), "monomials");
    const int p = x.w().p3;
    std::vector<Monomial> out;
    for (int a = 0; a <= 1; ++a) {
        LElt r = a ? sub(x, xi(x.w(), 1)) : x;
        if (r.n1() != 0 || r.m() < 0) continue;
        // b = n2 + 3s, c = n3 + p*t over all splittings s + t = m.
        for (std::int64_t s = r.m(); s >= 0; --s) {
            std::int64_t t = r.m() - s;
            out.push_back(Monomial{a, r.n2() + 3 * s, r.n3() + p * t});
        }
    }
    return out;
}

std::int64_t dim_S(const LElt& x) { return static_cast<std::int64_t>(monomials(x).size()); }

std::int64_t hom_dim(const LElt& x, const LElt& y) { return dim_S(sub(y, x)); }

std::int64_t ext1_dim(const LElt& x, const LElt& y) {
    return dim_S(sub(add(x, omega(x.w())), y));
}

std::int64_t euler_form(const LElt& x, const LElt& y) { return hom_dim(x, y) - ext1_dim(x, y); }

Report fading_generation_check(int p, int window) {
    if (window < 1) throw UsageError("window must be >= 1");
    Report rep;
    const WeightTriple w = weights(p);
    const std::int64_t cap = static_cast<std::int64_t>(window) * std::lcm<std::int64_t>(6, p);
    std::int64_t upper_checked = 0, lower_checked = 0;
    std::vector<std::string> upper_bad, lower_bad;
    for (std::int64_t n1 = 0; n1 < 2; ++n1)
        for (std::int64_t n2 = 0; n2 < 3; ++n2)
            for (std::int64_t n3 = 0; n3 < p; ++n3)
                for (std::int64_t m = 0; m <= window; ++m) {
                    LElt y = lgroup::normalize(w, n1, n2, n3, m);
                    if (!bar_class(y).persistent() && delta(y) <= cap) {
                        // Maps from the upper bar land in S_y.
                        ++upper_checked;
                        for (const Monomial& mo : monomials(y))
                            if (mo.a < 1 && mo.b < 2)
                                upper_bad.push_back("y = " + y.str() + " monomial b=" +
                                                    std::to_string(mo.b) + " c=" +
                                                    std::to_string(mo.c));
                        // Maps from the lower bar land in S_{y-x2}.
                        ++lower_checked;
                        for (const Monomial& mo : monomials(sub(y, xi(w, 2))))
                            if (mo.a < 1 && mo.b < 1)
                                lower_bad.push_back("y = " + y.str() + " monomial b=" +
                                                    std::to_string(mo.b) + " c=" +
                                                    std::to_string(mo.c));
                    }
                }
    std::string udetail = "checked " + std::to_string(upper_checked) + " fading degrees";
    for (const std::string& s : upper_bad) udetail += "; violation " + s;
    rep.add("every monomial mapping the upper bar into a fading degree has a >= 1 or b >= 2",
            upper_bad.empty(), udetail);
    std::string ldetail = "checked " + std::to_string(lower_checked) + " fading degrees";
    for (const std::string& s : lower_bad) ldetail += "; violation " + s;
    rep.add("every monomial mapping the lower bar into a fading degree has a >= 1 or b >= 1",
            lower_bad.empty(), ldetail);
    return rep;
}

namespace {

const char* class_name(int n1, int n2) {
    static const char* names[2][3] = {{"0", "x2", "2x2"}, {"x1", "x1+x2", "x1+2x2"}};
    return names[n1][n2];
}

Table1Cell cell_of(const LElt& x) {
    lgroup::BarClass bc = bar_class(x);
    const int n1 = static_cast<int>(x.n1());
    const int n2 = static_cast<int>(x.n2());
    return Table1Cell{n1, n2, bc.persistent(), class_name(n1, n2)};
}

}  // namespace

std::vector<std::array<Table1Cell, 4>> table1(int p) {
    const WeightTriple w = weights(p);
    const LElt om = omega(w);
    std::vector<std::array<Table1Cell, 4>> rows;
    for (int k = 0; k < 6; ++k) {
        const LElt base = smul(k, om);
        rows.push_back({cell_of(add(base, om)), cell_of(sub(base, xi(w, 1))),
                        cell_of(sub(base, xi(w, 2))), cell_of(sub(base, xi(w, 3)))});
    }
    return rows;
}

std::string table1_text(int p) {
    const std::vector<std::array<Table1Cell, 4>> rows = table1(p);
    const char* headers[4] = {"k*w+w", "k*w-x1", "k*w-x2", "k*w-x3"};
    std::vector<std::vector<std::string>> cells;
    for (const auto& row : rows) {
        std::vector<std::string> line;
        for (const Table1Cell& c : row)
            line.push_back(c.boxed ? "[" + c.name + "]" : c.name);
        cells.push_back(std::move(line));
    }
    std::size_t width[4];
    for (int j = 0; j < 4; ++j) {
        width[j] = std::string(headers[j]).size();
        for (const auto& line : cells) width[j] = std::max(width[j], line[static_cast<std::size_t>(j)].size());
    }
    std::ostringstream os;
    os << "row";
    for (int j = 0; j < 4; ++j) {
        os << "  " << headers[j] << std::string(width[j] - std::string(headers[j]).size(), ' ');
    }
    os << "\n";
    for (std::size_t i = 0; i < cells.size(); ++i) {
        os << i << "*w";
        for (int j = 0; j < 4; ++j) {
            const std::string& s = cells[i][static_cast<std::size_t>(j)];
            os << "  " << s << std::string(width[j] - s.size(), ' ');
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace wpl::homspaces
