#pragma once

#include <string>
#include <vector>

namespace wpl {

// One verified claim: the statement, whether it held, and details on failure
// (or informative extras on success).
struct ReportLine {
    std::string claim;
    bool ok = true;
    std::string detail;
};

struct Report {
    std::vector<ReportLine> lines;

    bool ok() const {
        for (const ReportLine& l : lines)
            if (!l.ok) return false;
        return true;
    }
    void add(std::string claim, bool line_ok, std::string detail = "") {
        lines.push_back({std::move(claim), line_ok, std::move(detail)});
    }
};

}  // namespace wpl
