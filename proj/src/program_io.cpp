#include "covernum/program_io.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace covernum {

namespace {

// strip comment and surrounding whitespace; empty result means "skip"
std::string clean(const std::string& raw) {
    std::string s = raw.substr(0, raw.find('#'));
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string t;
    while (ss >> t) out.push_back(t);
    return out;
}

int64_t to_count(const std::string& s, const std::string& what) {
    try {
        size_t pos = 0;
        int64_t v = std::stoll(s, &pos);
        if (pos != s.size() || v < 0) throw std::invalid_argument(s);
        return v;
    } catch (...) {
        throw std::runtime_error("program file: bad " + what + " '" + s + "'");
    }
}

void check_label(const std::string& l, const std::string& what) {
    if (l.empty() || l.find_first_of(" \t#") != std::string::npos)
        throw std::runtime_error("program file: unusable " + what + " label '" + l + "'");
}

}  // namespace

CoveringProgram read_program(std::istream& in) {
    CoveringProgram p;
    bool have_header = false;
    int64_t want_rows = 0, want_cols = 0;
    std::map<std::string, int32_t> col_id, row_id;
    std::string raw;
    while (std::getline(in, raw)) {
        std::string line = clean(raw);
        if (line.empty()) continue;
        auto tk = tokens(line);
        if (tk[0] == "program") {
            if (tk.size() != 2) throw std::runtime_error("program file: bad program line");
            p.name = tk[1];
            continue;
        }
        if (tk[0] == "rows") {
            if (have_header || tk.size() != 4 || tk[2] != "cols")
                throw std::runtime_error("program file: bad header line '" + line + "'");
            want_rows = to_count(tk[1], "row count");
            want_cols = to_count(tk[3], "column count");
            have_header = true;
            continue;
        }
        if (!have_header)
            throw std::runtime_error("program file: 'rows <m> cols <n>' header must come first");
        if (tk[0] == "col") {
            if (tk.size() != 4 || tk[2] != "ub")
                throw std::runtime_error("program file: bad col line '" + line + "'");
            check_label(tk[1], "column");
            if (!col_id.emplace(tk[1], (int32_t)p.cols.size()).second)
                throw std::runtime_error("program file: duplicate column '" + tk[1] + "'");
            p.cols.push_back({tk[1], to_count(tk[3], "upper bound")});
        } else if (tk[0] == "row") {
            if (tk.size() != 4 || tk[2] != "demand")
                throw std::runtime_error("program file: bad row line '" + line + "'");
            check_label(tk[1], "row");
            if (!row_id.emplace(tk[1], (int32_t)p.rows.size()).second)
                throw std::runtime_error("program file: duplicate row '" + tk[1] + "'");
            p.rows.push_back({tk[1], to_count(tk[3], "demand"), {}});
        } else if (tk[0] == "entry") {
            if (tk.size() != 4) throw std::runtime_error("program file: bad entry line '" + line + "'");
            auto ri = row_id.find(tk[1]);
            auto ci = col_id.find(tk[2]);
            if (ri == row_id.end()) throw std::runtime_error("program file: entry for unknown row '" + tk[1] + "'");
            if (ci == col_id.end()) throw std::runtime_error("program file: entry for unknown column '" + tk[2] + "'");
            int64_t c = to_count(tk[3], "coefficient");
            if (c == 0) throw std::runtime_error("program file: zero coefficient for " + tk[1] + "/" + tk[2]);
            p.rows[ri->second].terms.push_back({ci->second, c});
        } else {
            throw std::runtime_error("program file: unrecognized line '" + line + "'");
        }
    }
    if (!have_header) throw std::runtime_error("program file: missing header");
    if ((int64_t)p.cols.size() != want_cols || (int64_t)p.rows.size() != want_rows)
        throw std::runtime_error("program file: header promises " + std::to_string(want_rows) +
                                 "x" + std::to_string(want_cols) + ", found " +
                                 std::to_string(p.rows.size()) + "x" + std::to_string(p.cols.size()));
    p.validate();
    return p;
}

CoveringProgram load_program_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open program file " + path);
    auto p = read_program(in);
    if (p.name.empty()) {
        size_t slash = path.find_last_of('/');
        std::string base = (slash == std::string::npos) ? path : path.substr(slash + 1);
        size_t dot = base.find_last_of('.');
        p.name = (dot == std::string::npos) ? base : base.substr(0, dot);
    }
    return p;
}

void write_program(std::ostream& out, const CoveringProgram& p) {
    p.validate();
    if (!p.name.empty()) {
        check_label(p.name, "program");
        out << "program " << p.name << "\n";
    }
    out << "rows " << p.rows.size() << " cols " << p.cols.size() << "\n";
    for (const auto& c : p.cols) {
        check_label(c.label, "column");
        out << "col " << c.label << " ub " << c.ub << "\n";
    }
    for (const auto& r : p.rows) {
        check_label(r.label, "row");
        out << "row " << r.label << " demand " << r.demand << "\n";
    }
    for (const auto& r : p.rows)
        for (const auto& t : r.terms)
            out << "entry " << r.label << " " << p.cols[t.col].label << " " << t.coeff << "\n";
}

void save_program_file(const std::string& path, const CoveringProgram& p) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write program file " + path);
    write_program(out, p);
}

void write_solve_result(std::ostream& out, const CoveringProgram& p, const SolveResult& r) {
    switch (r.status) {
        case SolveResult::Status::optimal:
            out << "status optimal\n"
                << "optimum " << r.upper << "\n";
            break;
        case SolveResult::Status::bounds:
            out << "status bounds\n"
                << "lower " << r.lower << "\n";
            if (r.upper >= 0) out << "upper " << r.upper << "\n";  // -1: no incumbent
            break;
        case SolveResult::Status::infeasible:
            out << "status infeasible\n";
            break;
    }
    if (!r.solution.empty()) {
        if (r.solution.size() != p.cols.size())
            throw std::runtime_error("solve result: solution size does not match program");
        for (size_t j = 0; j < r.solution.size(); ++j)
            if (r.solution[j] != 0) out << "set " << p.cols[j].label << " " << r.solution[j] << "\n";
    }
    if (!r.root_dual.empty()) {
        if (r.root_dual.size() != p.rows.size())
            throw std::runtime_error("solve result: dual size does not match program");
        for (size_t i = 0; i < r.root_dual.size(); ++i)
            if (r.root_dual[i] != 0) out << "dual " << p.rows[i].label << " " << r.root_dual[i].str() << "\n";
    }
    for (const auto& e : r.log)
        out << "log " << e.node << " " << e.event << " " << e.value << "\n";
}

SolveResult read_solve_result(std::istream& in, const CoveringProgram& p) {
    SolveResult r;
    bool have_status = false, have_optimum = false, have_lower = false, have_upper = false;
    bool any_set = false, any_dual = false;
    std::string raw;
    while (std::getline(in, raw)) {
        std::string line = clean(raw);
        if (line.empty()) continue;
        auto tk = tokens(line);
        if (tk[0] == "status") {
            if (have_status || tk.size() != 2) throw std::runtime_error("solve result: bad status line");
            if (tk[1] == "optimal")
                r.status = SolveResult::Status::optimal;
            else if (tk[1] == "bounds")
                r.status = SolveResult::Status::bounds;
            else if (tk[1] == "infeasible")
                r.status = SolveResult::Status::infeasible;
            else
                throw std::runtime_error("solve result: unknown status '" + tk[1] + "'");
            have_status = true;
        } else if (tk[0] == "optimum") {
            if (tk.size() != 2) throw std::runtime_error("solve result: bad optimum line");
            r.lower = r.upper = to_count(tk[1], "optimum");
            have_optimum = true;
        } else if (tk[0] == "lower") {
            if (tk.size() != 2) throw std::runtime_error("solve result: bad lower line");
            r.lower = to_count(tk[1], "lower bound");
            have_lower = true;
        } else if (tk[0] == "upper") {
            if (tk.size() != 2) throw std::runtime_error("solve result: bad upper line");
            r.upper = to_count(tk[1], "upper bound");
            have_upper = true;
        } else if (tk[0] == "set") {
            if (tk.size() != 3) throw std::runtime_error("solve result: bad set line");
            int j = p.col_index(tk[1]);
            if (j < 0) throw std::runtime_error("solve result: set for unknown column '" + tk[1] + "'");
            if (!any_set) {
                r.solution.assign(p.cols.size(), 0);
                any_set = true;
            }
            r.solution[j] = to_count(tk[2], "solution value");
        } else if (tk[0] == "dual") {
            if (tk.size() != 3) throw std::runtime_error("solve result: bad dual line");
            int i = -1;
            for (size_t k = 0; k < p.rows.size(); ++k)
                if (p.rows[k].label == tk[1]) i = (int)k;
            if (i < 0) throw std::runtime_error("solve result: dual for unknown row '" + tk[1] + "'");
            if (!any_dual) {
                r.root_dual.assign(p.rows.size(), Rat(0));
                any_dual = true;
            }
            try {
                r.root_dual[i] = Rat(tk[2]);
            } catch (...) {
                throw std::runtime_error("solve result: bad rational '" + tk[2] + "'");
            }
            if (r.root_dual[i] < 0) throw std::runtime_error("solve result: negative dual multiplier");
        } else if (tk[0] == "log") {
            if (tk.size() != 4) throw std::runtime_error("solve result: bad log line");
            r.log.push_back({to_count(tk[1], "log node"), tk[2], tk[3]});
        } else {
            throw std::runtime_error("solve result: unrecognized line '" + line + "'");
        }
    }
    if (!have_status) throw std::runtime_error("solve result: missing status");
    switch (r.status) {
        case SolveResult::Status::optimal: {
            if (!have_optimum) throw std::runtime_error("solve result: optimal without optimum");
            if (r.solution.empty() && r.upper != 0)
                throw std::runtime_error("solve result: optimal without solution");
            if (r.solution.empty()) r.solution.assign(p.cols.size(), 0);
            Int total = 0;
            for (auto v : r.solution) total += v;
            if (total != r.upper)
                throw std::runtime_error("solve result: solution total differs from optimum");
            break;
        }
        case SolveResult::Status::bounds:
            if (!have_lower) throw std::runtime_error("solve result: bounds without lower");
            if (!have_upper) r.upper = -1;  // no incumbent recorded
            if (r.upper >= 0 && r.lower > r.upper)
                throw std::runtime_error("solve result: lower exceeds upper");
            break;
        case SolveResult::Status::infeasible:
            break;
    }
    return r;
}

}  // namespace covernum
