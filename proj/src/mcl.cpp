#include "covernum/mcl.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace covernum {
namespace {

std::string clean_line(const std::string& line) {
    std::string s = line;
    size_t hash = s.find('#');
    if (hash != std::string::npos) s.resize(hash);
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

}  // namespace

int TabulatedGroup::class_index(const std::string& label) const {
    for (size_t i = 0; i < classes.size(); ++i)
        if (classes[i].label == label) return (int)i;
    return -1;
}

int TabulatedGroup::maximal_index(const std::string& label) const {
    for (size_t i = 0; i < maximals.size(); ++i)
        if (maximals[i].label == label) return (int)i;
    return -1;
}

int TabulatedGroup::row_index(const std::string& label) const {
    for (size_t i = 0; i < rows.size(); ++i)
        if (rows[i].label == label) return (int)i;
    return -1;
}

const std::string& TabulatedGroup::fact(const std::string& name) const {
    auto it = facts.find(name);
    if (it == facts.end())
        throw std::runtime_error(this->name +
                                 ": refusing to proceed: the tabulated data is missing the "
                                 "ingested fact '" +
                                 name + "', which this argument assumes");
    return it->second;
}

int64_t TabulatedGroup::fact_int(const std::string& name) const {
    const std::string& v = fact(name);
    try {
        size_t pos = 0;
        int64_t out = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw std::runtime_error(name + ": fact is not an integer: " + v);
    }
}

TabulatedGroup load_mcl_tables(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open tabulated data file: " + path);

    TabulatedGroup t;
    bool header = false;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = clean_line(line);
        if (s.empty()) continue;
        std::istringstream ls(s);
        std::string tok;
        ls >> tok;
        if (tok == "tabulated") {
            std::string kw;
            std::string order_str;
            ls >> t.name >> kw >> order_str;
            if (!ls || kw != "order") fail("bad header: " + s);
            t.order = Int(order_str);
            header = true;
        } else if (tok == "class") {
            if (!header) fail("class before header");
            TabClass c;
            std::string kw1, kw2, kw3, flag, cent, size;
            ls >> c.label >> kw1 >> cent >> kw2 >> size >> kw3 >> flag;
            if (!ls || kw1 != "centralizer" || kw2 != "size" || kw3 != "principal" ||
                (flag != "yes" && flag != "no"))
                fail("bad class record: " + s);
            c.centralizer = Int(cent);
            c.size = Int(size);
            c.principal = flag == "yes";
            if (t.class_index(c.label) >= 0) fail("duplicate class " + c.label);
            t.classes.push_back(std::move(c));
        } else if (tok == "maximal") {
            if (!header) fail("maximal before header");
            TabMaximal m;
            std::string kw1, kw2, kw3, ord, idx;
            ls >> m.label >> kw1 >> ord >> kw2 >> idx >> kw3;
            if (!ls || kw1 != "order" || kw2 != "index" || kw3 != "structure")
                fail("bad maximal record: " + s);
            m.order = Int(ord);
            m.index = Int(idx);
            std::string rest;
            std::getline(ls, rest);
            rest = clean_line(rest);
            if (rest.size() < 2 || rest.front() != '"' || rest.back() != '"')
                fail("maximal structure must be quoted: " + s);
            m.structure = rest.substr(1, rest.size() - 2);
            if (t.maximal_index(m.label) >= 0) fail("duplicate maximal " + m.label);
            t.maximals.push_back(std::move(m));
        } else if (tok == "amatrix") {
            if (!header) fail("amatrix before header");
            TabRow r;
            std::string kw1, kw2, members;
            ls >> r.label >> kw1 >> members >> kw2;
            if (!ls || kw1 != "classes" || kw2 != "a") fail("bad amatrix record: " + s);
            r.classes = split_commas(members);
            if (r.classes.empty()) fail("amatrix row with no classes: " + s);
            int64_t v;
            while (ls >> v) {
                if (v < 0) fail("negative a entry: " + s);
                r.a.push_back(v);
            }
            if (t.row_index(r.label) >= 0) fail("duplicate amatrix row " + r.label);
            t.rows.push_back(std::move(r));
        } else if (tok == "fact") {
            if (!header) fail("fact before header");
            std::string name, value, kw, source;
            ls >> name >> value >> kw;
            std::getline(ls, source);
            if (kw != "source" || clean_line(source).empty())
                fail("fact must carry a provenance tag: " + s);
            if (t.facts.count(name)) fail("duplicate fact " + name);
            t.facts[name] = value;
            t.fact_sources[name] = clean_line(source);
        } else {
            fail("unknown directive: " + tok);
        }
    }
    if (!header) throw std::runtime_error(path + ": missing tabulated header");
    if (t.classes.empty() || t.maximals.empty())
        throw std::runtime_error(path + ": no classes or no maximal subgroups");

    // class sizes: the centralizer order is authoritative. The known
    // transcription typo in the 7A size is corrected and logged; any other
    // disagreement is an error in the file.
    for (auto& c : t.classes) {
        if (c.centralizer <= 0 || t.order % c.centralizer != 0)
            throw std::runtime_error(path + ": centralizer of " + c.label +
                                     " does not divide the group order");
        Int derived = t.order / c.centralizer;
        if (c.size != derived) {
            if (c.label != "7A")
                throw std::runtime_error(path + ": class " + c.label + " size " + c.size.str() +
                                         " contradicts centralizer order (expected " +
                                         derived.str() + ")");
            t.corrections.push_back("class 7A size corrected from " + c.size.str() + " to " +
                                    derived.str() + " (centralizer order 14 is authoritative)");
            c.size = derived;
        }
    }
    Int total = 0;
    for (const auto& c : t.classes) total += c.size;
    if (total != t.order)
        throw std::runtime_error(path + ": class equation fails: sizes sum to " + total.str());

    for (const auto& m : t.maximals) {
        if (m.order <= 0 || m.index <= 0 || m.order * m.index != t.order)
            throw std::runtime_error(path + ": maximal " + m.label +
                                     " violates order * index = |G|");
    }

    // principal rows: every principal class in exactly one row, members
    // principal, entries one per maximal class, b = a * |row| / index integral
    std::map<std::string, int> seen;
    for (auto& r : t.rows) {
        if (r.a.size() != t.maximals.size())
            throw std::runtime_error(path + ": amatrix row " + r.label + " has " +
                                     std::to_string(r.a.size()) + " entries, expected " +
                                     std::to_string(t.maximals.size()));
        r.total_size = 0;
        for (const auto& cl : r.classes) {
            int ci = t.class_index(cl);
            if (ci < 0)
                throw std::runtime_error(path + ": amatrix row " + r.label +
                                         " names unknown class " + cl);
            if (!t.classes[ci].principal)
                throw std::runtime_error(path + ": amatrix row " + r.label +
                                         " includes non-principal class " + cl);
            if (seen.count(cl))
                throw std::runtime_error(path + ": class " + cl + " appears in two rows");
            seen[cl] = 1;
            r.total_size += t.classes[ci].size;
        }
        bool any = false;
        r.b.resize(r.a.size());
        for (size_t j = 0; j < r.a.size(); ++j) {
            Int num = Int(r.a[j]) * r.total_size;
            if (num % t.maximals[j].index != 0)
                throw std::runtime_error(path + ": b(" + r.label + ", " + t.maximals[j].label +
                                         ") = " + std::to_string(r.a[j]) + "*" +
                                         r.total_size.str() + "/" + t.maximals[j].index.str() +
                                         " is not an integer");
            r.b[j] = num / t.maximals[j].index;
            any = any || r.a[j] > 0;
        }
        if (!any)
            throw std::runtime_error(path + ": principal row " + r.label +
                                     " has empty support: nothing can cover it");
    }
    for (const auto& c : t.classes)
        if (c.principal && !seen.count(c.label))
            throw std::runtime_error(path + ": principal class " + c.label +
                                     " appears in no amatrix row");
    return t;
}

namespace {

std::vector<int> row_support(const TabRow& r) {
    std::vector<int> s;
    for (size_t j = 0; j < r.a.size(); ++j)
        if (r.a[j] > 0) s.push_back((int)j);
    return s;
}

// Single covering row as an integer program: count the subgroups needed when
// each conjugate of maximal class j holds exactly b_j elements of the row.
CoveringProgram one_row_program(const TabulatedGroup& t, const TabRow& r) {
    CoveringProgram p;
    p.name = t.name + " " + r.label + " row";
    CoveringProgram::Row row;
    row.label = r.label;
    row.demand = (int64_t)r.total_size;
    for (size_t j = 0; j < r.a.size(); ++j) {
        if (r.a[j] == 0) continue;
        row.terms.push_back({(int32_t)p.cols.size(), (int64_t)r.b[j]});
        p.cols.push_back({t.maximals[j].label, (int64_t)t.maximals[j].index});
    }
    p.rows.push_back(std::move(row));
    return p;
}

// Locate the unique row consistent with the recorded fixed-point facts:
// |row| * fixed_adjacent = (#vertices) * b(row, vertex class), the same
// identity for edges, and the nonedge identity (a zero count forces a zero
// entry). For the tabulated data this pins the order-9 row.
int locate_fixed_point_row(const TabulatedGroup& t, int vi, int ei, int ni, int64_t fixed_adj,
                           int64_t fixed_edges, int64_t fixed_nonedges) {
    int found = -1;
    for (size_t i = 0; i < t.rows.size(); ++i) {
        const TabRow& r = t.rows[i];
        if (r.total_size * fixed_adj != t.maximals[vi].index * r.b[vi]) continue;
        if (r.total_size * fixed_edges != t.maximals[ei].index * r.b[ei]) continue;
        if (r.total_size * fixed_nonedges != t.maximals[ni].index * r.b[ni]) continue;
        if (found >= 0)
            throw std::runtime_error(
                "fixed-point facts match two rows (" + t.rows[found].label + ", " + r.label +
                "); cannot identify the graph-argument row unambiguously");
        found = (int)i;
    }
    if (found < 0)
        throw std::runtime_error(
            "no row is consistent with the recorded fixed-point facts; transcription error");
    return found;
}

}  // namespace

MclLowerBound mcl_lower_bound(const TabulatedGroup& t, int64_t alpha, double budget_seconds) {
    MclLowerBound out;
    if (alpha < 0) alpha = t.fact_int("graph_independence_number");

    const int vi = t.maximal_index(t.fact("vertex_stabilizer_class"));
    const int ei = t.maximal_index(t.fact("edge_stabilizer_class"));
    const int ni = t.maximal_index(t.fact("nonedge_stabilizer_class"));
    if (vi < 0 || ei < 0 || ni < 0)
        throw std::runtime_error("stabilizer facts name unknown maximal classes");
    const int64_t fixed_adj = t.fact_int("order9_fixed_adjacent_vertices");
    const int64_t fixed_edges = t.fact_int("order9_fixed_edges");
    const int64_t fixed_nonedges = t.fact_int("order9_fixed_nonedges");

    // candidate parts: every principal row as a one-row integer program...
    std::vector<MclBoundPart> cand;
    SolveOptions sopt;
    sopt.time_budget_seconds = budget_seconds;
    for (const auto& r : t.rows) {
        MclBoundPart part;
        part.label = r.label + " row";
        for (int j : row_support(r)) part.columns.push_back(t.maximals[j].label);
        part.method = "covering row";
        part.program = one_row_program(t, r);
        part.result = solve_integer(part.program, sopt);
        if (part.result.status != SolveResult::Status::optimal)
            throw std::runtime_error("row program for " + r.label + " did not close");
        part.bound = part.result.optimum();
        part.details.push_back("one-row integer program optimum " +
                               std::to_string(part.bound));
        cand.push_back(std::move(part));
    }

    // ... plus the graph argument for the fixed-point row: choosing x_v
    // vertex stabilizers leaves W with |W| = V - x_v uncovered vertices;
    // every element of the row not inside a chosen vertex stabilizer has its
    // fixed edge inside W; the induced subgraph has at least |W| - alpha
    // edges (one vertex per connected component is an independent set); each
    // edge costs one further subgroup because every supporting conjugate
    // holds at most per_edge = b(row, edge class) of the row's elements, and
    // the elements partition by fixed edge into groups of exactly per_edge.
    {
        int ri = locate_fixed_point_row(t, vi, ei, ni, fixed_adj, fixed_edges, fixed_nonedges);
        const TabRow& r = t.rows[ri];
        if (fixed_edges != 1 || fixed_nonedges != 0 || fixed_adj != 2)
            throw std::runtime_error(
                "graph argument needs the fixed-point pattern (2 adjacent vertices, 1 edge, "
                "0 nonedges); the recorded facts differ");
        const Int per_edge = r.b[ei];
        for (int j : row_support(r))
            if (j != vi && r.b[j] > per_edge)
                throw std::runtime_error(
                    "graph argument fails: " + t.maximals[j].label + " holds " + r.b[j].str() +
                    " elements of " + r.label + ", more than one edge's worth");
        const int64_t vertices = (int64_t)t.maximals[vi].index;
        int64_t best = -1, best_xv = 0;
        for (int64_t xv = 0; xv <= vertices; ++xv) {
            int64_t picks = xv + std::max<int64_t>(0, (vertices - xv) - alpha);
            if (best < 0 || picks < best) {
                best = picks;
                best_xv = xv;
            }
        }
        MclBoundPart part;
        part.label = r.label + " graph argument";
        for (int j : row_support(r)) part.columns.push_back(t.maximals[j].label);
        part.method = "graph argument";
        part.bound = best;
        part.details.push_back("each element fixes exactly one edge; " +
                               t.maximals[ei].label + " holds " + per_edge.str() +
                               " of the " + r.total_size.str() + " elements per edge");
        part.details.push_back("picks >= x_v + max(0, (" + std::to_string(vertices) +
                               " - x_v) - " + std::to_string(alpha) +
                               "), minimized at x_v = " + std::to_string(best_xv));
        cand.push_back(std::move(part));
    }

    // choose the best combination of parts with pairwise disjoint column
    // supports; disjointness makes the per-part bounds add up
    const size_t k = cand.size();
    if (k > 20) throw std::runtime_error("unexpectedly many candidate parts");
    std::vector<std::set<std::string>> sup(k);
    for (size_t i = 0; i < k; ++i) sup[i] = {cand[i].columns.begin(), cand[i].columns.end()};
    uint32_t best_mask = 0;
    int64_t best_total = 0;
    for (uint32_t mask = 1; mask < (1u << k); ++mask) {
        int64_t totalv = 0;
        bool ok = true;
        std::set<std::string> used;
        for (size_t i = 0; i < k && ok; ++i) {
            if (!(mask >> i & 1)) continue;
            for (const auto& c : sup[i])
                if (!used.insert(c).second) ok = false;
            totalv += cand[i].bound;
        }
        if (ok && totalv > best_total) {
            best_total = totalv;
            best_mask = mask;
        }
    }
    for (size_t i = 0; i < k; ++i) {
        if (best_mask >> i & 1)
            out.parts.push_back(cand[i]);
        else if (cand[i].method == "covering row")
            out.notes.push_back(cand[i].label + " gives " + std::to_string(cand[i].bound) +
                                ", dominated by the chosen combination");
    }
    out.total = best_total;
    return out;
}

MclUpperBound mcl_upper_bound(const TabulatedGroup& t, const SRGraph& graph,
                              const std::vector<int>& independent_set,
                              const std::vector<std::string>& full_classes) {
    const int vi = t.maximal_index(t.fact("vertex_stabilizer_class"));
    const int ei = t.maximal_index(t.fact("edge_stabilizer_class"));
    const int ni = t.maximal_index(t.fact("nonedge_stabilizer_class"));
    if (vi < 0 || ei < 0 || ni < 0)
        throw std::runtime_error("stabilizer facts name unknown maximal classes");

    if (!graph.verified)
        throw std::runtime_error("upper bound needs the parameter-verified graph");
    Int pairs = Int(graph.n) * (graph.n - 1) / 2;
    if (Int(graph.n) != t.maximals[vi].index || Int(graph.edge_count()) != t.maximals[ei].index ||
        pairs - graph.edge_count() != t.maximals[ni].index)
        throw std::runtime_error(
            "graph vertex/edge/nonedge counts do not match the stabilizer indices");

    // the independent set: distinct in-range vertices, pairwise non-adjacent
    std::vector<int> is = independent_set;
    std::sort(is.begin(), is.end());
    if (std::adjacent_find(is.begin(), is.end()) != is.end())
        throw std::runtime_error("independent set has repeated vertices");
    if (!is.empty() && (is.front() < 0 || is.back() >= graph.n))
        throw std::runtime_error("independent set vertex out of range");
    for (size_t i = 0; i < is.size(); ++i)
        for (size_t j = i + 1; j < is.size(); ++j)
            if (graph.adjacent(is[i], is[j]))
                throw std::runtime_error("claimed independent set contains an edge");

    for (const auto& f : full_classes)
        if (t.maximal_index(f) < 0)
            throw std::runtime_error("upper cover names unknown maximal class " + f);

    const int64_t fixed_adj = t.fact_int("order9_fixed_adjacent_vertices");
    const int64_t fixed_edges = t.fact_int("order9_fixed_edges");
    const int64_t fixed_nonedges = t.fact_int("order9_fixed_nonedges");
    int ri = locate_fixed_point_row(t, vi, ei, ni, fixed_adj, fixed_edges, fixed_nonedges);
    if (fixed_edges != 1 || fixed_adj != 2)
        throw std::runtime_error(
            "stabilizer cover argument needs each element to fix one edge and its two "
            "endpoints; the recorded facts differ");

    MclUpperBound out;
    out.vertex_class = t.maximals[vi].label;
    out.full_classes = full_classes;
    out.independent_set = is;
    out.stabilizers_taken = graph.n - (int64_t)is.size();

    // every principal row except the fixed-point row must meet a full class
    std::vector<std::string> uncovered;
    for (size_t i = 0; i < t.rows.size(); ++i) {
        if ((int)i == ri) continue;
        bool hit = false;
        for (const auto& f : full_classes)
            if (t.rows[i].a[t.maximal_index(f)] > 0) hit = true;
        if (!hit) uncovered.push_back(t.rows[i].label);
    }
    if (!uncovered.empty()) {
        std::string msg = "upper cover misses principal rows:";
        for (const auto& u : uncovered) msg += " " + u;
        throw std::runtime_error(msg);
    }

    // the fixed-point row: each element lies in the stabilizers of the two
    // endpoints of its fixed edge; verify directly that every edge has an
    // endpoint outside the independent set, whose stabilizer is in the cover
    std::vector<char> in_set(graph.n, 0);
    for (int v : is) in_set[v] = 1;
    for (int u = 0; u < graph.n; ++u)
        for (int v = u + 1; v < graph.n; ++v)
            if (graph.adjacent(u, v) && in_set[u] && in_set[v])
                throw std::runtime_error("edge inside the independent set; cover argument fails");
    out.details.push_back(t.rows[ri].label + " covered by the " +
                          std::to_string(out.stabilizers_taken) + " vertex stabilizers outside "
                          "the independent set: every edge keeps an endpoint there");

    Int totalv = out.stabilizers_taken;
    for (const auto& f : full_classes) {
        totalv += t.maximals[t.maximal_index(f)].index;
        out.details.push_back("all " + t.maximals[t.maximal_index(f)].index.str() +
                              " conjugates of " + f + " (" +
                              t.maximals[t.maximal_index(f)].structure + ")");
    }
    out.total = (int64_t)totalv;
    return out;
}

MclCertificate mcl_sigma(const TabulatedGroup& t, const SRGraph& graph,
                         const std::vector<int>& independent_set, double budget_seconds) {
    MclCertificate cert;
    cert.group = t.name;
    cert.order = t.order;
    cert.lower = mcl_lower_bound(t, -1, budget_seconds);
    cert.upper = mcl_upper_bound(t, graph, independent_set);
    for (const auto& [name, value] : t.facts)
        cert.assumptions.push_back(name + " = " + value + " (source: " +
                                   t.fact_sources.at(name) + ")");
    cert.notes = t.corrections;
    for (const auto& n : cert.lower.notes) cert.notes.push_back(n);
    if (cert.lower.total != cert.upper.total)
        throw std::runtime_error("bound mismatch: lower " + std::to_string(cert.lower.total) +
                                 " vs upper " + std::to_string(cert.upper.total) +
                                 " — tabulated data transcription error");
    cert.sigma = cert.lower.total;
    // published bracket for this group's covering number
    if (cert.sigma < 24541 || cert.sigma > 24553)
        throw std::runtime_error("certified value " + std::to_string(cert.sigma) +
                                 " falls outside the published bracket [24541, 24553]");
    return cert;
}

}  // namespace covernum
