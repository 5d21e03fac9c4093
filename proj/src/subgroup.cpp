#include "covernum/subgroup.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace covernum {

bool SubgroupClass::rep_contains(int32_t id) const {
    const auto& r = rep();
    return std::binary_search(r.begin(), r.end(), id);
}

namespace {

std::string strip(const std::string& raw) {
    std::string s = raw;
    if (auto pos = s.find('#'); pos != std::string::npos) s.erase(pos);
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

struct SetHash {
    size_t operator()(const std::vector<int32_t>& v) const {
        // FNV-1a over the id bytes; sets are sorted so this is canonical.
        uint64_t h = 1469598103934665603ull;
        for (int32_t x : v) {
            for (int k = 0; k < 4; ++k) {
                h ^= (uint64_t)((x >> (8 * k)) & 0xff);
                h *= 1099511628211ull;
            }
        }
        return (size_t)h;
    }
};

}  // namespace

SubgroupClass close_subgroup(const GroupTable& g, const std::string& id,
                             const std::string& structure, const std::vector<Perm>& gens,
                             int64_t declared_order) {
    SubgroupClass s;
    s.id = id;
    s.structure = structure;
    s.group_name = g.name;
    s.rep_generators = gens;

    std::vector<int32_t> gen_ids;
    for (const Perm& p : gens) {
        int32_t e = g.id_of(p);
        if (e < 0)
            throw std::runtime_error("subgroup " + id + ": generator " + format_perm(p) +
                                     " is not an element of " + g.name);
        gen_ids.push_back(e);
    }

    std::unordered_set<int32_t> seen{0};
    std::vector<int32_t> frontier{0}, members{0};
    while (!frontier.empty()) {
        std::vector<int32_t> next;
        for (int32_t x : frontier)
            for (int32_t e : gen_ids) {
                int32_t y = g.mul(x, e);
                if (seen.insert(y).second) {
                    members.push_back(y);
                    next.push_back(y);
                }
            }
        frontier = std::move(next);
    }
    std::sort(members.begin(), members.end());
    s.order = (int64_t)members.size();
    if (declared_order >= 0 && s.order != declared_order)
        throw std::runtime_error("subgroup " + id + ": order " + std::to_string(s.order) +
                                 " != declared " + std::to_string(declared_order));
    if (s.order >= g.order())
        throw std::runtime_error("subgroup " + id + ": not a proper subgroup");
    if (g.order() % s.order != 0)
        throw std::runtime_error("subgroup " + id + ": order does not divide group order");
    s.index = g.order() / s.order;

    // Conjugation orbit, BFS by the parent generators in order.
    size_t ngens = g.generator_ids().size();
    std::unordered_set<std::vector<int32_t>, SetHash> known;
    known.insert(members);
    s.conjugates.push_back(std::move(members));
    std::vector<int32_t> image;
    for (size_t head = 0; head < s.conjugates.size(); ++head)
        for (size_t gi = 0; gi < ngens; ++gi) {
            const auto& cmap = g.conj_map(gi);
            const auto& cur = s.conjugates[head];
            image.resize(cur.size());
            for (size_t k = 0; k < cur.size(); ++k) image[k] = cmap[cur[k]];
            std::sort(image.begin(), image.end());
            if (known.insert(image).second) s.conjugates.push_back(image);
        }

    int64_t l = s.class_size();
    if (s.index % l != 0)
        throw std::runtime_error("subgroup " + id + ": orbit length " + std::to_string(l) +
                                 " does not divide index " + std::to_string(s.index));
    s.self_normalizing = (l == s.index);
    return s;
}

SubgroupClass read_subgroup(std::istream& in, const GroupTable& g, const std::string& what) {
    std::string line, id, structure, group_name;
    int64_t declared = -1;
    std::vector<Perm> gens;
    bool header = false;
    while (std::getline(in, line)) {
        std::string s = strip(line);
        if (s.empty()) continue;
        std::istringstream ls(s);
        std::string tok;
        ls >> tok;
        if (tok == "subgroup") {
            std::string kw_of, kw_order, kw_struct;
            ls >> id >> kw_of >> group_name >> kw_order >> declared >> kw_struct;
            if (!ls || kw_of != "of" || kw_order != "order" || kw_struct != "structure")
                throw std::runtime_error(what + ": bad subgroup header: " + s);
            std::string rest;
            std::getline(ls, rest);
            size_t q1 = rest.find('"'), q2 = rest.rfind('"');
            if (q1 == std::string::npos || q2 <= q1)
                throw std::runtime_error(what + ": structure must be quoted: " + s);
            structure = rest.substr(q1 + 1, q2 - q1 - 1);
            header = true;
        } else if (tok == "gen") {
            if (!header) throw std::runtime_error(what + ": gen before subgroup header");
            std::string rest;
            std::getline(ls, rest);
            gens.push_back(parse_perm(strip(rest), g.degree));
        } else {
            throw std::runtime_error(what + ": unknown directive: " + tok);
        }
    }
    if (!header) throw std::runtime_error(what + ": missing subgroup header");
    if (group_name != g.name)
        throw std::runtime_error(what + ": subgroup of " + group_name + ", expected " + g.name);
    if (gens.empty()) throw std::runtime_error(what + ": no generators");
    return close_subgroup(g, id, structure, gens, declared);
}

SubgroupClass load_subgroup_file(const std::string& path, const GroupTable& g) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open subgroup file: " + path);
    return read_subgroup(in, g, path);
}

void write_subgroup_file(const SubgroupClass& s, const std::string& path,
                         const std::vector<std::string>& comments) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write subgroup file: " + path);
    for (auto& c : comments) out << "# " << c << "\n";
    out << "subgroup " << s.id << " of " << s.group_name << " order " << s.order
        << " structure \"" << s.structure << "\"\n";
    for (auto& p : s.rep_generators) out << "gen " << format_perm(p) << "\n";
}

std::vector<SubgroupClass> load_subgroup_dir(const std::string& dir, const GroupTable& g) {
    namespace fs = std::filesystem;
    std::vector<std::string> paths;
    for (auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".sub")
            paths.push_back(entry.path().string());
    if (paths.empty()) throw std::runtime_error("no .sub files in " + dir);
    std::sort(paths.begin(), paths.end());
    std::vector<SubgroupClass> out;
    for (auto& p : paths) out.push_back(load_subgroup_file(p, g));
    auto key = [](const std::string& label) {
        size_t i = 0;
        while (i < label.size() && !isdigit((unsigned char)label[i])) ++i;
        long num = (i < label.size()) ? std::stol(label.substr(i)) : 0;
        return std::pair<std::string, long>(label.substr(0, i), num);
    };
    std::sort(out.begin(), out.end(),
              [&](const SubgroupClass& a, const SubgroupClass& b) { return key(a.id) < key(b.id); });
    return out;
}

}  // namespace covernum
