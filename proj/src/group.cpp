#include "covernum/group.hpp"

#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace covernum {

std::string GroupTable::key(const int32_t* images, int degree) {
    return std::string((const char*)images, (size_t)degree * sizeof(int32_t));
}

void GroupTable::insert_row(const int32_t* images) {
    int32_t id = (int32_t)order();
    flat_.insert(flat_.end(), images, images + degree);
    index_.emplace(key(images, degree), id);
}

Perm GroupTable::perm(int32_t id) const {
    auto im = images(id);
    return Perm{std::vector<int32_t>(im.begin(), im.end())};
}

int32_t GroupTable::id_of(std::span<const int32_t> images) const {
    if ((int)images.size() != degree) return -1;
    auto it = index_.find(key(images.data(), degree));
    return it == index_.end() ? -1 : it->second;
}

int32_t GroupTable::mul(int32_t a, int32_t b) const {
    auto ia = images(a), ib = images(b);
    std::vector<int32_t> c(degree);
    for (int i = 0; i < degree; ++i) c[i] = ib[ia[i]];
    int32_t id = id_of(c);
    if (id < 0) throw std::runtime_error("GroupTable::mul: product not in group");
    return id;
}

int32_t GroupTable::inv(int32_t a) const {
    auto ia = images(a);
    std::vector<int32_t> c(degree);
    for (int i = 0; i < degree; ++i) c[ia[i]] = i;
    int32_t id = id_of(c);
    if (id < 0) throw std::runtime_error("GroupTable::inv: inverse not in group");
    return id;
}

int32_t GroupTable::conj(int32_t x, int32_t g) const {
    auto ix = images(x), ig = images(g);
    std::vector<int32_t> c(degree);
    for (int i = 0; i < degree; ++i) c[ig[i]] = ig[ix[i]];
    int32_t id = id_of(c);
    if (id < 0) throw std::runtime_error("GroupTable::conj: conjugate not in group");
    return id;
}

int32_t GroupTable::pow(int32_t x, int64_t k) const {
    int64_t n = element_order(x);
    k %= n;
    if (k < 0) k += n;
    int32_t acc = 0, base = x;
    while (k > 0) {
        if (k & 1) acc = mul(acc, base);
        base = mul(base, base);
        k >>= 1;
    }
    return acc;
}

int64_t GroupTable::element_order(int32_t x) const {
    auto ix = images(x);
    std::vector<char> seen(degree, 0);
    int64_t ord = 1;
    for (int i = 0; i < degree; ++i) {
        if (seen[i]) continue;
        int64_t len = 0;
        for (int32_t j = i; !seen[j]; j = ix[j]) {
            seen[j] = 1;
            ++len;
        }
        ord = std::lcm(ord, len);
    }
    return ord;
}

const std::vector<int32_t>& GroupTable::conj_map(int gi) const {
    if (conj_maps_.empty()) conj_maps_.resize(gen_ids_.size());
    auto& m = conj_maps_.at(gi);
    if (m.empty() && order() > 0) m = conj_map_by(gen_ids_.at(gi));
    return m;
}

std::vector<int32_t> GroupTable::conj_map_by(int32_t g) const {
    auto ig = images(g);
    std::vector<int32_t> ginv(degree);
    for (int i = 0; i < degree; ++i) ginv[ig[i]] = i;
    int64_t n = order();
    std::vector<int32_t> m(n);
    std::vector<int32_t> c(degree);
    for (int64_t x = 0; x < n; ++x) {
        auto ix = images((int32_t)x);
        for (int i = 0; i < degree; ++i) c[ig[i]] = ig[ix[i]];
        int32_t id = id_of(c);
        if (id < 0) throw std::runtime_error("conj_map_by: conjugate not in group");
        m[x] = id;
    }
    return m;
}

GroupTable close_group(const std::string& name, int degree, const std::vector<Perm>& gens,
                       int64_t expected_order) {
    if (degree <= 0) throw std::runtime_error("close_group: degree must be positive");
    GroupTable g;
    g.name = name;
    g.degree = degree;
    g.generators = gens;
    for (auto& p : gens)
        if (p.degree() != degree) throw std::runtime_error("close_group: generator degree mismatch");

    Perm e = perm_identity(degree);
    g.insert_row(e.img.data());
    std::vector<int32_t> frontier{0};
    std::vector<int32_t> prod(degree);
    while (!frontier.empty()) {
        std::vector<int32_t> next;
        for (int32_t id : frontier) {
            auto ia = g.images(id);
            // images(id) may be invalidated by insert_row; copy first.
            std::vector<int32_t> a(ia.begin(), ia.end());
            for (const Perm& p : gens) {
                for (int i = 0; i < degree; ++i) prod[i] = p.img[a[i]];
                if (g.id_of(prod) < 0) {
                    if (g.order() >= kMaxGroupOrder)
                        throw std::runtime_error("close_group: order cap " +
                                                 std::to_string(kMaxGroupOrder) + " exceeded");
                    next.push_back((int32_t)g.order());
                    g.insert_row(prod.data());
                }
            }
        }
        frontier = std::move(next);
    }
    for (const Perm& p : gens) g.gen_ids_.push_back(g.id_of(p));
    if (expected_order >= 0 && g.order() != expected_order)
        throw std::runtime_error("close_group(" + name + "): order " + std::to_string(g.order()) +
                                 " != declared " + std::to_string(expected_order));
    return g;
}

namespace {

// Strips comments and surrounding whitespace; empty result means skip.
std::string clean_line(const std::string& raw) {
    std::string s = raw;
    if (auto pos = s.find('#'); pos != std::string::npos) s.erase(pos);
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

GroupTable read_group(std::istream& in, const std::string& what) {
    std::string line, name;
    int degree = -1;
    int64_t declared = -1;
    std::vector<Perm> gens;
    bool header = false;
    while (std::getline(in, line)) {
        std::string s = clean_line(line);
        if (s.empty()) continue;
        std::istringstream ls(s);
        std::string tok;
        ls >> tok;
        if (tok == "group") {
            std::string kw1, kw2;
            ls >> name >> kw1 >> degree >> kw2 >> declared;
            if (!ls || kw1 != "degree" || kw2 != "order")
                throw std::runtime_error(what + ": bad group header: " + s);
            header = true;
        } else if (tok == "gen") {
            if (!header) throw std::runtime_error(what + ": gen before group header");
            std::string rest;
            std::getline(ls, rest);
            gens.push_back(parse_perm(clean_line(rest), degree));
        } else {
            throw std::runtime_error(what + ": unknown directive: " + tok);
        }
    }
    if (!header) throw std::runtime_error(what + ": missing group header");
    if (gens.empty()) throw std::runtime_error(what + ": no generators");
    return close_group(name, degree, gens, declared);
}

GroupTable load_group_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open group file: " + path);
    return read_group(in, path);
}

void write_group_file(const GroupTable& g, const std::string& path,
                      const std::vector<std::string>& comments) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write group file: " + path);
    for (auto& c : comments) out << "# " << c << "\n";
    out << "group " << g.name << " degree " << g.degree << " order " << g.order() << "\n";
    for (auto& p : g.generators) out << "gen " << format_perm(p) << "\n";
}

}  // namespace covernum
