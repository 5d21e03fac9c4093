#include "covernum/perm.hpp"

#include <numeric>
#include <stdexcept>

namespace covernum {

bool Perm::is_identity() const {
    for (int32_t i = 0; i < (int32_t)img.size(); ++i)
        if (img[i] != i) return false;
    return true;
}

Perm perm_identity(int degree) {
    Perm p;
    p.img.resize(degree);
    std::iota(p.img.begin(), p.img.end(), 0);
    return p;
}

Perm perm_mul(const Perm& a, const Perm& b) {
    if (a.degree() != b.degree()) throw std::runtime_error("perm_mul: degree mismatch");
    Perm c;
    c.img.resize(a.degree());
    for (int32_t i = 0; i < a.degree(); ++i) c.img[i] = b.img[a.img[i]];
    return c;
}

Perm perm_inverse(const Perm& a) {
    Perm c;
    c.img.resize(a.degree());
    for (int32_t i = 0; i < a.degree(); ++i) c.img[a.img[i]] = i;
    return c;
}

Perm perm_conjugate(const Perm& x, const Perm& g) {
    if (x.degree() != g.degree()) throw std::runtime_error("perm_conjugate: degree mismatch");
    Perm c;
    c.img.resize(x.degree());
    for (int32_t i = 0; i < x.degree(); ++i) c.img[g.img[i]] = g.img[x.img[i]];
    return c;
}

Perm perm_pow(const Perm& a, int64_t k) {
    int64_t n = perm_order(a);
    k %= n;
    if (k < 0) k += n;
    Perm acc = perm_identity(a.degree());
    Perm base = a;
    while (k > 0) {
        if (k & 1) acc = perm_mul(acc, base);
        base = perm_mul(base, base);
        k >>= 1;
    }
    return acc;
}

int64_t perm_order(const Perm& a) {
    std::vector<char> seen(a.degree(), 0);
    int64_t ord = 1;
    for (int32_t i = 0; i < a.degree(); ++i) {
        if (seen[i]) continue;
        int64_t len = 0;
        for (int32_t j = i; !seen[j]; j = a.img[j]) {
            seen[j] = 1;
            ++len;
        }
        ord = std::lcm(ord, len);
    }
    return ord;
}

Perm parse_perm(const std::string& text, int degree) {
    Perm p = perm_identity(degree);
    std::vector<char> moved(degree, 0);
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    };
    skip_ws();
    while (i < text.size()) {
        if (text[i] != '(') throw std::runtime_error("parse_perm: expected '(' in \"" + text + "\"");
        ++i;
        std::vector<int32_t> cycle;
        skip_ws();
        while (i < text.size() && text[i] != ')') {
            if (!isdigit((unsigned char)text[i]))
                throw std::runtime_error("parse_perm: expected point in \"" + text + "\"");
            int32_t v = 0;
            while (i < text.size() && isdigit((unsigned char)text[i])) v = v * 10 + (text[i++] - '0');
            if (v < 1 || v > degree)
                throw std::runtime_error("parse_perm: point " + std::to_string(v) +
                                         " out of range 1.." + std::to_string(degree));
            if (moved[v - 1])
                throw std::runtime_error("parse_perm: repeated point " + std::to_string(v));
            moved[v - 1] = 1;
            cycle.push_back(v - 1);
            skip_ws();
            if (i < text.size() && text[i] == ',') {
                ++i;
                skip_ws();
            }
        }
        if (i >= text.size()) throw std::runtime_error("parse_perm: unclosed cycle");
        ++i;  // ')'
        for (size_t k = 0; k < cycle.size(); ++k) p.img[cycle[k]] = cycle[(k + 1) % cycle.size()];
        skip_ws();
    }
    return p;
}

std::string format_perm(const Perm& a) {
    std::string out;
    std::vector<char> seen(a.degree(), 0);
    for (int32_t i = 0; i < a.degree(); ++i) {
        if (seen[i] || a.img[i] == i) continue;
        out += '(';
        int32_t j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = 1;
            if (!first) out += ',';
            out += std::to_string(j + 1);
            first = false;
            j = a.img[j];
        }
        out += ')';
    }
    if (out.empty()) out = "()";
    return out;
}

}  // namespace covernum
