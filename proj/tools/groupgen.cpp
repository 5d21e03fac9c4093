// Generates the vendored group and subgroup data files.
//
// For q in {2,3,4,5} this builds PSU(3,q) acting on the q^3+1 isotropic
// points of a Hermitian form on F_{q^2}^3, finds one representative of every
// conjugacy class of maximal subgroups, and writes data/groups/u3_<q>.grp
// plus data/subgroups/u3_<q>/m*.sub. Everything is re-derived and verified
// on the fly: generator matrices are checked to be unitary of determinant 1,
// group orders are checked against the closure, and each subgroup class is
// checked against its expected order and class size.
//
// Maximal subgroup representatives come from explicit recipes (point
// stabilizer, element centralizer, normalizer of a Sylow subgroup or of a
// cyclic subgroup) or, where no such recipe applies, from a deterministic
// seeded search over two-generator subgroups. Classes of equal order are
// distinguished by computed invariants of the representatives, never by
// trusting the search order.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "covernum/brute.hpp"
#include "covernum/classes.hpp"
#include "covernum/group.hpp"
#include "covernum/incidence.hpp"
#include "covernum/perm.hpp"
#include "covernum/subgroup.hpp"

using namespace covernum;

namespace {

// ---------------------------------------------------------------------------
// GF(p^n) with table arithmetic. Elements are integers in [0, p^n) whose
// base-p digits are polynomial coefficients (digit i = coefficient of x^i).
struct Field {
    int p = 0, n = 0, size = 0;
    std::vector<int> mul_table, add_table, inv_table;

    int add(int a, int b) const { return add_table[a * size + b]; }
    int mul(int a, int b) const { return mul_table[a * size + b]; }
    int inv(int a) const { return inv_table[a]; }
    int neg(int a) const {
        // digitwise negation mod p
        int r = 0, base = 1;
        for (int i = 0; i < n; ++i) {
            int d = (a / pow_int(p, i)) % p;
            r += ((p - d) % p) * base;
            base *= p;
        }
        return r;
    }
    int pow(int a, int64_t k) const {
        int r = 1;
        int64_t e = k;
        int b = a;
        while (e > 0) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }
    static int pow_int(int b, int e) {
        int r = 1;
        while (e-- > 0) r *= b;
        return r;
    }
};

// irreducible: coefficients c[0..n] of a monic degree-n polynomial over GF(p)
Field make_field(int p, int n, const std::vector<int>& irreducible) {
    Field f;
    f.p = p;
    f.n = n;
    f.size = Field::pow_int(p, n);
    auto digits = [&](int a) {
        std::vector<int> d(n);
        for (int i = 0; i < n; ++i) {
            d[i] = a % p;
            a /= p;
        }
        return d;
    };
    auto undigits = [&](const std::vector<int>& d) {
        int a = 0;
        for (int i = n - 1; i >= 0; --i) a = a * p + d[i];
        return a;
    };
    f.add_table.resize((size_t)f.size * f.size);
    f.mul_table.resize((size_t)f.size * f.size);
    for (int a = 0; a < f.size; ++a) {
        auto da = digits(a);
        for (int b = 0; b < f.size; ++b) {
            auto db = digits(b);
            std::vector<int> s(n);
            for (int i = 0; i < n; ++i) s[i] = (da[i] + db[i]) % p;
            f.add_table[(size_t)a * f.size + b] = undigits(s);
            // polynomial product, then reduce by the irreducible
            std::vector<int> prod(2 * n - 1, 0);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            for (int d = 2 * n - 2; d >= n; --d) {
                int c = prod[d];
                if (c == 0) continue;
                prod[d] = 0;
                // x^d = x^(d-n) * (x^n mod irreducible); x^n == -(lower terms)
                for (int i = 0; i < n; ++i)
                    prod[d - n + i] = (prod[d - n + i] + c * (p - irreducible[i])) % p;
            }
            std::vector<int> r(prod.begin(), prod.begin() + n);
            f.mul_table[(size_t)a * f.size + b] = undigits(r);
        }
    }
    f.inv_table.assign(f.size, -1);
    for (int a = 1; a < f.size; ++a)
        for (int b = 1; b < f.size; ++b)
            if (f.mul(a, b) == 1) f.inv_table[a] = b;
    for (int a = 1; a < f.size; ++a)
        if (f.inv_table[a] < 0) throw std::runtime_error("field: missing inverse");
    return f;
}

// GF(q^2) together with the conjugation x -> x^q used by the Hermitian form.
struct UnitaryField {
    Field f;
    int q = 0;
    int generator = 0;  // multiplicative generator of GF(q^2)*

    int conj(int a) const { return f.pow(a, q); }
};

UnitaryField make_unitary_field(int q) {
    UnitaryField uf;
    uf.q = q;
    switch (q) {
        case 2: uf.f = make_field(2, 2, {1, 1, 1}); break;        // x^2+x+1
        case 3: uf.f = make_field(3, 2, {2, 2, 1}); break;        // x^2+2x+2
        case 4: uf.f = make_field(2, 4, {1, 1, 0, 0, 1}); break;  // x^4+x+1
        case 5: uf.f = make_field(5, 2, {2, 4, 1}); break;        // x^2+4x+2
        default: throw std::runtime_error("unsupported q");
    }
    for (int a = 2; a < uf.f.size; ++a) {
        int x = a;
        int ord = 1;
        while (x != 1) {
            x = uf.f.mul(x, a);
            ++ord;
        }
        if (ord == uf.f.size - 1) {
            uf.generator = a;
            break;
        }
    }
    if (uf.generator == 0) throw std::runtime_error("field: no generator");
    return uf;
}

// ---------------------------------------------------------------------------
// 3x3 matrices over GF(q^2) and the Hermitian geometry.
using Mat3 = std::array<std::array<int, 3>, 3>;
using Vec3 = std::array<int, 3>;

Mat3 mat_mul(const UnitaryField& uf, const Mat3& a, const Mat3& b) {
    Mat3 c{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int s = 0;
            for (int k = 0; k < 3; ++k) s = uf.f.add(s, uf.f.mul(a[i][k], b[k][j]));
            c[i][j] = s;
        }
    return c;
}

Vec3 mat_apply(const UnitaryField& uf, const Mat3& m, const Vec3& v) {
    Vec3 w{};
    for (int i = 0; i < 3; ++i) {
        int s = 0;
        for (int k = 0; k < 3; ++k) s = uf.f.add(s, uf.f.mul(m[i][k], v[k]));
        w[i] = s;
    }
    return w;
}

int mat_det(const UnitaryField& uf, const Mat3& m) {
    const Field& f = uf.f;
    int d = 0;
    d = f.add(d, f.mul(m[0][0], f.add(f.mul(m[1][1], m[2][2]), f.neg(f.mul(m[1][2], m[2][1])))));
    d = f.add(d, f.neg(f.mul(m[0][1],
                             f.add(f.mul(m[1][0], m[2][2]), f.neg(f.mul(m[1][2], m[2][0]))))));
    d = f.add(d, f.mul(m[0][2], f.add(f.mul(m[1][0], m[2][1]), f.neg(f.mul(m[1][1], m[2][0])))));
    return d;
}

// h(u, v) = u1*conj(v3) + u2*conj(v2) + u3*conj(v1)
int hermitian(const UnitaryField& uf, const Vec3& u, const Vec3& v) {
    const Field& f = uf.f;
    int s = f.mul(u[0], uf.conj(v[2]));
    s = f.add(s, f.mul(u[1], uf.conj(v[1])));
    s = f.add(s, f.mul(u[2], uf.conj(v[0])));
    return s;
}

bool preserves_form(const UnitaryField& uf, const Mat3& m) {
    // check on a basis: h(m e_i, m e_j) == h(e_i, e_j) for all i, j
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Vec3 ei{}, ej{};
            ei[i] = 1;
            ej[j] = 1;
            if (hermitian(uf, mat_apply(uf, m, ei), mat_apply(uf, m, ej)) !=
                hermitian(uf, ei, ej))
                return false;
        }
    return true;
}

bool is_special_unitary(const UnitaryField& uf, const Mat3& m) {
    return mat_det(uf, m) == 1 && preserves_form(uf, m);
}

Vec3 normalize_point(const UnitaryField& uf, const Vec3& v) {
    for (int i = 0; i < 3; ++i)
        if (v[i] != 0) {
            int s = uf.f.inv(v[i]);
            return {uf.f.mul(s, v[0]), uf.f.mul(s, v[1]), uf.f.mul(s, v[2])};
        }
    throw std::runtime_error("normalize_point: zero vector");
}

std::vector<Vec3> isotropic_points(const UnitaryField& uf) {
    std::set<Vec3> pts;
    int s = uf.f.size;
    for (int a = 0; a < s; ++a)
        for (int b = 0; b < s; ++b)
            for (int c = 0; c < s; ++c) {
                Vec3 v{a, b, c};
                if (a == 0 && b == 0 && c == 0) continue;
                if (hermitian(uf, v, v) == 0) pts.insert(normalize_point(uf, v));
            }
    std::vector<Vec3> out(pts.begin(), pts.end());
    int64_t expect = (int64_t)uf.q * uf.q * uf.q + 1;
    if ((int64_t)out.size() != expect)
        throw std::runtime_error("isotropic point count mismatch");
    return out;
}

Perm matrix_to_perm(const UnitaryField& uf, const std::vector<Vec3>& pts, const Mat3& m) {
    std::map<Vec3, int> index;
    for (int i = 0; i < (int)pts.size(); ++i) index[pts[i]] = i;
    Perm p;
    p.img.resize(pts.size());
    for (int i = 0; i < (int)pts.size(); ++i) {
        Vec3 w = normalize_point(uf, mat_apply(uf, m, pts[i]));
        auto it = index.find(w);
        if (it == index.end()) throw std::runtime_error("image is not isotropic");
        p.img[i] = it->second;
    }
    return p;
}

// Upper unitriangular members of SU(3,q); there are exactly q^3 of them.
std::vector<Mat3> unipotent_elements(const UnitaryField& uf) {
    std::vector<Mat3> out;
    int s = uf.f.size;
    for (int a = 0; a < s; ++a)
        for (int b = 0; b < s; ++b)
            for (int c = 0; c < s; ++c) {
                Mat3 m{{{1, a, b}, {0, 1, c}, {0, 0, 1}}};
                if (is_special_unitary(uf, m)) out.push_back(m);
            }
    if ((int64_t)out.size() != (int64_t)uf.q * uf.q * uf.q)
        throw std::runtime_error("unipotent count mismatch");
    return out;
}

GroupTable build_psu3(int q) {
    UnitaryField uf = make_unitary_field(q);
    auto pts = isotropic_points(uf);
    std::vector<Mat3> gens;
    if (q == 2) {
        // SU(3,2) is small enough to enumerate outright; feed every element
        // to the closure (the projective images collapse to PSU(3,2)).
        int s = uf.f.size;
        for (int a = 0; a < s * s * s; ++a)
            for (int b = 0; b < s * s * s; ++b) {
                Mat3 m{{{a % s, (a / s) % s, a / (s * s)},
                        {b % s, (b / s) % s, b / (s * s)},
                        {0, 0, 0}}};
                // third row: try all; cheaper to test det != 0 later, but the
                // full scan over 4^9 is still instant at q = 2.
                for (int c = 0; c < s * s * s; ++c) {
                    m[2] = {c % s, (c / s) % s, c / (s * s)};
                    if (is_special_unitary(uf, m)) gens.push_back(m);
                }
            }
    } else {
        auto unis = unipotent_elements(uf);
        // one root element with a != 0, one with a = 0, and one more flavor
        Mat3 u1{}, u0{}, ug{};
        bool got1 = false, got0 = false, gotg = false;
        for (const auto& m : unis) {
            if (!got1 && m[0][1] == 1) {
                u1 = m;
                got1 = true;
            }
            if (!got0 && m[0][1] == 0 && m[0][2] != 0) {
                u0 = m;
                got0 = true;
            }
            if (!gotg && m[0][1] == uf.generator) {
                ug = m;
                gotg = true;
            }
        }
        if (!got1 || !got0 || !gotg) throw std::runtime_error("missing root elements");
        int g = uf.generator;
        Mat3 d{{{g, 0, 0},
                {0, uf.f.mul(uf.f.pow(g, uf.q), uf.f.inv(g)), 0},
                {0, 0, uf.f.inv(uf.f.pow(g, uf.q))}}};
        Mat3 w{{{0, 0, 1}, {0, uf.f.neg(1), 0}, {1, 0, 0}}};
        gens = {u1, u0, ug, d, w};
    }
    std::vector<Perm> perm_gens;
    for (const auto& m : gens) {
        if (!is_special_unitary(uf, m)) throw std::runtime_error("generator not in SU(3,q)");
        Perm p = matrix_to_perm(uf, pts, m);
        if (p.is_identity()) continue;
        bool dup = false;
        for (const auto& e : perm_gens) dup = dup || e == p;
        if (!dup) perm_gens.push_back(p);
    }
    int64_t su = (int64_t)(q * q * q) * (q * q - 1) * (q * q * q + 1);
    int64_t z = std::gcd((int64_t)3, (int64_t)q + 1);
    return close_group("u3_" + std::to_string(q), (int)pts.size(), perm_gens, su / z);
}

// ---------------------------------------------------------------------------
// Element-set machinery on a closed group table. All ID vectors are sorted.

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::runtime_error(msg);
}

// Closure of the subgroup generated by the seed IDs; positive words suffice in
// a finite group. Aborts with an empty result once the size exceeds cap.
std::vector<int32_t> close_ids(const GroupTable& g, const std::vector<int32_t>& seed,
                               int64_t cap) {
    std::set<int32_t> have{0};
    std::vector<int32_t> queue{0};
    for (size_t qi = 0; qi < queue.size(); ++qi)
        for (int32_t s : seed) {
            int32_t v = g.mul(queue[qi], s);
            if (have.insert(v).second) {
                if ((int64_t)have.size() > cap) return {};
                queue.push_back(v);
            }
        }
    return {have.begin(), have.end()};
}

// Small generating set for a known subgroup: greedily add the least element
// not yet generated until the closure is the whole set.
std::vector<Perm> greedy_generators(const GroupTable& g, const std::vector<int32_t>& ids) {
    std::vector<int32_t> gens;
    std::vector<int32_t> cur{0};
    while (cur.size() < ids.size()) {
        int32_t next = -1;
        for (int32_t x : ids)
            if (!std::binary_search(cur.begin(), cur.end(), x)) {
                next = x;
                break;
            }
        require(next >= 0, "greedy_generators: closure stalled");
        gens.push_back(next);
        cur = close_ids(g, gens, (int64_t)ids.size());
        require(!cur.empty(), "greedy_generators: closure escaped the target set");
    }
    require(cur == ids, "greedy_generators: generated a different subgroup");
    std::vector<Perm> out;
    out.reserve(gens.size());
    for (int32_t x : gens) out.push_back(g.perm(x));
    return out;
}

std::vector<int32_t> stabilizer_ids(const GroupTable& g, int point) {
    std::vector<int32_t> out;
    for (int32_t x = 0; x < g.order(); ++x)
        if (g.images(x)[point] == point) out.push_back(x);
    return out;
}

std::vector<int32_t> centralizer_ids(const GroupTable& g, int32_t x) {
    std::vector<int32_t> out;
    for (int32_t y = 0; y < g.order(); ++y)
        if (g.mul(x, y) == g.mul(y, x)) out.push_back(y);
    return out;
}

std::vector<int32_t> cyclic_ids(const GroupTable& g, int32_t x) {
    std::vector<int32_t> out{0};
    int32_t p = x;
    while (p != 0) {
        out.push_back(p);
        p = g.mul(p, x);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int32_t> normalizer_ids(const GroupTable& g, const std::vector<int32_t>& sub) {
    std::vector<int32_t> out;
    for (int32_t n = 0; n < g.order(); ++n) {
        bool ok = true;
        for (int32_t s : sub)
            if (!std::binary_search(sub.begin(), sub.end(), g.conj(s, n))) {
                ok = false;
                break;
            }
        if (ok) out.push_back(n);
    }
    return out;
}

// A Sylow p-subgroup, grown greedily: join p-elements in ascending ID order,
// keeping any join that is still a p-group of size <= target. If the current
// group is smaller than a full Sylow subgroup, some p-element normalizes it
// and extends it to a larger p-group, so the ascending scan cannot stall.
std::vector<int32_t> sylow_ids(const GroupTable& g, int p, int64_t target) {
    auto is_p_power = [&](int64_t n) {
        while (n % p == 0) n /= p;
        return n == 1;
    };
    std::vector<int32_t> gens;
    std::vector<int32_t> cur{0};
    for (int32_t x = 1; x < g.order() && (int64_t)cur.size() < target; ++x) {
        if (!is_p_power(g.element_order(x))) continue;
        if (std::binary_search(cur.begin(), cur.end(), x)) continue;
        gens.push_back(x);
        auto t = close_ids(g, gens, target);
        if (!t.empty() && is_p_power((int64_t)t.size()))
            cur = std::move(t);
        else
            gens.pop_back();
    }
    require((int64_t)cur.size() == target, "sylow_ids: did not reach the full p-part");
    return cur;
}

// Orbit of a subgroup (as a sorted ID set) under conjugation by the group.
std::set<std::vector<int32_t>> conj_orbit(const GroupTable& g, const std::vector<int32_t>& ids) {
    std::set<std::vector<int32_t>> orbit{ids};
    std::vector<std::vector<int32_t>> queue{ids};
    for (size_t qi = 0; qi < queue.size(); ++qi)
        for (int32_t gi : g.generator_ids()) {
            std::vector<int32_t> c;
            c.reserve(queue[qi].size());
            for (int32_t x : queue[qi]) c.push_back(g.conj(x, gi));
            std::sort(c.begin(), c.end());
            if (orbit.insert(c).second) queue.push_back(c);
        }
    return orbit;
}

int64_t center_size(const GroupTable& g, const std::vector<int32_t>& ids) {
    int64_t n = 0;
    for (int32_t x : ids) {
        bool central = true;
        for (int32_t y : ids)
            if (g.mul(x, y) != g.mul(y, x)) {
                central = false;
                break;
            }
        if (central) ++n;
    }
    return n;
}

// Seeded random two-generator search for `count` pairwise non-conjugate
// subgroup classes of the given order. Every hit is verified exactly: the
// closure must have the requested order and its conjugation orbit must have
// the expected size. Deterministic for a fixed seed (raw mt19937 words are
// reduced mod the order; no distribution objects, which vary by platform).
std::vector<std::vector<int32_t>> search_subgroup_classes(const GroupTable& g, int64_t order,
                                                          int count, int64_t expect_class_size,
                                                          uint32_t seed) {
    std::mt19937 rng(seed);
    std::vector<std::vector<int32_t>> reps;
    std::vector<std::set<std::vector<int32_t>>> orbits;
    int64_t attempts = 0;
    const int64_t kMaxAttempts = 5'000'000;
    while ((int)reps.size() < count) {
        require(++attempts <= kMaxAttempts,
                "search for order " + std::to_string(order) + " classes exhausted");
        int32_t a = (int32_t)(1 + rng() % (uint32_t)(g.order() - 1));
        int32_t b = (int32_t)(1 + rng() % (uint32_t)(g.order() - 1));
        if (order % g.element_order(a) != 0 || order % g.element_order(b) != 0) continue;
        auto ids = close_ids(g, {a, b}, order);
        if ((int64_t)ids.size() != order) continue;
        bool dup = false;
        for (const auto& o : orbits) dup = dup || o.count(ids) > 0;
        if (dup) continue;
        auto orbit = conj_orbit(g, ids);
        require((int64_t)orbit.size() == expect_class_size,
                "search hit an order-" + std::to_string(order) + " class of unexpected size " +
                    std::to_string(orbit.size()));
        reps.push_back(ids);
        orbits.push_back(std::move(orbit));
    }
    return reps;
}

// For a group small enough to enumerate, the maximal subgroups straight from
// the full lattice, one representative per conjugacy class.
std::vector<std::vector<int32_t>> maximal_class_reps_brute(const GroupTable& g) {
    auto subs = all_subgroups(g);
    auto maxima = maximal_proper(g, subs);
    std::set<std::vector<int32_t>> unseen(maxima.begin(), maxima.end());
    std::vector<std::vector<int32_t>> reps;
    while (!unseen.empty()) {
        auto orbit = conj_orbit(g, *unseen.begin());
        reps.push_back(*orbit.begin());
        for (const auto& s : orbit) unseen.erase(s);
    }
    return reps;
}

// ---------------------------------------------------------------------------
// Per-group recipes for one representative of every maximal subgroup class.

struct FoundClass {
    std::string structure;
    std::vector<int32_t> ids;
    std::string note;  // human-readable provenance for the data file
};

int32_t class_rep(const ClassData& cd, int64_t element_order, int64_t centralizer_order,
                  const std::string& what) {
    for (const auto& c : cd.classes)
        if (c.element_order == element_order &&
            (centralizer_order < 0 || c.centralizer_order == centralizer_order))
            return c.rep;
    throw std::runtime_error(what + ": no matching conjugacy class");
}

std::vector<FoundClass> find_maximals(const GroupTable& g, const ClassData& cd, int q) {
    std::vector<FoundClass> out;
    auto push = [&](const std::string& structure, std::vector<int32_t> ids, int64_t order,
                    const std::string& note) {
        require((int64_t)ids.size() == order, g.name + " " + structure + ": recipe gave order " +
                                                  std::to_string(ids.size()) + ", expected " +
                                                  std::to_string(order));
        out.push_back({structure, std::move(ids), note});
    };
    if (q == 2) {
        for (auto& ids : maximal_class_reps_brute(g)) {
            if (ids.size() == 36)
                push("3^2:4", std::move(ids), 36,
                     "one of the three index-2 subgroups, from exhaustive enumeration "
                     "of the full subgroup lattice");
            else if (ids.size() == 8)
                push("Q8", std::move(ids), 8,
                     "complement class, from exhaustive enumeration of the full "
                     "subgroup lattice");
            else
                throw std::runtime_error("u3_2: unexpected maximal subgroup order " +
                                         std::to_string(ids.size()));
        }
        require(out.size() == 4, "u3_2: expected 4 maximal classes");
    } else if (q == 3) {
        push("3^(1+2):8", stabilizer_ids(g, 0), 216, "stabilizer of the base point");
        push("L2(7)", search_subgroup_classes(g, 168, 1, 36, 1001)[0], 168,
             "seeded two-generator search (seed 1001)");
        int with_center4 = 0, with_trivial_center = 0;
        for (auto& ids : search_subgroup_classes(g, 96, 2, 63, 1002)) {
            int64_t z = center_size(g, ids);
            if (z == 4) {
                ++with_center4;
                push("4.S4", std::move(ids), 96,
                     "seeded two-generator search (seed 1002); distinguished from the "
                     "other order-96 class by its center of order 4");
            } else if (z == 1) {
                ++with_trivial_center;
                push("4^2:S3", std::move(ids), 96,
                     "seeded two-generator search (seed 1002); distinguished from the "
                     "other order-96 class by its trivial center");
            } else {
                throw std::runtime_error("u3_3: order-96 class with unexpected center order " +
                                         std::to_string(z));
            }
        }
        require(with_center4 == 1 && with_trivial_center == 1,
                "u3_3: the order-96 classes were not distinguished by center order");
    } else if (q == 4) {
        push("2^(2+4):15", stabilizer_ids(g, 0), 960, "stabilizer of the base point");
        push("5xA5", centralizer_ids(g, class_rep(cd, 5, 300, "u3_4 5xA5")), 300,
             "centralizer of an order-5 element whose class has centralizer order 300");
        push("5^2:S3", normalizer_ids(g, sylow_ids(g, 5, 25)), 150,
             "normalizer of a Sylow 5-subgroup");
        push("13:3", normalizer_ids(g, cyclic_ids(g, class_rep(cd, 13, -1, "u3_4 13:3"))), 39,
             "normalizer of the cyclic subgroup generated by an element of order 13");
    } else if (q == 5) {
        for (auto& ids : search_subgroup_classes(g, 2520, 3, 50, 1003))
            push("A7", std::move(ids), 2520,
                 "seeded two-generator search (seed 1003); one of three classes of "
                 "this order, pairwise non-conjugate by orbit comparison");
        push("5^(1+2):8", stabilizer_ids(g, 0), 1000, "stabilizer of the base point");
        for (auto& ids : search_subgroup_classes(g, 720, 3, 175, 1004))
            push("M10", std::move(ids), 720,
                 "seeded two-generator search (seed 1004); one of three classes of "
                 "this order, pairwise non-conjugate by orbit comparison");
        push("2.S5", centralizer_ids(g, class_rep(cd, 2, 240, "u3_5 2.S5")), 240,
             "centralizer of an involution");
    } else {
        throw std::runtime_error("find_maximals: unsupported q");
    }
    return out;
}

std::vector<std::pair<int64_t, int64_t>> expected_classes(int q) {
    switch (q) {
        case 2: return {{36, 1}, {36, 1}, {36, 1}, {8, 9}};
        case 3: return {{216, 28}, {168, 36}, {96, 63}, {96, 63}};
        case 4: return {{960, 65}, {300, 208}, {150, 416}, {39, 1600}};
        case 5:
            return {{2520, 50}, {2520, 50}, {2520, 50}, {1000, 126},
                    {720, 175}, {720, 175}, {720, 175}, {240, 525}};
        default: throw std::runtime_error("expected_classes: unsupported q");
    }
}

// ---------------------------------------------------------------------------

void emit_group(int q, const std::string& out_root) {
    std::printf("== u3_%d ==\n", q);
    GroupTable g = build_psu3(q);
    if (g.generator_ids().size() > 10) {
        // the q = 2 construction feeds every element to the closure; thin the
        // stored generating set before writing the file
        std::vector<int32_t> all((size_t)g.order());
        std::iota(all.begin(), all.end(), 0);
        g = close_group(g.name, g.degree, greedy_generators(g, all), g.order());
    }
    std::printf("group %s: degree %d, order %lld\n", g.name.c_str(), g.degree,
                (long long)g.order());
    ClassData cd = conjugacy_classes(g);
    std::printf("conjugacy classes: %zu\n", cd.classes.size());
    for (const auto& c : cd.classes)
        std::printf("  %-4s size %-8lld |x| %-3lld |C| %-8lld %s\n", c.label.c_str(),
                    (long long)c.size, (long long)c.element_order,
                    (long long)c.centralizer_order, c.principal ? "principal" : "-");

    auto raw = find_maximals(g, cd, q);
    // Deterministic labels M1, M2, ...: subgroup order descending, then
    // structure string, then the representative's ID set.
    std::sort(raw.begin(), raw.end(), [](const FoundClass& x, const FoundClass& y) {
        if (x.ids.size() != y.ids.size()) return x.ids.size() > y.ids.size();
        if (x.structure != y.structure) return x.structure < y.structure;
        return x.ids < y.ids;
    });
    std::vector<SubgroupClass> subs;
    for (size_t i = 0; i < raw.size(); ++i)
        subs.push_back(close_subgroup(g, "M" + std::to_string(i + 1), raw[i].structure,
                                      greedy_generators(g, raw[i].ids),
                                      (int64_t)raw[i].ids.size()));

    auto expect = expected_classes(q);
    require(subs.size() == expect.size(),
            g.name + ": expected " + std::to_string(expect.size()) + " maximal classes, found " +
                std::to_string(subs.size()));
    for (size_t i = 0; i < subs.size(); ++i)
        require(subs[i].order == expect[i].first && subs[i].class_size() == expect[i].second,
                g.name + " " + subs[i].id + ": (order, class size) = (" +
                    std::to_string(subs[i].order) + ", " + std::to_string(subs[i].class_size()) +
                    "), expected (" + std::to_string(expect[i].first) + ", " +
                    std::to_string(expect[i].second) + ")");
    std::printf("maximal subgroup classes:\n");
    for (const auto& s : subs)
        std::printf("  %-4s order %-7lld index %-6lld class-size %-6lld %s\n", s.id.c_str(),
                    (long long)s.order, (long long)s.index, (long long)s.class_size(),
                    s.structure.c_str());

    IncidenceMatrices im = incidence_matrices(g, cd, subs);
    int64_t pairs = check_prop_char(g, cd, subs, im);
    std::printf("permutation-character consistency: %lld pairs checked\n", (long long)pairs);
    std::printf("principal fused rows of A:\n");
    for (const auto& fr : im.fused) {
        std::string a_str;
        for (int64_t v : fr.a) a_str += " " + std::to_string(v);
        std::printf("  %-6s size %-8lld a =%s\n", fr.label.c_str(), (long long)fr.total_size,
                    a_str.c_str());
    }
    auto forced = forced_columns(im);
    if (forced.empty())
        std::printf("forced columns: none\n");
    else
        for (const auto& fc : forced)
            std::printf("forced column: %s (only class covering %s)\n",
                        im.col_labels[fc.col].c_str(), fc.reason_class.c_str());

    namespace fs = std::filesystem;
    fs::create_directories(out_root + "/groups");
    fs::create_directories(out_root + "/subgroups/" + g.name);
    std::string grp_path = out_root + "/groups/" + g.name + ".grp";
    write_group_file(
        g, grp_path,
        {"PSU(3," + std::to_string(q) + ") as permutations of the " +
             std::to_string(g.degree) + " isotropic points of the Hermitian form",
         "h(u,v) = u1*conj(v3) + u2*conj(v2) + u3*conj(v1) over GF(" + std::to_string(q * q) +
             "), conj(x) = x^" + std::to_string(q) + ".",
         "Generators are images of verified special unitary matrices; the group",
         "order is checked during closure. The m*.sub files beside this group are",
         "the complete list of conjugacy classes of maximal subgroups, as in the",
         "ATLAS of Finite Groups. Regenerate: build/groupgen " + std::to_string(q)});
    std::printf("wrote %s\n", grp_path.c_str());
    for (size_t i = 0; i < subs.size(); ++i) {
        std::string fname = subs[i].id;
        for (auto& ch : fname) ch = (char)std::tolower((unsigned char)ch);
        std::string path = out_root + "/subgroups/" + g.name + "/" + fname + ".sub";
        write_subgroup_file(
            subs[i], path,
            {subs[i].structure + ", order " + std::to_string(subs[i].order) + ", index " +
                 std::to_string(subs[i].index) + ", class size " +
                 std::to_string(subs[i].class_size()),
             raw[i].note,
             "Verified on generation: closure order and conjugation-orbit size.",
             "Regenerate: build/groupgen " + std::to_string(q)});
        std::printf("wrote %s\n", path.c_str());
    }

    // Round-trip: reload what was written and spot-check.
    GroupTable g2 = load_group_file(grp_path);
    require(g2.order() == g.order() && g2.degree == g.degree && g2.name == g.name,
            g.name + ": group file round-trip mismatch");
    auto subs2 = load_subgroup_dir(out_root + "/subgroups/" + g.name, g2);
    require(subs2.size() == subs.size(), g.name + ": subgroup dir round-trip count mismatch");
    for (size_t i = 0; i < subs.size(); ++i)
        require(subs2[i].id == subs[i].id && subs2[i].order == subs[i].order &&
                    subs2[i].class_size() == subs[i].class_size() &&
                    subs2[i].rep() == subs[i].rep(),
                g.name + " " + subs[i].id + ": subgroup file round-trip mismatch");
    std::printf("round-trip reload OK\n\n");
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> qs;
    std::string out_root = "data";
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--out" && i + 1 < argc)
            out_root = argv[++i];
        else
            qs.push_back(std::stoi(a));
    }
    if (qs.empty()) qs = {2, 3, 4, 5};
    try {
        for (int q : qs) emit_group(q, out_root);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "groupgen: %s\n", e.what());
        return 1;
    }
    return 0;
}
