#include "covernum/ilp.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>
#include <tuple>

namespace covernum {

void CoveringProgram::validate() const {
    std::set<std::string> seen;
    for (const auto& c : cols) {
        if (c.label.empty() || !seen.insert(c.label).second)
            throw std::runtime_error("program " + name + ": bad or duplicate column label");
        if (c.ub < 0) throw std::runtime_error("program " + name + ": negative upper bound");
    }
    seen.clear();
    for (const auto& r : rows) {
        if (r.label.empty() || !seen.insert(r.label).second)
            throw std::runtime_error("program " + name + ": bad or duplicate row label");
        if (r.demand < 0) throw std::runtime_error("program " + name + ": negative demand");
        std::set<int32_t> cols_in_row;
        for (const auto& t : r.terms) {
            if (t.col < 0 || t.col >= (int32_t)cols.size())
                throw std::runtime_error("program " + name + ": entry outside columns");
            if (t.coeff <= 0)
                throw std::runtime_error("program " + name + ": coefficients must be positive");
            if (!cols_in_row.insert(t.col).second)
                throw std::runtime_error("program " + name + ": duplicate entry in row " + r.label);
        }
    }
}

int CoveringProgram::col_index(const std::string& label) const {
    for (size_t j = 0; j < cols.size(); ++j)
        if (cols[j].label == label) return (int)j;
    return -1;
}

bool CoveringProgram::satisfies(const std::vector<int64_t>& x) const {
    if (x.size() != cols.size()) return false;
    for (size_t j = 0; j < cols.size(); ++j)
        if (x[j] < 0 || x[j] > cols[j].ub) return false;
    for (const auto& r : rows) {
        Int got = 0;
        for (const auto& t : r.terms) got += Int(t.coeff) * x[t.col];
        if (got < r.demand) return false;
    }
    return true;
}

Rat dual_bound(const CoveringProgram& p, const std::vector<Rat>& y) {
    if (y.size() != p.rows.size()) throw std::runtime_error("dual_bound: wrong multiplier count");
    for (const auto& v : y)
        if (v < 0) throw std::runtime_error("dual_bound: negative multiplier");
    Rat bound = 0;
    for (size_t i = 0; i < p.rows.size(); ++i) bound += y[i] * p.rows[i].demand;
    std::vector<Rat> colsum(p.cols.size(), Rat(0));
    for (size_t i = 0; i < p.rows.size(); ++i)
        for (const auto& t : p.rows[i].terms) colsum[t.col] += y[i] * t.coeff;
    for (size_t j = 0; j < p.cols.size(); ++j)
        if (colsum[j] > 1) bound -= (colsum[j] - 1) * p.cols[j].ub;
    return bound;
}

namespace {

using SolverClock = std::chrono::steady_clock;

// Thrown by SmallRat when a reduced value leaves int64; the caller restarts
// the identical computation over arbitrary-precision rationals.
struct RatOverflow {};
// Thrown from inside the simplex when the time budget expires mid-solve.
struct SolveDeadline {};

inline uint64_t gcd64(uint64_t a, uint64_t b) {
    if (a == 0) return b;
    if (b == 0) return a;
    int sa = __builtin_ctzll(a), sb = __builtin_ctzll(b);
    int sh = sa < sb ? sa : sb;
    a >>= sa;
    do {
        b >>= __builtin_ctzll(b);
        if (a > b) {
            uint64_t t = a;
            a = b;
            b = t;
        }
        b -= a;
    } while (b);
    return a << sh;
}

inline unsigned __int128 gcd128(unsigned __int128 a, unsigned __int128 b) {
    if (a <= UINT64_MAX && b <= UINT64_MAX) return gcd64((uint64_t)a, (uint64_t)b);
    while (b) {
        unsigned __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Magnitude check on intermediate results: values must stay strictly inside
// int64 (INT64_MIN itself is rejected so negation is always safe).
inline int64_t fit64(__int128 v) {
    if (v > (__int128)INT64_MAX || v < -(__int128)INT64_MAX) throw RatOverflow{};
    return (int64_t)v;
}

// Exact rational arithmetic on an int64 numerator and positive int64
// denominator, always stored reduced. Stored values are reduced, so every
// intermediate product of two of them fits in __int128 and no intermediate
// can overflow silently; only a result whose reduced form no longer fits
// int64 escapes, by throwing RatOverflow. Both this type and the
// arbitrary-precision fallback compute exactly, so a solve produces the
// same pivots and the same answer under either arithmetic.
struct SmallRat {
    int64_t num = 0;
    int64_t den = 1;

    SmallRat() = default;
    SmallRat(int64_t v) : num(v) {}  // NOLINT: implicit like the big rational
    SmallRat(int v) : num(v) {}      // NOLINT
    SmallRat(int64_t n, int64_t d) { *this = make(n, d); }

    static SmallRat make(__int128 n, __int128 d) {
        if (d == 0) throw std::runtime_error("SmallRat: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        SmallRat r;
        if (n == 0) return r;
        unsigned __int128 a = n < 0 ? (unsigned __int128)(-n) : (unsigned __int128)n;
        unsigned __int128 b = (unsigned __int128)d;
        unsigned __int128 g = gcd128(a, b);
        a /= g;
        b /= g;
        if (a > (unsigned __int128)INT64_MAX || b > (unsigned __int128)INT64_MAX)
            throw RatOverflow{};
        r.num = n < 0 ? -(int64_t)a : (int64_t)a;
        r.den = (int64_t)b;
        return r;
    }
};

// The operators keep results reduced without ever running a gcd wider than
// 64 bits: sums reduce against gcd(a.den, b.den) only, and products divide
// the cross gcds out of the factors first, which leaves nothing to reduce.
inline SmallRat operator+(const SmallRat& a, const SmallRat& b) {
    if (a.num == 0) return b;
    if (b.num == 0) return a;
    SmallRat r;
    if (a.den == b.den) {
        __int128 t = (__int128)a.num + b.num;
        if (a.den == 1) {
            r.num = fit64(t);
            return r;
        }
        if (t == 0) return r;
        uint64_t mag = t < 0 ? (uint64_t)(-t) : (uint64_t)t;
        int64_t g = (int64_t)gcd64(mag, (uint64_t)a.den);
        r.num = fit64(t / g);
        r.den = a.den / g;
        return r;
    }
    int64_t g = (int64_t)gcd64((uint64_t)a.den, (uint64_t)b.den);
    if (g == 1) {
        r.num = fit64((__int128)a.num * b.den + (__int128)b.num * a.den);
        r.den = fit64((__int128)a.den * b.den);
        return r;
    }
    int64_t ad = a.den / g, bd = b.den / g;
    __int128 t = (__int128)a.num * bd + (__int128)b.num * ad;
    if (t == 0) return r;
    uint64_t tm = (uint64_t)((t < 0 ? -t : t) % (uint64_t)g);
    int64_t g2 = (int64_t)gcd64(tm, (uint64_t)g);
    __int128 den = (__int128)ad * b.den;
    if (g2 > 1) {
        t /= g2;
        den /= g2;
    }
    r.num = fit64(t);
    r.den = fit64(den);
    return r;
}
inline SmallRat operator-(const SmallRat& a, const SmallRat& b) {
    SmallRat nb;
    nb.num = -b.num;
    nb.den = b.den;
    return a + nb;
}
inline SmallRat operator*(const SmallRat& a, const SmallRat& b) {
    if (a.num == 0 || b.num == 0) return SmallRat();
    SmallRat r;
    if (a.den == 1 && b.den == 1) {
        r.num = fit64((__int128)a.num * b.num);
        return r;
    }
    uint64_t an = a.num < 0 ? (uint64_t)(-a.num) : (uint64_t)a.num;
    uint64_t bn = b.num < 0 ? (uint64_t)(-b.num) : (uint64_t)b.num;
    int64_t g1 = (int64_t)gcd64(an, (uint64_t)b.den);
    int64_t g2 = (int64_t)gcd64(bn, (uint64_t)a.den);
    r.num = fit64((__int128)(a.num / g1) * (b.num / g2));
    r.den = fit64((__int128)(a.den / g2) * (b.den / g1));
    return r;
}
inline SmallRat operator/(const SmallRat& a, const SmallRat& b) {
    if (b.num == 0) throw std::runtime_error("SmallRat: division by zero");
    if (a.num == 0) return SmallRat();
    uint64_t an = a.num < 0 ? (uint64_t)(-a.num) : (uint64_t)a.num;
    uint64_t bn = b.num < 0 ? (uint64_t)(-b.num) : (uint64_t)b.num;
    int64_t g1 = (int64_t)gcd64(an, bn);
    int64_t g2 = (int64_t)gcd64((uint64_t)a.den, (uint64_t)b.den);
    SmallRat r;
    r.num = fit64((__int128)(a.num / g1) * (b.den / g2));
    r.den = fit64((__int128)(a.den / g2) * (b.num / g1));
    if (r.den < 0) {
        r.num = -r.num;
        r.den = -r.den;
    }
    return r;
}
inline SmallRat operator-(const SmallRat& a) {
    SmallRat r;
    r.num = -a.num;
    r.den = a.den;
    return r;
}
inline SmallRat& operator+=(SmallRat& a, const SmallRat& b) { return a = a + b; }
inline SmallRat& operator-=(SmallRat& a, const SmallRat& b) { return a = a - b; }
inline SmallRat& operator*=(SmallRat& a, const SmallRat& b) { return a = a * b; }
inline int cmp(const SmallRat& a, const SmallRat& b) {
    __int128 l = (__int128)a.num * b.den;
    __int128 r = (__int128)b.num * a.den;
    return l < r ? -1 : (l > r ? 1 : 0);
}
inline bool operator<(const SmallRat& a, const SmallRat& b) { return cmp(a, b) < 0; }
inline bool operator>(const SmallRat& a, const SmallRat& b) { return cmp(a, b) > 0; }
inline bool operator<=(const SmallRat& a, const SmallRat& b) { return cmp(a, b) <= 0; }
inline bool operator>=(const SmallRat& a, const SmallRat& b) { return cmp(a, b) >= 0; }
inline bool operator==(const SmallRat& a, const SmallRat& b) {
    return a.num == b.num && a.den == b.den;
}
inline bool operator!=(const SmallRat& a, const SmallRat& b) { return !(a == b); }
inline SmallRat abs(const SmallRat& a) { return a.num < 0 ? -a : a; }
inline int64_t rat_floor(const SmallRat& a) {
    int64_t q = a.num / a.den;
    if (a.num < 0 && a.num % a.den != 0) --q;
    return q;
}
inline int64_t rat_ceil(const SmallRat& a) {
    int64_t q = a.num / a.den;
    if (a.num > 0 && a.num % a.den != 0) ++q;
    return q;
}
inline Rat to_rat(const SmallRat& a) { return Rat(a.num) / Rat(a.den); }
inline Rat to_rat(const Rat& a) { return a; }
// make the arbitrary-precision overloads visible next to the SmallRat ones
using ::covernum::rat_ceil;
using ::covernum::rat_floor;

// Bounded-variable simplex over exact rationals on a persistent full tableau.
// Variables: structurals 0..n-1 with mutable integer bounds, surplus n..n+m-1
// in [0, inf). Constraints are written A x - s = d.
//
// The all-surplus basis (B = -I, tableau [-A | I], basic values -d) is dual
// feasible for a covering objective — every structural has reduced cost 1 —
// so the first solve and every warm restart go through the same dual
// simplex; there is no phase 1 and there are no artificial variables.
//
// T = B^-1 [A | -I] and rhs0 = B^-1 d do not depend on variable bounds, so
// branch and bound moves between nodes by adjusting bounds and
// re-optimizing from the current basis.
template <class R>
class Tableau {
  public:
    explicit Tableau(const CoveringProgram& p,
                     SolverClock::time_point deadline = SolverClock::time_point::max())
        : n_((int)p.cols.size()), m_((int)p.rows.size()), deadline_(deadline) {
        lo_.assign(n_, R(0));
        hi_.resize(n_);
        for (int j = 0; j < n_; ++j) hi_[j] = R(p.cols[j].ub);
        T_.assign(m_, std::vector<R>(n_ + m_, R(0)));
        rhs0_.resize(m_);
        basis_.resize(m_);
        state_.assign(n_ + m_, AtLower);
        for (int i = 0; i < m_; ++i) {
            for (const auto& t : p.rows[i].terms) T_[i][t.col] = R(-t.coeff);
            T_[i][n_ + i] = R(1);
            rhs0_[i] = R(-p.rows[i].demand);
            basis_[i] = n_ + i;
            state_[n_ + i] = Basic;
        }
        beta_ = rhs0_;  // all structurals nonbasic at zero
        z_.assign(n_ + m_, R(0));
    }

    // First solve: dual repair from the all-surplus basis. The caller has
    // already established feasibility (x = ub meets every row).
    void solve_primal() {
        rebuild_z();
        if (!solve_dual())
            throw std::runtime_error("simplex: dual repair failed on a feasible program");
    }

    // Restores primal feasibility after bound changes while keeping reduced
    // costs dual-feasible. Returns false when some row cannot be repaired,
    // i.e. the LP under the current bounds is infeasible.
    bool solve_dual() {
        int64_t stall = 0;
        while (true) {
            check_budget();
            int r = -1;
            R worst = 0;
            for (int i = 0; i < m_; ++i) {
                int w = basis_[i];
                R viol = 0;
                if (beta_[i] < lo_of(w))
                    viol = lo_of(w) - beta_[i];
                else if (has_upper(w) && beta_[i] > hi_of(w))
                    viol = beta_[i] - hi_of(w);
                if (viol > 0) {
                    bool take = (stall > kStallLimit)
                                    ? (r < 0 || basis_[i] < basis_[r])
                                    : (viol > worst);
                    if (r < 0 || take) {
                        worst = viol;
                        r = i;
                    }
                }
            }
            if (r < 0) {
                price_loop();  // nominally a no-op; keeps optimality invariant
                return true;
            }
            int w = basis_[r];
            bool need_raise = beta_[r] < lo_of(w);
            int enter = -1;
            R best_ratio = 0;
            for (int j = 0; j < n_ + m_; ++j) {
                if (state_[j] == Basic || fixed(j)) continue;
                const R& a = T_[r][j];
                if (a == 0) continue;
                bool ok = need_raise ? (state_[j] == AtLower ? a < 0 : a > 0)
                                     : (state_[j] == AtLower ? a > 0 : a < 0);
                if (!ok) continue;
                R ratio = abs(z_[j] / a);
                if (enter < 0 || ratio < best_ratio || (ratio == best_ratio && j < enter)) {
                    enter = j;
                    best_ratio = ratio;
                }
            }
            if (enter < 0) return false;
            R target = need_raise ? lo_of(w) : hi_of(w);
            stall = (beta_[r] == target) ? stall + 1 : 0;
            pivot(r, enter, target);
        }
    }

    void set_col_bounds(int j, int64_t lo, int64_t hi) {
        R old_val = (state_[j] == AtLower) ? lo_[j] : (state_[j] == AtUpper ? hi_[j] : R(0));
        lo_[j] = R(lo);
        hi_[j] = R(hi);
        if (state_[j] == Basic) return;
        R now = (state_[j] == AtLower) ? lo_[j] : hi_[j];
        R delta = now - old_val;
        if (delta != 0)
            for (int i = 0; i < m_; ++i)
                if (T_[i][j] != 0) beta_[i] -= T_[i][j] * delta;
    }

    R objective() const {
        R v = 0;
        for (int j = 0; j < n_; ++j) v += value_of(j);
        return v;
    }

    R value_of(int j) const {
        if (state_[j] == Basic) {
            for (int i = 0; i < m_; ++i)
                if (basis_[i] == j) return beta_[i];
            throw std::runtime_error("simplex: basic variable without row");
        }
        if (state_[j] == AtUpper) return hi_of(j);
        return lo_of(j);
    }

    std::vector<R> structurals() const {
        std::vector<R> x(n_);
        for (int j = 0; j < n_; ++j) x[j] = value_of(j);
        return x;
    }

    // Read off the surplus reduced costs; clipped at zero so the vector is
    // valid for dual_bound regardless of solver state.
    std::vector<Rat> duals() const {
        std::vector<Rat> y(m_);
        for (int i = 0; i < m_; ++i) y[i] = z_[n_ + i] > 0 ? to_rat(z_[n_ + i]) : Rat(0);
        return y;
    }

    // Reduced cost of a structural column and whether it sits nonbasic at
    // its lower/upper bound; used for reduced-cost fixing at nodes.
    bool nonbasic_at_lower(int j) const { return state_[j] == AtLower; }
    bool nonbasic_at_upper(int j) const { return state_[j] == AtUpper; }
    const R& reduced_cost(int j) const { return z_[j]; }
    int64_t pivot_count() const { return pivots_; }

  private:
    enum State : uint8_t { AtLower, AtUpper, Basic };
    static constexpr int64_t kStallLimit = 64;
    static constexpr int64_t kPivotCap = 4'000'000;

    int n_, m_;
    int64_t pivots_ = 0;
    SolverClock::time_point deadline_;
    std::vector<R> lo_, hi_;
    std::vector<std::vector<R>> T_;
    std::vector<R> rhs0_, beta_, z_;
    std::vector<int> basis_;
    std::vector<uint8_t> state_;

    bool fixed(int v) const { return v < n_ && lo_[v] == hi_[v] && state_[v] != Basic; }
    R lo_of(int v) const { return v < n_ ? lo_[v] : R(0); }
    R hi_of(int v) const { return v < n_ ? hi_[v] : R(0); }
    bool has_upper(int v) const { return v < n_; }

    R cost(int v) const { return v < n_ ? R(1) : R(0); }

    void check_budget() {
        if (++pivots_ > kPivotCap)
            throw std::runtime_error("simplex: pivot cap exceeded (suspected cycling bug)");
        if ((pivots_ & 0xFF) == 0 && SolverClock::now() > deadline_) throw SolveDeadline{};
    }

    void rebuild_z() {
        for (int j = 0; j < n_ + m_; ++j) z_[j] = cost(j);
        for (int i = 0; i < m_; ++i) {
            R cb = cost(basis_[i]);
            if (cb == 0) continue;
            for (int j = 0; j < n_ + m_; ++j)
                if (T_[i][j] != 0) z_[j] -= cb * T_[i][j];
        }
    }

    void price_loop() {
        int64_t stall = 0;
        while (true) {
            check_budget();
            int enter = -1;
            R best = 0;
            for (int j = 0; j < n_ + m_; ++j) {
                if (state_[j] == Basic || fixed(j)) continue;
                bool improving = (state_[j] == AtLower && z_[j] < 0) ||
                                 (state_[j] == AtUpper && z_[j] > 0);
                if (!improving) continue;
                if (stall > kStallLimit) {  // Bland: smallest eligible index
                    enter = j;
                    break;
                }
                R score = abs(z_[j]);
                if (enter < 0 || score > best) {
                    best = score;
                    enter = j;
                }
            }
            if (enter < 0) return;
            int dir = (state_[enter] == AtLower) ? 1 : -1;

            bool have = false, flip = false;
            R tmax = 0;
            int leave_row = -1;
            R leave_target = 0;
            if (has_upper(enter)) {
                tmax = hi_of(enter) - lo_of(enter);
                have = true;
                flip = true;
            }
            for (int i = 0; i < m_; ++i) {
                if (T_[i][enter] == 0) continue;
                R step = dir > 0 ? T_[i][enter] : -T_[i][enter];
                int w = basis_[i];
                R room, target;
                if (step > 0) {  // basic decreases toward its lower bound
                    R l = lo_of(w);
                    room = (beta_[i] - l) / step;
                    target = l;
                } else {  // basic increases toward its upper bound
                    if (!has_upper(w)) continue;
                    room = (hi_of(w) - beta_[i]) / (-step);
                    target = hi_of(w);
                }
                bool take = false;
                if (!have || room < tmax)
                    take = true;
                else if (room == tmax && flip)
                    take = true;  // prefer a pivot over a flip on ties
                else if (room == tmax && !flip && leave_row >= 0 && basis_[i] < basis_[leave_row])
                    take = true;
                if (take) {
                    have = true;
                    flip = false;
                    tmax = room;
                    leave_row = i;
                    leave_target = target;
                }
            }
            if (!have) throw std::runtime_error("simplex: unbounded direction");
            stall = (tmax == 0) ? stall + 1 : 0;
            if (flip) {
                R delta = R(dir) * tmax;
                for (int i = 0; i < m_; ++i)
                    if (T_[i][enter] != 0) beta_[i] -= T_[i][enter] * delta;
                state_[enter] = (state_[enter] == AtLower) ? AtUpper : AtLower;
            } else {
                pivot(leave_row, enter, leave_target);
            }
        }
    }

    // Pivot entering v into row r; the leaving variable settles exactly at
    // leave_target (one of its bounds, or 0 for an artificial).
    void pivot(int r, int v, const R& leave_target) {
        const R piv = T_[r][v];
        if (piv == 0) throw std::runtime_error("simplex: zero pivot");
        int w = basis_[r];

        R xv = (state_[v] == AtUpper) ? hi_of(v) : lo_of(v);
        R delta = (beta_[r] - leave_target) / piv;
        if (delta != 0)
            for (int i = 0; i < m_; ++i) {
                if (i == r || T_[i][v] == 0) continue;
                beta_[i] -= T_[i][v] * delta;
            }
        beta_[r] = xv + delta;

        state_[w] = (leave_target == lo_of(w)) ? AtLower : AtUpper;
        basis_[r] = v;
        state_[v] = Basic;

        R inv_piv = R(1) / piv;
        auto& row = T_[r];
        for (auto& val : row) val *= inv_piv;
        rhs0_[r] *= inv_piv;
        for (int i = 0; i < m_; ++i) {
            if (i == r) continue;
            R f = T_[i][v];
            if (f == 0) continue;
            auto& ri = T_[i];
            for (int j = 0; j < n_ + m_; ++j)
                if (row[j] != 0) ri[j] -= f * row[j];
            rhs0_[i] -= f * rhs0_[r];
        }
        R fz = z_[v];
        if (fz != 0)
            for (int j = 0; j < n_ + m_; ++j)
                if (row[j] != 0) z_[j] -= fz * row[j];
    }
};

}  // namespace

namespace {

template <class R>
LpResult lp_relax_impl(const CoveringProgram& p) {
    LpResult res;
    Tableau<R> t(p);
    t.solve_primal();
    res.value = to_rat(t.objective());
    std::vector<R> x = t.structurals();
    res.x.resize(x.size());
    for (size_t j = 0; j < x.size(); ++j) res.x[j] = to_rat(x[j]);
    res.dual = t.duals();
    return res;
}

}  // namespace

LpResult lp_relax(const CoveringProgram& p) {
    p.validate();
    LpResult res;
    // completeness: x = ub is the maximal coverage point
    for (const auto& r : p.rows) {
        Int cap = 0;
        for (const auto& t : r.terms) cap += Int(t.coeff) * p.cols[t.col].ub;
        if (cap < r.demand) {
            res.feasible = false;
            res.dual.assign(p.rows.size(), Rat(0));
            res.dual[&r - p.rows.data()] = 1;
            return res;
        }
    }
    if (p.rows.empty() || p.cols.empty()) {
        res.value = 0;
        res.x.assign(p.cols.size(), Rat(0));
        res.dual.assign(p.rows.size(), Rat(0));
        return res;
    }
    try {
        res = lp_relax_impl<SmallRat>(p);
    } catch (const RatOverflow&) {
        res = lp_relax_impl<Rat>(p);
    }
    // strong duality as an internal invariant: a violation is a simplex bug
    if (dual_bound(p, res.dual) != res.value)
        throw std::runtime_error("lp_relax: primal/dual value mismatch");
    return res;
}

int64_t SolveResult::optimum() const {
    if (status != Status::optimal)
        throw std::runtime_error("SolveResult: optimum requested but status is not optimal");
    return upper;
}

namespace {

struct Preprocessed {
    CoveringProgram p;
    std::vector<std::vector<int>> col_groups;  // reduced col -> original cols
};

// Duplicate rows keep the maximal demand; columns with identical row support
// and coefficients merge with summed upper bounds.
Preprocessed preprocess(const CoveringProgram& in) {
    Preprocessed out;
    out.p.name = in.name;

    std::map<std::vector<std::pair<int32_t, int64_t>>, size_t> row_of;
    for (const auto& r : in.rows) {
        if (r.demand == 0) continue;
        std::vector<std::pair<int32_t, int64_t>> key;
        for (const auto& t : r.terms) key.emplace_back(t.col, t.coeff);
        std::sort(key.begin(), key.end());
        auto it = row_of.find(key);
        if (it != row_of.end()) {
            auto& kept = out.p.rows[it->second];
            kept.demand = std::max(kept.demand, r.demand);
        } else {
            row_of.emplace(key, out.p.rows.size());
            CoveringProgram::Row nr;
            nr.label = r.label;
            nr.demand = r.demand;
            for (auto& [c, v] : key) nr.terms.push_back({c, v});
            out.p.rows.push_back(std::move(nr));
        }
    }

    std::map<std::vector<std::pair<int32_t, int64_t>>, int> col_of;
    std::vector<std::vector<std::pair<int32_t, int64_t>>> signature(in.cols.size());
    for (size_t i = 0; i < out.p.rows.size(); ++i)
        for (const auto& t : out.p.rows[i].terms)
            signature[t.col].emplace_back((int32_t)i, t.coeff);
    std::vector<int> col_map(in.cols.size(), -1);
    for (size_t j = 0; j < in.cols.size(); ++j) {
        auto it = col_of.find(signature[j]);
        if (it != col_of.end() && in.cols[j].ub > 0) {
            col_map[j] = it->second;
            out.p.cols[it->second].ub += in.cols[j].ub;
            out.col_groups[it->second].push_back((int)j);
        } else {
            col_map[j] = (int)out.p.cols.size();
            if (in.cols[j].ub > 0) col_of.emplace(signature[j], col_map[j]);
            out.p.cols.push_back({in.cols[j].label, in.cols[j].ub});
            out.col_groups.push_back({(int)j});
        }
    }
    for (auto& r : out.p.rows) {
        for (auto& t : r.terms) t.col = col_map[t.col];
        // columns merged within one row leave duplicate terms; signature
        // equality guarantees equal coefficients, so keep a single copy
        std::sort(r.terms.begin(), r.terms.end(),
                  [](const auto& a, const auto& b) { return a.col < b.col; });
        size_t w = 0;
        for (size_t k = 0; k < r.terms.size(); ++k) {
            if (w > 0 && r.terms[w - 1].col == r.terms[k].col) {
                if (r.terms[w - 1].coeff != r.terms[k].coeff)
                    throw std::runtime_error("preprocess: unequal coefficients after merge");
                continue;
            }
            r.terms[w++] = r.terms[k];
        }
        r.terms.resize(w);
    }
    return out;
}

struct Node {
    std::vector<std::tuple<int, int64_t, int64_t>> changes;  // (col, lo, hi) from root
    Rat estimate;  // LP value of the parent: a valid lower estimate here
    int64_t id = 0;
    int depth = 0;
};

struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
        if (a.estimate != b.estimate) return a.estimate > b.estimate;
        return a.id > b.id;
    }
};

// Capacity pruning and forced raises to a fixpoint. Mutates lo; returns
// false when some row cannot be met under the hi bounds.
template <class TI>
bool propagate_bounds(const CoveringProgram& p, std::vector<int64_t>& lo,
                      const std::vector<int64_t>& hi) {
    const int m = (int)p.rows.size();
    for (bool changed = true; changed;) {
        changed = false;
        for (int i = 0; i < m; ++i) {
            TI cap = 0;
            for (const auto& t : p.rows[i].terms) cap += TI(t.coeff) * hi[t.col];
            if (cap < p.rows[i].demand) return false;
            for (const auto& t : p.rows[i].terms) {
                TI others = cap - TI(t.coeff) * hi[t.col];
                if (others >= p.rows[i].demand) continue;
                TI needed = (TI(p.rows[i].demand) - others + t.coeff - 1) / t.coeff;
                int64_t forced = (int64_t)needed;
                if (forced > hi[t.col]) return false;
                if (forced > lo[t.col]) {
                    lo[t.col] = forced;
                    changed = true;
                }
            }
        }
    }
    return true;
}

// Column dominance on the pure binary covering subcase (every upper bound,
// demand, and coefficient equal to 1): a free column whose active rows all
// lie inside another free column's active rows is never needed — any cover
// using it can swap to the dominator at no extra cost — so it is pinned at
// its lower bound. Supports with equal row sets keep the lowest column
// index. Mutates hi; returns true when anything was pinned. Derived only
// from (lo, hi), so children of the node recompute the same pins.
bool dominance_fix(const CoveringProgram& p, const std::vector<int64_t>& lo,
                   std::vector<int64_t>& hi) {
    const int n = (int)p.cols.size();
    const int m = (int)p.rows.size();
    // active rows: demand 1 not yet met by a pinned pick
    std::vector<char> row_active(m, 0);
    for (int i = 0; i < m; ++i) {
        bool met = false;
        for (const auto& t : p.rows[i].terms)
            if (lo[t.col] >= 1) met = true;
        row_active[i] = !met;
    }
    std::vector<std::vector<int>> col_rows(n);  // active rows per free column
    std::vector<int> first_row(n, -1);
    for (int i = 0; i < m; ++i) {
        if (!row_active[i]) continue;
        for (const auto& t : p.rows[i].terms) {
            if (hi[t.col] <= lo[t.col]) continue;
            col_rows[t.col].push_back(i);
            if (first_row[t.col] < 0) first_row[t.col] = i;
        }
    }
    auto subset = [](const std::vector<int>& a, const std::vector<int>& b) {
        size_t ia = 0, ib = 0;
        while (ia < a.size() && ib < b.size()) {
            if (a[ia] == b[ib]) ++ia, ++ib;
            else if (a[ia] > b[ib]) ++ib;
            else return false;
        }
        return ia == a.size();
    };
    bool fixed_any = false;
    for (int c = 0; c < n; ++c) {
        if (hi[c] <= lo[c]) continue;
        if (col_rows[c].empty()) {  // covers nothing still open
            hi[c] = lo[c];
            fixed_any = true;
            continue;
        }
        for (const auto& t : p.rows[first_row[c]].terms) {
            int d = t.col;
            if (d == c || hi[d] <= lo[d]) continue;
            if (col_rows[d].size() < col_rows[c].size()) continue;
            if (col_rows[d].size() == col_rows[c].size() && d > c) continue;
            if (!subset(col_rows[c], col_rows[d])) continue;
            hi[c] = lo[c];
            fixed_any = true;
            break;
        }
    }
    return fixed_any;
}

// Greedy rounding: floor the LP point, then add units to the column
// covering the most outstanding demand (ties to the lowest label).
template <class TI, class R>
std::optional<std::vector<int64_t>> greedy_round(
    const CoveringProgram& p,
    const std::vector<std::vector<std::pair<int, int64_t>>>& col_terms,
    const std::vector<R>& xlp, const std::vector<int64_t>& lo,
    const std::vector<int64_t>& hi) {
    const int n = (int)p.cols.size();
    const int m = (int)p.rows.size();
    std::vector<int64_t> x(n);
    for (int j = 0; j < n; ++j)
        x[j] = std::clamp<int64_t>((int64_t)rat_floor(xlp[j]), lo[j], hi[j]);
    std::vector<TI> need(m);
    for (int i = 0; i < m; ++i) {
        TI got = 0;
        for (const auto& t : p.rows[i].terms) got += TI(t.coeff) * x[t.col];
        need[i] = TI(p.rows[i].demand) - got;
    }
    int64_t open = 0;
    for (int i = 0; i < m; ++i)
        if (need[i] > 0) ++open;
    while (open > 0) {
        int pick = -1;
        TI best_gain = 0;
        for (int j = 0; j < n; ++j) {
            if (x[j] >= hi[j]) continue;
            TI gain = 0;
            for (auto& [i, c] : col_terms[j])
                if (need[i] > 0) gain += std::min(need[i], TI(c));
            if (gain > best_gain ||
                (gain == best_gain && gain > 0 && pick >= 0 &&
                 p.cols[j].label < p.cols[pick].label)) {
                best_gain = gain;
                pick = j;
            }
        }
        if (pick < 0) return std::nullopt;
        ++x[pick];
        for (auto& [i, c] : col_terms[pick]) {
            if (need[i] > 0 && need[i] - c <= 0) --open;
            need[i] -= c;
        }
    }
    return x;
}

template <class R>
SolveResult solve_nodes(const CoveringProgram& input, const Preprocessed& pre,
                        const SolveOptions& opt, SolverClock::time_point t0) {
    auto elapsed = [&] {
        return std::chrono::duration<double>(SolverClock::now() - t0).count();
    };
    auto deadline =
        t0 + std::chrono::duration_cast<SolverClock::duration>(
                 std::chrono::duration<double>(opt.time_budget_seconds));

    SolveResult res;
    auto log = [&](int64_t node, const std::string& ev, const std::string& val) {
        res.log.push_back({node, ev, val});
    };

    const CoveringProgram& p = pre.p;
    const int n = (int)p.cols.size();
    const int m = (int)p.rows.size();

    auto expand = [&](const std::vector<int64_t>& xred) {
        std::vector<int64_t> x(input.cols.size(), 0);
        for (int j = 0; j < n; ++j) {
            int64_t v = xred[j];
            for (int orig : pre.col_groups[j]) {
                int64_t take = std::min<int64_t>(v, input.cols[orig].ub);
                x[orig] = take;
                v -= take;
            }
        }
        return x;
    };

    if (m == 0) {
        res.status = SolveResult::Status::optimal;
        res.lower = res.upper = 0;
        res.solution.assign(input.cols.size(), 0);
        res.root_lp = 0;
        res.root_dual.assign(input.rows.size(), Rat(0));
        log(0, "done", "0");
        return res;
    }

    // per-column term lists for greedy and propagation
    std::vector<std::vector<std::pair<int, int64_t>>> col_terms(n);
    for (int i = 0; i < m; ++i)
        for (const auto& t : p.rows[i].terms) col_terms[t.col].emplace_back(i, t.coeff);

    // arithmetic gates: run propagation/greedy on int64 when every quantity
    // provably fits; the binary covering shape enables dominance fixing
    Int grand = 0;
    for (int i = 0; i < m; ++i) {
        for (const auto& t : p.rows[i].terms) grand += Int(t.coeff) * p.cols[t.col].ub;
        grand += p.rows[i].demand;
    }
    for (int j = 0; j < n; ++j) grand += p.cols[j].ub;
    const bool small_arith = grand < Int(int64_t(1) << 62);
    bool binary_cover = true;
    for (int j = 0; j < n && binary_cover; ++j)
        if (p.cols[j].ub != 1) binary_cover = false;
    for (int i = 0; i < m && binary_cover; ++i) {
        if (p.rows[i].demand != 1) binary_cover = false;
        for (const auto& t : p.rows[i].terms)
            if (t.coeff != 1) binary_cover = false;
    }

    Tableau<R> tab(p, deadline);
    try {
        tab.solve_primal();
    } catch (const SolveDeadline&) {
        res.status = SolveResult::Status::bounds;
        res.lower = 0;
        res.upper = -1;
        log(0, "budget", "0");
        return res;
    }
    res.root_lp = to_rat(tab.objective());
    {
        std::vector<Rat> yred = tab.duals();
        res.root_dual.assign(input.rows.size(), Rat(0));
        std::map<std::string, size_t> by_label;
        for (size_t i = 0; i < p.rows.size(); ++i) by_label[p.rows[i].label] = i;
        for (size_t i = 0; i < input.rows.size(); ++i) {
            auto it = by_label.find(input.rows[i].label);
            if (it != by_label.end()) res.root_dual[i] = yred[it->second];
        }
    }
    log(0, "root-lp", res.root_lp.str());

    int64_t best_upper = -1;
    std::vector<int64_t> best_x;

    auto try_incumbent = [&](const std::vector<int64_t>& x, int64_t node) {
        Int total = 0;
        for (auto v : x) total += v;
        int64_t val = (int64_t)total;
        if (best_upper >= 0 && val >= best_upper) return;
        if (!p.satisfies(x)) throw std::runtime_error("solve_integer: incumbent check failed");
        best_upper = val;
        best_x = x;
        log(node, "incumbent", std::to_string(val));
    };

    auto greedy_from = [&](const std::vector<R>& xlp, const std::vector<int64_t>& lo,
                           const std::vector<int64_t>& hi) {
        return small_arith ? greedy_round<int64_t, R>(p, col_terms, xlp, lo, hi)
                           : greedy_round<Int, R>(p, col_terms, xlp, lo, hi);
    };
    auto propagate = [&](std::vector<int64_t>& lo, const std::vector<int64_t>& hi) {
        return small_arith ? propagate_bounds<int64_t>(p, lo, hi)
                           : propagate_bounds<Int>(p, lo, hi);
    };

    std::vector<int64_t> root_lo(n, 0), root_hi(n);
    for (int j = 0; j < n; ++j) root_hi[j] = p.cols[j].ub;
    if (auto g = greedy_from(tab.structurals(), root_lo, root_hi)) try_incumbent(*g, 0);

    std::priority_queue<Node, std::vector<Node>, NodeOrder> pool;
    int64_t next_id = 1;
    pool.push({{}, res.root_lp, 0, 0});
    int64_t lower_logged = (int64_t)rat_ceil(res.root_lp);
    log(0, "lower", std::to_string(lower_logged));

    std::vector<int64_t> cur_lo = root_lo, cur_hi = root_hi;  // tableau's view
    std::vector<int64_t> lo(n), hi(n);

    bool budget_hit = false;
    auto out_of_budget = [&] {
        return elapsed() > opt.time_budget_seconds ||
               (opt.node_limit >= 0 && res.nodes >= opt.node_limit);
    };
    try {
        while (!pool.empty() && !budget_hit) {
            if (out_of_budget()) {
                budget_hit = true;
                break;
            }
            Node nd = pool.top();
            pool.pop();
            {
                // the pool minimum estimate is a proven global lower bound
                int64_t glv = (int64_t)rat_ceil(nd.estimate);
                if (best_upper >= 0) glv = std::min(glv, best_upper);
                if (glv > lower_logged) {
                    lower_logged = glv;
                    log(res.nodes, "lower", std::to_string(glv));
                }
            }
            if (best_upper >= 0 && rat_ceil(nd.estimate) >= best_upper) continue;

            Node cur = std::move(nd);
            while (true) {  // dive
                if (out_of_budget()) {
                    budget_hit = true;
                    break;
                }
                ++res.nodes;
                lo = root_lo;
                hi = root_hi;
                for (auto& [j, l, h] : cur.changes) {
                    lo[j] = std::max(lo[j], l);
                    hi[j] = std::min(hi[j], h);
                }
                // propagation and dominance to a joint fixpoint
                bool feasible_node = true;
                while (true) {
                    if (!propagate(lo, hi)) {
                        feasible_node = false;
                        break;
                    }
                    if (!binary_cover || !dominance_fix(p, lo, hi)) break;
                }
                if (!feasible_node) break;

                for (int j = 0; j < n; ++j)
                    if (lo[j] != cur_lo[j] || hi[j] != cur_hi[j]) {
                        tab.set_col_bounds(j, lo[j], hi[j]);
                        cur_lo[j] = lo[j];
                        cur_hi[j] = hi[j];
                    }
                if (!tab.solve_dual()) break;
                R lp = tab.objective();
                if (best_upper >= 0 && rat_ceil(lp) >= best_upper) break;

                std::vector<R> x = tab.structurals();
                int frac_j = -1;
                R best_score = -1;
                for (int j = 0; j < n; ++j) {
                    R f = x[j] - R(rat_floor(x[j]));
                    if (f == 0) continue;
                    R score = R(1, 2) - abs(f - R(1, 2));  // larger = more fractional
                    if (frac_j < 0 || score > best_score ||
                        (score == best_score && p.cols[j].label < p.cols[frac_j].label)) {
                        frac_j = j;
                        best_score = score;
                    }
                }
                if (frac_j < 0) {
                    std::vector<int64_t> xi(n);
                    for (int j = 0; j < n; ++j) xi[j] = (int64_t)rat_floor(x[j]);
                    try_incumbent(xi, res.nodes);
                    break;  // integral LP: node closed at its own optimum
                }
                if (auto g = greedy_from(x, lo, hi)) try_incumbent(*g, res.nodes);
                if (best_upper >= 0 && rat_ceil(lp) >= best_upper) break;

                // reduced-cost fixing: a nonbasic column whose unit reduced
                // cost already lifts this node's bound to the incumbent can
                // be pinned for the whole subtree (both children inherit)
                if (best_upper >= 0) {
                    for (int j = 0; j < n; ++j) {
                        if (hi[j] <= lo[j]) continue;
                        if (tab.nonbasic_at_lower(j)) {
                            const R& rc = tab.reduced_cost(j);
                            if (rc > 0 && rat_ceil(lp + rc) >= best_upper)
                                cur.changes.emplace_back(j, lo[j], lo[j]);
                        } else if (tab.nonbasic_at_upper(j)) {
                            const R& rc = tab.reduced_cost(j);
                            if (rc < 0 && rat_ceil(lp - rc) >= best_upper)
                                cur.changes.emplace_back(j, hi[j], hi[j]);
                        }
                    }
                }

                int64_t fl = (int64_t)rat_floor(x[frac_j]);
                Node down{cur.changes, to_rat(lp), next_id++, cur.depth + 1};
                down.changes.emplace_back(frac_j, INT64_MIN, fl);
                pool.push(std::move(down));
                cur.changes.emplace_back(frac_j, fl + 1, INT64_MAX);
                cur.estimate = to_rat(lp);
                cur.id = next_id++;
                ++cur.depth;
            }
        }
    } catch (const SolveDeadline&) {
        budget_hit = true;
    }

    if (budget_hit) {
        res.status = SolveResult::Status::bounds;
        res.lower = lower_logged < 0 ? 0 : lower_logged;
        res.upper = best_upper;
        if (best_upper >= 0) res.solution = expand(best_x);
        log(res.nodes, "budget", std::to_string(res.lower));
        return res;
    }
    res.status = SolveResult::Status::optimal;
    if (best_upper < 0) throw std::runtime_error("solve_integer: closed tree without incumbent");
    res.lower = res.upper = best_upper;
    res.solution = expand(best_x);
    if (!input.satisfies(res.solution))
        throw std::runtime_error("solve_integer: expanded solution infeasible");
    log(res.nodes, "done", std::to_string(best_upper));
    return res;
}

}  // namespace

SolveResult solve_integer(const CoveringProgram& input, const SolveOptions& opt) {
    input.validate();
    auto t0 = SolverClock::now();

    for (const auto& r : input.rows) {
        Int cap = 0;
        for (const auto& t : r.terms) cap += Int(t.coeff) * input.cols[t.col].ub;
        if (cap < r.demand) {
            SolveResult res;
            res.status = SolveResult::Status::infeasible;
            res.log.push_back({0, "infeasible", r.label});
            return res;
        }
    }

    Preprocessed pre = preprocess(input);
    try {
        return solve_nodes<SmallRat>(input, pre, opt, t0);
    } catch (const RatOverflow&) {
        // numbers outgrew the fast arithmetic: redo everything over
        // arbitrary-precision rationals on the remaining time budget
        return solve_nodes<Rat>(input, pre, opt, t0);
    }
}

std::optional<int64_t> brute_force_optimum(const CoveringProgram& p) {
    p.validate();
    int n = (int)p.cols.size();
    double space = 1;
    for (const auto& c : p.cols) space *= (double)(c.ub + 1);
    if (space > 2e7) throw std::runtime_error("brute_force_optimum: search space too large");
    std::vector<int64_t> x(n, 0);
    std::optional<int64_t> best;
    while (true) {
        if (p.satisfies(x)) {
            int64_t v = std::accumulate(x.begin(), x.end(), (int64_t)0);
            if (!best || v < *best) best = v;
        }
        int j = 0;
        while (j < n && x[j] == p.cols[j].ub) x[j++] = 0;
        if (j == n) break;
        ++x[j];
    }
    return best;
}

}  // namespace covernum
