#include "covernum/cover.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <stdexcept>

namespace covernum {

namespace {

int sub_of(const std::vector<SubgroupClass>& subs, const std::string& label, const char* what) {
    for (size_t j = 0; j < subs.size(); ++j)
        if (subs[j].id == label) return (int)j;
    throw std::runtime_error(std::string(what) + ": unknown subgroup class '" + label + "'");
}

int cls_of(const ClassData& cd, const std::string& label, const char* what) {
    int k = cd.index_of(label);
    if (k < 0)
        throw std::runtime_error(std::string(what) + ": unknown conjugacy class '" + label + "'");
    return k;
}

}  // namespace

Cover union_cover(const std::vector<SubgroupClass>& subs,
                  const std::vector<std::string>& classes) {
    Cover c;
    std::set<std::string> seen;
    for (const auto& l : classes) {
        if (!seen.insert(l).second)
            throw std::runtime_error("union_cover: repeated class '" + l + "'");
        int j = sub_of(subs, l, "union_cover");
        for (int32_t t = 0; t < subs[j].class_size(); ++t) c.selection.push_back({l, t});
    }
    return c;
}

CoverCheck verify_cover(const GroupTable& g, const ClassData& cd,
                        const std::vector<SubgroupClass>& subs, const Cover& cover,
                        bool all_elements) {
    std::vector<char> hit(g.order(), 0);
    std::set<std::pair<std::string, int32_t>> seen;
    for (const auto& pk : cover.selection) {
        int j = sub_of(subs, pk.cls, "verify_cover");
        if (pk.conj < 0 || pk.conj >= subs[j].class_size())
            throw std::runtime_error("verify_cover: conjugate ID out of range for " + pk.cls);
        if (!seen.insert({pk.cls, pk.conj}).second)
            throw std::runtime_error("verify_cover: repeated selection entry");
        for (int32_t e : subs[j].conjugates[pk.conj]) hit[e] = 1;
    }
    for (const auto& K : cd.classes) {
        if (!all_elements && !K.principal) continue;
        for (int32_t e : K.members)
            if (!hit[e]) return {false, e, K.label};
    }
    return {true, -1, ""};
}

ClassBound class_lower_bound(const ClassData& cd, const std::vector<SubgroupClass>& subs,
                             const IncidenceMatrices& mats, double budget_seconds) {
    CoveringProgram p;
    p.name = (subs.empty() ? "classes" : subs[0].group_name + "-classes");
    for (const auto& s : subs) p.cols.push_back({s.id, s.class_size()});
    for (size_t k = 0; k < cd.classes.size(); ++k) {
        if (!cd.classes[k].principal) continue;
        CoveringProgram::Row r;
        r.label = cd.classes[k].label;
        r.demand = cd.classes[k].size;
        for (size_t j = 0; j < subs.size(); ++j)
            if (mats.b[k][j] > 0) r.terms.push_back({(int32_t)j, mats.b[k][j]});
        p.rows.push_back(std::move(r));
    }
    // refined rows: per-orbit element counts, only where the support is
    // narrow enough that the aggregated row is known to be exact
    for (const auto& f : mats.fused) {
        if (f.class_indices.size() < 2) continue;
        int support = 0;
        for (auto v : f.a)
            if (v > 0) ++support;
        if (support > 2) continue;
        CoveringProgram::Row r;
        r.label = f.label;
        r.demand = f.total_size;
        for (size_t j = 0; j < subs.size(); ++j)
            if (f.b_total[j] > 0) r.terms.push_back({(int32_t)j, f.b_total[j]});
        p.rows.push_back(std::move(r));
    }
    p.validate();
    SolveOptions so;
    so.time_budget_seconds = budget_seconds;
    auto res = solve_integer(p, so);
    if (res.status == SolveResult::Status::infeasible)
        throw std::runtime_error("class program infeasible: some principal class is uncovered");
    return {std::move(p), std::move(res)};
}

CoveringProgram residual_instance(const GroupTable& g, const ClassData& cd,
                                  const std::vector<SubgroupClass>& subs,
                                  const IncidenceMatrices& mats,
                                  const std::vector<std::string>& forced,
                                  const std::vector<std::string>& pool,
                                  const std::vector<std::string>& targets) {
    std::vector<int> fidx, pidx, tidx;
    std::set<std::string> seen;
    for (const auto& l : forced) fidx.push_back(sub_of(subs, l, "residual_instance"));
    for (const auto& l : pool) {
        if (!seen.insert(l).second)
            throw std::runtime_error("residual_instance: repeated pool class '" + l + "'");
        pidx.push_back(sub_of(subs, l, "residual_instance"));
    }
    for (const auto& l : targets) {
        int k = cls_of(cd, l, "residual_instance");
        if (!cd.classes[k].principal)
            throw std::runtime_error("residual_instance: target class " + l + " is not principal");
        tidx.push_back(k);
    }
    for (int k : tidx)
        for (int f : fidx)
            if (mats.a[k][f] != 0)
                throw std::runtime_error("residual_instance: forced class " + subs[f].id +
                                         " already covers target " + cd.classes[k].label);
    if (pidx.empty() && !tidx.empty())
        throw std::runtime_error("residual_instance: empty pool with targets remaining");

    CoveringProgram p;
    p.name = g.name + "-residual";
    for (int j : pidx)
        for (int32_t c = 0; c < subs[j].class_size(); ++c)
            p.cols.push_back({subs[j].id + ":" + std::to_string(c), 1});

    // distinct maximal cyclic subgroups generated by target elements,
    // ordered by their element sets so row numbering is deterministic
    std::map<std::vector<int32_t>, int32_t> rows;  // set -> least generator
    for (int k : tidx) {
        for (int32_t x : cd.classes[k].members) {
            std::vector<int32_t> cyc;
            int32_t e = x;
            while (e != 0) {
                cyc.push_back(e);
                e = g.mul(e, x);
            }
            cyc.push_back(0);
            std::sort(cyc.begin(), cyc.end());
            auto it = rows.find(cyc);
            if (it == rows.end()) {
                int64_t n = (int64_t)cyc.size();
                int32_t least_gen = -1;
                for (int32_t y : cyc)
                    if (g.element_order(y) == n) {
                        least_gen = y;
                        break;  // cyc is sorted ascending
                    }
                rows.emplace(std::move(cyc), least_gen);
            }
        }
    }
    for (const auto& [cyc, gen] : rows) {
        CoveringProgram::Row r;
        r.label = "c" + std::to_string(gen);
        r.demand = 1;
        int32_t col = 0;
        for (int j : pidx) {
            for (const auto& conj : subs[j].conjugates) {
                bool inside = true;
                for (int32_t y : cyc)
                    if (!std::binary_search(conj.begin(), conj.end(), y)) {
                        inside = false;
                        break;
                    }
                if (inside) r.terms.push_back({col, 1});
                ++col;
            }
        }
        p.rows.push_back(std::move(r));
    }
    p.validate();
    return p;
}

Replacement replacement_argument(const GroupTable& g, const ClassData& cd,
                                 const std::vector<SubgroupClass>& subs,
                                 const std::string& from_cls, const std::string& to_cls,
                                 const std::vector<std::string>& targets) {
    int fi = sub_of(subs, from_cls, "replacement_argument");
    int ti = sub_of(subs, to_cls, "replacement_argument");
    std::set<int64_t> primes;
    std::set<int32_t> tset;
    for (const auto& l : targets) {
        int k = cls_of(cd, l, "replacement_argument");
        tset.insert(k);
        int64_t o = cd.classes[k].element_order;
        int64_t q = 2;
        while (q * q <= o && o % q != 0) ++q;
        if (o % q != 0) q = o;
        while (o % q == 0) o /= q;
        if (o != 1)
            throw std::runtime_error("replacement_argument: target " + l +
                                     " is not of prime-power order");
        primes.insert(q);
    }
    if (primes.size() != 1)
        throw std::runtime_error("replacement_argument: targets mix element primes");
    int64_t p = *primes.begin();

    int64_t ppart = 1;
    for (int64_t o = subs[fi].order; o % p == 0; o /= p) ppart *= p;

    Replacement rep;
    rep.from_cls = from_cls;
    rep.to_cls = to_cls;
    rep.prime = p;
    std::set<std::vector<int32_t>> sylows_seen;
    std::vector<int64_t> per_to(subs[ti].class_size(), 0);
    int64_t cnt = -1;
    bool uniform = true, coverage_ok = true;

    for (const auto& H : subs[fi].conjugates) {
        std::vector<int32_t> S;  // p-elements of H; equals the Sylow iff unique
        for (int32_t e : H) {
            int64_t o = g.element_order(e);
            while (o % p == 0) o /= p;
            if (o == 1) S.push_back(e);
        }
        if ((int64_t)S.size() != ppart)
            throw std::runtime_error("replacement_argument: member of " + from_cls +
                                     " has no unique Sylow " + std::to_string(p) + "-subgroup");
        for (int32_t e : H)
            if (tset.count(cd.class_of[e]) && !std::binary_search(S.begin(), S.end(), e))
                coverage_ok = false;
        std::vector<int32_t> cand;
        for (int32_t c = 0; c < subs[ti].class_size(); ++c)
            if (std::includes(subs[ti].conjugates[c].begin(), subs[ti].conjugates[c].end(),
                              S.begin(), S.end()))
                cand.push_back(c);
        if (cand.empty())
            throw std::runtime_error("replacement_argument: member of " + from_cls +
                                     " has no candidate in " + to_cls);
        if (cnt < 0)
            cnt = (int64_t)cand.size();
        else if ((int64_t)cand.size() != cnt)
            uniform = false;
        if (sylows_seen.insert(S).second)
            for (int32_t c : cand) ++per_to[c];
        rep.candidates.push_back(std::move(cand));
    }
    rep.count_per_from = uniform ? cnt : -1;
    bool to_uniform = true;
    for (auto v : per_to)
        if (v != per_to[0]) to_uniform = false;
    rep.sylows_per_to = (to_uniform && !per_to.empty()) ? per_to[0] : -1;
    rep.valid = uniform && coverage_ok;
    return rep;
}

namespace {

// For unit-cost 0/1 covering, a column whose row support is contained in
// another kept column's support can be exchanged away from any solution.
// Returns the kept column indices; ties between equal supports keep the
// lower column index.
std::vector<int> dominant_columns(const CoveringProgram& p) {
    int n = (int)p.cols.size();
    std::vector<std::vector<int32_t>> support(n);
    for (size_t i = 0; i < p.rows.size(); ++i)
        for (const auto& t : p.rows[i].terms) support[t.col].push_back((int32_t)i);
    std::vector<int> kept;
    for (int c = 0; c < n; ++c) {
        bool dominated = false;
        for (int d = 0; d < n && !dominated; ++d) {
            if (d == c) continue;
            if (support[d].size() < support[c].size()) continue;
            if (support[d].size() == support[c].size() && d > c) continue;  // equal: keep lower
            dominated = std::includes(support[d].begin(), support[d].end(),
                                      support[c].begin(), support[c].end());
        }
        if (!dominated) kept.push_back(c);
    }
    return kept;
}

CoveringProgram restrict_columns(const CoveringProgram& p, const std::vector<int>& kept) {
    CoveringProgram q;
    q.name = p.name;
    std::vector<int32_t> remap(p.cols.size(), -1);
    for (size_t i = 0; i < kept.size(); ++i) {
        remap[kept[i]] = (int32_t)i;
        q.cols.push_back(p.cols[kept[i]]);
    }
    for (const auto& r : p.rows) {
        CoveringProgram::Row nr;
        nr.label = r.label;
        nr.demand = r.demand;
        for (const auto& t : r.terms)
            if (remap[t.col] >= 0) nr.terms.push_back({remap[t.col], t.coeff});
        q.rows.push_back(std::move(nr));
    }
    q.validate();
    return q;
}

}  // namespace

SigmaCertificate sigma_certificate(const GroupTable& g, const ClassData& cd,
                                   const std::vector<SubgroupClass>& subs,
                                   const IncidenceMatrices& mats, const SigmaOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    auto remaining = [&] {
        double spent =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return std::max(1.0, opt.budget_seconds - spent);
    };

    SigmaCertificate cert;
    cert.group = g.name;
    cert.group_order = g.order();

    auto forced = forced_columns(mats);
    bool forced_exact = true;  // every forced row pins its class at full size
    for (const auto& fc : forced) {
        const IncidenceMatrices::FusedRow* row = nullptr;
        for (const auto& f : mats.fused)
            if (f.label == fc.reason_class) row = &f;
        if (!row || row->a[fc.col] != 1) forced_exact = false;
        cert.notes.push_back("forced " + subs[fc.col].id + " x" +
                             std::to_string(subs[fc.col].class_size()) + " by class " +
                             fc.reason_class);
    }

    auto cb = class_lower_bound(cd, subs, mats, std::min(remaining(), 600.0));
    cert.class_program = cb.program;
    cert.class_result = cb.result;
    cert.lower = cb.result.lower;
    cert.lower_parts = {{"class program", cb.result.lower}};

    // whole-class solutions translate directly into union covers
    if (cb.result.status == SolveResult::Status::optimal) {
        bool whole = true;
        std::vector<std::string> chosen;
        for (size_t j = 0; j < subs.size(); ++j) {
            int64_t v = cb.result.solution[j];
            if (v == 0) continue;
            if (v != subs[j].class_size()) {
                whole = false;
                break;
            }
            chosen.push_back(subs[j].id);
        }
        if (whole) {
            Cover c = union_cover(subs, chosen);
            auto chk = verify_cover(g, cd, subs, c);
            if (chk.ok) {
                cert.upper = cb.result.optimum();
                cert.upper_cover = std::move(c);
            } else {
                cert.notes.push_back("whole-class solution failed verification at element " +
                                     std::to_string(chk.witness) + " (" + chk.witness_class +
                                     ")");
            }
        }
    }

    // Best union of whole classes by subset enumeration. The translation
    // above only fires when the ILP solution happens to be whole-class; the
    // optimum is often also attained by solutions that split a class across
    // interchangeable columns, in which case the certificate still closes if
    // some union of whole classes meets the class bound. A fused row with
    // a > 0 is covered entirely by that column's class, so coverage of every
    // principal fused row suffices.
    if ((cert.upper < 0 || cert.upper > cert.lower) && subs.size() <= 20) {
        std::vector<uint32_t> rowmask;
        for (const auto& fr : mats.fused) {
            uint32_t m = 0;
            for (size_t j = 0; j < subs.size(); ++j)
                if (fr.a[j] > 0) m |= (1u << j);
            rowmask.push_back(m);
        }
        int64_t best = -1;
        uint32_t best_set = 0;
        for (uint32_t s = 1; s < (1u << subs.size()); ++s) {
            bool covers = true;
            for (uint32_t m : rowmask)
                if (!(s & m)) {
                    covers = false;
                    break;
                }
            if (!covers) continue;
            int64_t cost = 0;
            for (size_t j = 0; j < subs.size(); ++j)
                if (s & (1u << j)) cost += subs[j].class_size();
            if (best < 0 || cost < best) {
                best = cost;
                best_set = s;
            }
        }
        if (best >= 0 && (cert.upper < 0 || best < cert.upper)) {
            std::vector<std::string> chosen;
            for (size_t j = 0; j < subs.size(); ++j)
                if (best_set & (1u << j)) chosen.push_back(subs[j].id);
            Cover c = union_cover(subs, chosen);
            auto chk = verify_cover(g, cd, subs, c);
            if (chk.ok) {
                std::string names;
                for (const auto& l : chosen) names += (names.empty() ? "" : "+") + l;
                cert.notes.push_back("best whole-class union: " + names + " = " +
                                     std::to_string(best));
                cert.upper = best;
                cert.upper_cover = std::move(c);
            } else {
                cert.notes.push_back("whole-class union failed verification at element " +
                                     std::to_string(chk.witness) + " (" + chk.witness_class +
                                     ")");
            }
        }
    }

    if (cert.upper < 0 || cert.upper > cert.lower) {
        // residual argument over the classes the forced selection misses
        std::vector<std::string> forced_labels;
        std::set<int> forced_set;
        int64_t forced_total = 0;
        for (const auto& fc : forced) {
            forced_labels.push_back(subs[fc.col].id);
            forced_set.insert(fc.col);
            forced_total += subs[fc.col].class_size();
        }
        std::vector<std::string> targets;
        for (size_t k = 0; k < cd.classes.size(); ++k) {
            if (!cd.classes[k].principal) continue;
            bool covered = false;
            for (const auto& fc : forced)
                if (mats.a[k][fc.col] != 0) covered = true;
            if (!covered) targets.push_back(cd.classes[k].label);
        }
        if (targets.empty()) {
            Cover c = union_cover(subs, forced_labels);
            auto chk = verify_cover(g, cd, subs, c);
            if (chk.ok && (cert.upper < 0 || forced_total < cert.upper)) {
                cert.upper = forced_total;
                cert.upper_cover = std::move(c);
            }
        } else {
            std::vector<std::string> pool;
            for (size_t j = 0; j < subs.size(); ++j) {
                if (forced_set.count((int)j)) continue;
                bool touches = false;
                for (const auto& t : targets)
                    if (mats.a[cd.index_of(t)][j] != 0) touches = true;
                if (touches) pool.push_back(subs[j].id);
            }
            auto raw = residual_instance(g, cd, subs, mats, forced_labels, pool, targets);
            auto kept = dominant_columns(raw);
            CoveringProgram prog;
            if ((int)kept.size() == (int)raw.cols.size()) {
                prog = std::move(raw);
            } else {
                std::map<std::string, int64_t> dropped;  // pool class -> columns removed
                std::vector<char> is_kept(raw.cols.size(), 0);
                for (int c : kept) is_kept[c] = 1;
                for (size_t c = 0; c < raw.cols.size(); ++c) {
                    if (is_kept[c]) continue;
                    const auto& lbl = raw.cols[c].label;
                    ++dropped[lbl.substr(0, lbl.rfind(':'))];
                }
                for (const auto& [cls, cnt] : dropped)
                    cert.notes.push_back("residual: dropped " + std::to_string(cnt) +
                                         " dominated columns of " + cls);
                prog = restrict_columns(raw, kept);
            }
            SolveOptions so;
            so.time_budget_seconds = remaining();
            auto rr = solve_integer(prog, so);
            cert.residual_program = prog;
            cert.residual_result = rr;

            if (forced_exact && rr.status != SolveResult::Status::infeasible) {
                int64_t composed = forced_total + rr.lower;
                if (composed > cert.lower) {
                    cert.lower = composed;
                    cert.lower_parts.clear();
                    for (const auto& fc : forced)
                        cert.lower_parts.push_back({"forced " + subs[fc.col].id + " (class " +
                                                        fc.reason_class + ")",
                                                    subs[fc.col].class_size()});
                    cert.lower_parts.push_back({"residual cover of " +
                                                    std::to_string(prog.rows.size()) +
                                                    " cyclic subgroups",
                                                rr.lower});
                }
            }
            if (rr.upper >= 0) {
                Cover c;
                for (const auto& l : forced_labels) {
                    int j = sub_of(subs, l, "sigma_certificate");
                    for (int32_t t = 0; t < subs[j].class_size(); ++t)
                        c.selection.push_back({l, t});
                }
                for (size_t j = 0; j < prog.cols.size(); ++j) {
                    if (rr.solution.empty() || rr.solution[j] == 0) continue;
                    auto& lbl = prog.cols[j].label;
                    size_t colon = lbl.rfind(':');
                    c.selection.push_back(
                        {lbl.substr(0, colon), (int32_t)std::stol(lbl.substr(colon + 1))});
                }
                auto chk = verify_cover(g, cd, subs, c);
                int64_t total = forced_total + rr.upper;
                if (chk.ok && (cert.upper < 0 || total < cert.upper)) {
                    cert.upper = total;
                    cert.upper_cover = std::move(c);
                } else if (!chk.ok) {
                    cert.notes.push_back("forced+residual selection failed verification");
                }
            }
        }
    }

    if (cert.upper >= 0 && cert.lower == cert.upper) cert.sigma = cert.upper;
    if (cert.upper >= 0 && cert.lower > cert.upper)
        throw std::runtime_error("sigma_certificate: lower bound exceeds verified cover");
    return cert;
}

}  // namespace covernum
