#ifndef MCCK_AXIOMS_HPP
#define MCCK_AXIOMS_HPP

#include "execution.hpp"
#include "relations.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mcck {

enum class Model { SC, SRA, RA, WRA, RC20, Relaxed };

enum class Axiom { WriteCoh, StrongWriteCoh, ReadCoh, WeakReadCoh, Atomicity, WeakAtomicity, PoRf, Sc };

inline const char* to_string(Model m) {
    switch (m) {
    case Model::SC: return "sc";
    case Model::SRA: return "sra";
    case Model::RA: return "ra";
    case Model::WRA: return "wra";
    case Model::RC20: return "rc20";
    case Model::Relaxed: return "relaxed";
    }
    return "?";
}

inline std::optional<Model> parse_model(std::string_view s) {
    for (Model m : {Model::SC, Model::SRA, Model::RA, Model::WRA, Model::RC20, Model::Relaxed})
        if (s == to_string(m)) return m;
    return std::nullopt;
}

inline const char* to_string(Axiom a) {
    switch (a) {
    case Axiom::WriteCoh: return "write-coherence";
    case Axiom::StrongWriteCoh: return "strong-write-coherence";
    case Axiom::ReadCoh: return "read-coherence";
    case Axiom::WeakReadCoh: return "weak-read-coherence";
    case Axiom::Atomicity: return "atomicity";
    case Axiom::WeakAtomicity: return "weak-atomicity";
    case Axiom::PoRf: return "po-rf";
    case Axiom::Sc: return "sc";
    }
    return "?";
}

inline std::vector<Axiom> axioms_of(Model m) {
    switch (m) {
    case Model::SC: return {Axiom::Sc};
    case Model::SRA: return {Axiom::StrongWriteCoh, Axiom::ReadCoh, Axiom::Atomicity};
    case Model::RA: return {Axiom::WriteCoh, Axiom::ReadCoh, Axiom::Atomicity};
    case Model::WRA: return {Axiom::WeakReadCoh, Axiom::WeakAtomicity, Axiom::PoRf};
    case Model::RC20:
    case Model::Relaxed: return {Axiom::WriteCoh, Axiom::ReadCoh, Axiom::Atomicity, Axiom::PoRf};
    }
    return {};
}

inline bool uses_mo(Model m) { return m != Model::WRA; }
inline bool relaxed_hb(Model m) { return m == Model::Relaxed; }

struct AxiomResult {
    Axiom axiom;
    bool holds = true;
    std::vector<std::uint64_t> witness; // event ids of a reflexive pair or a cycle
};

using AxiomReport = std::vector<AxiomResult>;

namespace detail {

inline std::vector<std::uint64_t> ids(const Execution& x, const std::vector<std::uint32_t>& v) {
    std::vector<std::uint64_t> out;
    for (auto e : v) out.push_back(x[e].id);
    return out;
}

// irr(a ; rest); on failure returns {p, q} with (p,q) ∈ a and (q,p) ∈ rest.
inline std::optional<std::vector<std::uint32_t>> irr_pair(const Relation& a, const Relation& rest) {
    for (std::size_t p = 0; p < a.size(); ++p)
        for (std::size_t q = 0; q < a.size(); ++q)
            if (a.get(p, q) && rest.get(q, p))
                return std::vector<std::uint32_t>{std::uint32_t(p), std::uint32_t(q)};
    return std::nullopt;
}

inline std::optional<std::vector<std::uint32_t>> cycle_of(const Relation& r) {
    auto c = r.to_graph().find_cycle();
    if (c.empty()) return std::nullopt;
    return c;
}

inline Relation immediate_po(const Execution& x) {
    Relation r(x.size());
    for (EventIdx e = 0; e < x.size(); ++e)
        if (x[e].idx > 1) r.set(e - 1, e);
    return r;
}

} // namespace detail

// Evaluates one axiom on explicit relations (mo and fr ignored by mo-free axioms).
inline AxiomResult eval_axiom(const Execution& x, const Relations& r, Axiom ax) {
    using namespace detail;
    AxiomResult res{ax, true, {}};
    std::optional<std::vector<std::uint32_t>> bad;
    switch (ax) {
    case Axiom::WriteCoh:
        bad = irr_pair(r.mo, r.rf.optional().compose(r.hb.optional()));
        break;
    case Axiom::StrongWriteCoh:
        bad = cycle_of(r.hb | r.mo);
        break;
    case Axiom::ReadCoh:
        bad = irr_pair(r.fr, r.rf.optional().compose(r.hb));
        break;
    case Axiom::WeakReadCoh: {
        Relation w(x.size());
        for (EventIdx e = 0; e < x.size(); ++e)
            if (x[e].is_write()) w.set(e, e);
        bad = irr_pair(r.hbloc, w.compose(r.hb).compose(r.rf.transpose()));
        break;
    }
    case Axiom::Atomicity:
        bad = irr_pair(r.fr, r.mo);
        break;
    case Axiom::WeakAtomicity:
        if (auto v = weak_atomicity_violation(x))
            bad = std::vector<std::uint32_t>{v->first, v->second};
        break;
    case Axiom::PoRf:
        bad = cycle_of(immediate_po(x) | r.rf);
        break;
    case Axiom::Sc:
        bad = cycle_of(r.po | r.rf | r.mo | r.fr);
        break;
    }
    if (bad) {
        res.holds = false;
        res.witness = ids(x, *bad);
    }
    return res;
}

inline AxiomResult eval_axiom(const Execution& x, const TotalMo& mo, Axiom ax, bool hb_is_po = false) {
    return eval_axiom(x, derive_relations(x, mo, hb_is_po), ax);
}

inline AxiomReport eval_model(const Execution& x, const TotalMo& mo, Model m) {
    Relations r = derive_relations(x, mo, relaxed_hb(m));
    AxiomReport rep;
    for (Axiom a : axioms_of(m)) rep.push_back(eval_axiom(x, r, a));
    return rep;
}

inline bool all_hold(const AxiomReport& r) {
    return std::all_of(r.begin(), r.end(), [](const AxiomResult& a) { return a.holds; });
}

struct OracleResult {
    bool consistent = false;
    std::optional<TotalMo> witness; // absent for WRA
};

inline constexpr double kDefaultOracleLimit = 1e7;

namespace detail {

// Same-location mo-free pieces of the axioms, kept across candidates.
struct OracleCtx {
    const Execution& x;
    Model model;
    BaseRelations base;
    Relation rf_inv, rf_opt, hb_opt, rf_hb, rf_opt_hb_opt, porf_imm;
};

inline bool candidate_ok(OracleCtx& c, const TotalMo& mo) {
    Relation m = mo_relation(c.x, mo);
    Relation fr = c.rf_inv.compose(m);
    for (EventIdx e = 0; e < c.x.size(); ++e) fr.reset(e, e);
    switch (c.model) {
    case Model::SC:
        return (c.base.po | c.base.rf | m | fr).acyclic();
    case Model::SRA:
        return (c.base.hb | m).acyclic() && !irr_pair(fr, c.rf_hb) && !irr_pair(fr, m);
    case Model::RA:
    case Model::RC20:
    case Model::Relaxed:
        return !irr_pair(m, c.rf_opt_hb_opt) && !irr_pair(fr, c.rf_hb) && !irr_pair(fr, m);
    case Model::WRA:
        break;
    }
    return true;
}

// Calls f on every total mo in the documented order until f returns true.
inline bool enumerate_mo(const Execution& x, const std::function<bool(const TotalMo&)>& f) {
    TotalMo mo;
    mo.per_loc.resize(x.num_locs());
    for (std::uint32_t l = 0; l < x.num_locs(); ++l) {
        for (EventIdx e : x.events_at(std::int32_t(l)))
            if (x[e].is_write()) mo.per_loc[l].push_back(e);
        std::sort(mo.per_loc[l].begin(), mo.per_loc[l].end(),
                  [&](EventIdx a, EventIdx b) { return x[a].id < x[b].id; });
    }
    const auto less = [&](EventIdx a, EventIdx b) { return x[a].id < x[b].id; };
    std::function<bool(std::size_t)> rec = [&](std::size_t l) -> bool {
        if (l == mo.per_loc.size())
            return f(mo);
        auto& seq = mo.per_loc[l];
        do {
            if (rec(l + 1)) return true;
        } while (std::next_permutation(seq.begin(), seq.end(), less));
        return false;
    };
    return rec(0);
}

inline double candidate_count(const Execution& x) {
    double total = 1;
    for (std::uint32_t l = 0; l < x.num_locs(); ++l) {
        std::size_t w = 0;
        for (EventIdx e : x.events_at(std::int32_t(l)))
            if (x[e].is_write()) ++w;
        for (std::size_t i = 2; i <= w; ++i) total *= double(i);
    }
    return total;
}

inline OracleCtx make_ctx(const Execution& x, Model m) {
    OracleCtx c{x, m, derive_base(x, relaxed_hb(m)), {}, {}, {}, {}, {}, {}};
    c.rf_inv = c.base.rf.transpose();
    c.rf_opt = c.base.rf.optional();
    c.hb_opt = c.base.hb.optional();
    c.rf_hb = c.rf_opt.compose(c.base.hb);
    c.rf_opt_hb_opt = c.rf_opt.compose(c.hb_opt);
    return c;
}

inline bool wra_holds(const Execution& x) {
    Relations r;
    static_cast<BaseRelations&>(r) = derive_base(x);
    for (Axiom a : axioms_of(Model::WRA))
        if (!eval_axiom(x, r, a).holds) return false;
    return true;
}

inline void guard(const Execution& x, double limit) {
    if (candidate_count(x) > limit)
        throw Error(ErrorKind::TooLarge, "mo candidate count exceeds the enumeration limit");
}

} // namespace detail

inline OracleResult oracle_consistent(const Execution& x, Model m, double limit = kDefaultOracleLimit) {
    OracleResult res;
    if (m == Model::WRA) {
        res.consistent = detail::wra_holds(x);
        return res;
    }
    // PO-RF is mo-independent; settle it once.
    if ((m == Model::RC20 || m == Model::Relaxed) && !check_porf_acyclic(x))
        return res;
    detail::guard(x, limit);
    auto ctx = detail::make_ctx(x, m);
    detail::enumerate_mo(x, [&](const TotalMo& mo) {
        if (!detail::candidate_ok(ctx, mo)) return false;
        res.consistent = true;
        res.witness = mo;
        return true;
    });
    return res;
}

// Every passing mo in enumeration order (empty for WRA).
inline std::vector<TotalMo> oracle_all_witnesses(const Execution& x, Model m, double limit = kDefaultOracleLimit) {
    std::vector<TotalMo> out;
    if (m == Model::WRA)
        return out;
    if ((m == Model::RC20 || m == Model::Relaxed) && !check_porf_acyclic(x))
        return out;
    detail::guard(x, limit);
    auto ctx = detail::make_ctx(x, m);
    detail::enumerate_mo(x, [&](const TotalMo& mo) {
        if (detail::candidate_ok(ctx, mo)) out.push_back(mo);
        return false;
    });
    return out;
}

} // namespace mcck

#endif
