#ifndef MCCK_CHECKERS_HPP
#define MCCK_CHECKERS_HPP

#include "execution.hpp"
#include "graph.hpp"
#include "hb.hpp"
#include "mincoh.hpp"
#include "relations.hpp"

#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace mcck {

enum class Status { Consistent, Inconsistent };
enum class Reason { None, PorfCycle, WeakAtomicity, WeakReadCoherence, MoCycle, SraStuck };

inline const char* to_string(Reason r) {
    switch (r) {
    case Reason::None: return "None";
    case Reason::PorfCycle: return "PorfCycle";
    case Reason::WeakAtomicity: return "WeakAtomicity";
    case Reason::WeakReadCoherence: return "WeakReadCoherence";
    case Reason::MoCycle: return "MoCycle";
    case Reason::SraStuck: return "SraStuck";
    }
    return "?";
}

struct Verdict {
    Status status = Status::Consistent;
    Reason reason = Reason::None;
    std::optional<std::int32_t> location; // set for MoCycle
    std::vector<std::uint64_t> events;    // witnessing event ids
    std::optional<PartialMo> partial_mo;
    std::optional<TotalMo> witness_mo;

    bool consistent() const { return status == Status::Consistent; }
};

namespace detail {

inline Verdict reject(Reason r, std::vector<std::uint64_t> ids = {}, std::optional<std::int32_t> loc = {}) {
    Verdict v;
    v.status = Status::Inconsistent;
    v.reason = r;
    v.events = std::move(ids);
    v.location = loc;
    return v;
}

inline std::vector<std::uint64_t> to_ids(const Execution& x, const std::vector<EventIdx>& v) {
    std::vector<std::uint64_t> out;
    out.reserve(v.size());
    for (auto e : v) out.push_back(x[e].id);
    return out;
}

inline std::optional<Verdict> porf_and_atomicity(const Execution& x) {
    if (auto c = porf_cycle(x))
        return reject(Reason::PorfCycle, to_ids(x, *c));
    if (auto p = weak_atomicity_violation(x))
        return reject(Reason::WeakAtomicity, {x[p->first].id, x[p->second].id});
    return std::nullopt;
}

// Insertion-ordered pair set.
class PairSet {
public:
    void insert(EventIdx a, EventIdx b) {
        if (seen_.insert((std::uint64_t(a) << 32) | b).second) pm_.pairs.emplace_back(a, b);
    }
    const PartialMo& get() const { return pm_; }
    PartialMo take() { return std::move(pm_); }

private:
    std::unordered_set<std::uint64_t> seen_;
    PartialMo pm_;
};

// HB when po ∪ rf is cyclic through relaxed accesses; nullopt if hb is cyclic.
inline std::optional<HbTable> hb_any(const Execution& x) {
    if (check_porf_acyclic(x)) return compute_hb(x);
    return compute_hb_via_sw(x);
}

// The cycle found in g reported as an MoCycle on the location of its first access.
inline Verdict mo_cycle(const Execution& x, const Digraph& g) {
    auto cyc = g.find_cycle();
    std::optional<std::int32_t> loc;
    for (auto e : cyc)
        if (x[e].loc >= 0) {
            loc = x[e].loc;
            break;
        }
    return reject(Reason::MoCycle, to_ids(x, cyc), loc);
}

} // namespace detail

inline Verdict check_wra(const Execution& x) {
    if (auto v = detail::porf_and_atomicity(x)) return *v;
    const HbTable hb = compute_hb(x);
    ObserverLists writes(x, ObserverLists::Kind::Writes);
    const std::uint32_t k = x.num_threads();
    for (std::uint32_t s = 0; s < k; ++s) {
        for (EventIdx e = x.thread_begin(s); e < x.thread_end(s); ++e) {
            if (!x[e].is_read()) continue;
            const EventIdx w = x.rf(e);
            for (std::uint32_t u = 0; u < k; ++u) {
                const std::uint32_t c = hb(e, u) - (u == s ? 1 : 0);
                auto a = last_write_before(writes, u, x[e].loc, c, s);
                if (a && *a != w && hb.hb(x, w, *a))
                    return detail::reject(Reason::WeakReadCoherence, {x[w].id, x[*a].id, x[e].id});
            }
        }
    }
    return Verdict{};
}

inline Verdict check_sra_normw(const Execution& x) {
    if (x.has_rmw())
        throw Error(ErrorKind::RmwPresent, "use the full SRA search for executions with RMWs");
    auto hbo = detail::hb_any(x);
    if (!hbo) return detail::reject(Reason::PorfCycle, detail::to_ids(x, *porf_cycle(x)));
    const HbTable& hb = *hbo;
    ObserverLists writes(x, ObserverLists::Kind::Writes);
    ObserverLists reads(x, ObserverLists::Kind::Reads);
    const std::uint32_t k = x.num_threads();
    detail::PairSet mo;
    for (std::uint32_t s = 0; s < k; ++s) {
        for (EventIdx e = x.thread_begin(s); e < x.thread_end(s); ++e) {
            if (!x[e].is_read()) continue;
            const EventIdx w = x.rf(e);
            const std::int32_t loc = x[e].loc;
            for (std::uint32_t u = 0; u < k; ++u) {
                const std::uint32_t c = hb(e, u) - (u == s ? 1 : 0);
                if (auto a = last_write_before(writes, u, loc, c, s); a && *a != w) mo.insert(*a, w);
                if (auto r = last_read_before(reads, u, loc, c, s); r && x.rf(*r) != w) mo.insert(x.rf(*r), w);
            }
        }
    }
    // hb ∪ m̄o through immediate po, one frontier edge per foreign thread, and m̄o.
    const std::size_t n = x.size();
    Digraph g(n);
    for (EventIdx e = 0; e < n; ++e) {
        if (x[e].idx > 1) g.add_edge(e - 1, e);
        for (std::uint32_t u = 0; u < k; ++u)
            if (u != x[e].tid && hb(e, u) > 0) g.add_edge(x.at(u, hb(e, u)), e);
    }
    for (auto [a, b] : mo.get().pairs) g.add_edge(a, b);
    if (!g.acyclic()) return detail::mo_cycle(x, g);
    Verdict v;
    v.partial_mo = mo.take();
    return v;
}

inline Verdict check_rc20(const Execution& x) {
    if (auto v = detail::porf_and_atomicity(x)) return *v;
    const HbTable hb = compute_hb(x);
    const RfChains ch = build_rf_chains(x);
    ObserverLists writes(x, ObserverLists::Kind::Writes);
    ObserverLists reads(x, ObserverLists::Kind::Reads);
    ObserverLists accesses(x, ObserverLists::Kind::Accesses);
    const std::uint32_t k = x.num_threads();
    const std::size_t n = x.size();
    detail::PairSet mo;
    Digraph g(n);
    auto consider = [&](EventIdx a, EventIdx w) {
        if (a == w) return;
        if (ch.tc[a] != ch.tc[w] || ch.pc[w] < ch.pc[a]) mo.insert(a, ch.tc[w]);
    };
    for (std::uint32_t s = 0; s < k; ++s) {
        for (EventIdx e = x.thread_begin(s); e < x.thread_end(s); ++e) {
            const std::int32_t loc = x[e].loc;
            if (loc < 0) continue;
            for (std::uint32_t u = 0; u < k; ++u) {
                const std::uint32_t c = hb(e, u) - (u == s ? 1 : 0);
                if (auto f = accesses.get(u, loc, c, s)) g.add_edge(*f, e);
                if (!x[e].is_read()) continue;
                const EventIdx w = x.rf(e);
                if (auto a = last_write_before(writes, u, loc, c, s)) consider(*a, w);
                if (auto r = last_read_before(reads, u, loc, c, s)) consider(x.rf(*r), w);
            }
            if (x[e].is_read()) g.add_edge(x.rf(e), e);
        }
    }
    for (auto [a, b] : mo.get().pairs) g.add_edge(a, b);
    if (!g.acyclic()) return detail::mo_cycle(x, g);
    Verdict v;
    v.partial_mo = mo.take();
    return v;
}

// RA entry point: accesses are strengthened to rel/acq/acqrel first.
inline Verdict check_ra(const Execution& x) { return check_rc20(strengthen(x)); }

// Modes are ignored (hb = po); linear in the number of events.
inline Verdict check_relaxed(const Execution& x) {
    if (auto v = detail::porf_and_atomicity(x)) return *v;
    const RfChains ch = build_rf_chains(x);
    const std::size_t n = x.size();
    detail::PairSet mo;
    Digraph g(n);
    std::vector<EventIdx> lw(x.num_locs(), kNoEvent), prev(x.num_locs(), kNoEvent);
    std::vector<std::int32_t> touched;
    for (std::uint32_t t = 0; t < x.num_threads(); ++t) {
        for (auto l : touched) lw[l] = prev[l] = kNoEvent;
        touched.clear();
        for (EventIdx e = x.thread_begin(t); e < x.thread_end(t); ++e) {
            const std::int32_t l = x[e].loc;
            if (l < 0) continue;
            if (prev[l] == kNoEvent) touched.push_back(l);
            else g.add_edge(prev[l], e);
            prev[l] = e;
            if (x[e].is_read()) {
                const EventIdx w = x.rf(e);
                g.add_edge(w, e);
                const EventIdx a = lw[l];
                if (a != kNoEvent && a != w && (ch.tc[a] != ch.tc[w] || ch.pc[w] < ch.pc[a]))
                    mo.insert(a, ch.tc[w]);
                lw[l] = x[e].op == Op::Rmw ? e : w;
            } else {
                lw[l] = e;
            }
        }
    }
    for (auto [a, b] : mo.get().pairs) g.add_edge(a, b);
    if (!g.acyclic()) return detail::mo_cycle(x, g);
    Verdict v;
    v.partial_mo = mo.take();
    return v;
}

inline constexpr std::size_t kDefaultSraNodeCap = 5'000'000;

// Breadth-first search over hb-downward-closed prefixes.
inline Verdict check_sra_full(const Execution& x, std::size_t node_cap = kDefaultSraNodeCap) {
    auto hbo = detail::hb_any(x);
    if (!hbo) return detail::reject(Reason::PorfCycle, detail::to_ids(x, *porf_cycle(x)));
    const HbTable& hb = *hbo;
    const std::uint32_t k = x.num_threads();
    const std::size_t n = x.size();

    // req[w]: prefix each thread must have reached before w may be written,
    // collecting every w' with a triplet (w, r, w') and (w', r) ∈ rf?;hb.
    std::vector<Clock> req(n);
    for (EventIdx e = 0; e < n; ++e)
        if (x[e].is_write()) req[e].assign(k, 0);
    auto need = [&](EventIdx w, EventIdx w2) {
        auto& slot = req[w][x[w2].tid];
        slot = std::max(slot, x[w2].idx);
    };
    for (EventIdx r = 0; r < n; ++r) {
        if (!x[r].is_read()) continue;
        const EventIdx w = x.rf(r);
        for (EventIdx a : x.events_at(x[r].loc)) {
            if (a == r || !hb.hb(x, a, r)) continue;
            if (x[a].is_write() && a != w) need(w, a);
            if (x[a].is_read() && x.rf(a) != w && x.rf(a) != r) need(w, x.rf(a));
        }
    }
    std::vector<std::vector<EventIdx>> rmws(x.num_locs());
    for (EventIdx e = 0; e < n; ++e)
        if (x[e].op == Op::Rmw) rmws[x[e].loc].push_back(e);

    using State = std::vector<std::uint32_t>;
    auto key = [](const State& s) {
        return std::string(reinterpret_cast<const char*>(s.data()), s.size() * sizeof(std::uint32_t));
    };
    struct Node {
        State s;
        std::size_t parent;
        EventIdx via;
    };
    std::vector<Node> nodes;
    std::unordered_map<std::string, std::size_t> seen;
    nodes.push_back({State(k, 0), 0, kNoEvent});
    seen.emplace(key(nodes[0].s), 0);

    auto done = [&](const State& s, EventIdx a) { return s[x[a].tid] >= x[a].idx; };
    auto executable = [&](const State& s, EventIdx e) {
        for (std::uint32_t u = 0; u < k; ++u)
            if (u != x[e].tid && hb(e, u) > s[u]) return false;
        if (!x[e].is_write()) return true;
        for (std::uint32_t u = 0; u < k; ++u)
            if (req[e][u] > s[u]) return false;
        for (EventIdx m : rmws[x[e].loc]) {
            const EventIdx w2 = x.rf(m);
            if (m != e && w2 != e && done(s, w2) && !done(s, m)) return false;
        }
        return true;
    };

    std::size_t best = 0, best_size = 0;
    std::optional<std::size_t> goal;
    for (std::size_t head = 0; head < nodes.size() && !goal; ++head) {
        std::size_t sz = 0;
        for (auto v : nodes[head].s) sz += v;
        if (sz == n) {
            goal = head;
            break;
        }
        if (sz > best_size) best = head, best_size = sz;
        for (std::uint32_t t = 0; t < k; ++t) {
            if (nodes[head].s[t] == x.thread_size(t)) continue;
            const EventIdx e = x.at(t, nodes[head].s[t] + 1);
            if (!executable(nodes[head].s, e)) continue;
            State next = nodes[head].s;
            ++next[t];
            auto [it, fresh] = seen.emplace(key(next), nodes.size());
            if (!fresh) continue;
            if (nodes.size() >= node_cap)
                throw Error(ErrorKind::StateLimit, "SRA search exceeded " + std::to_string(node_cap) + " nodes");
            nodes.push_back({std::move(next), head, e});
        }
    }
    if (!goal) {
        std::vector<std::uint64_t> frontier;
        for (std::uint32_t t = 0; t < k; ++t)
            if (nodes[best].s[t] < x.thread_size(t)) frontier.push_back(x[x.at(t, nodes[best].s[t] + 1)].id);
        return detail::reject(Reason::SraStuck, frontier);
    }
    std::vector<EventIdx> path;
    for (std::size_t v = *goal; v != 0; v = nodes[v].parent) path.push_back(nodes[v].via);
    std::reverse(path.begin(), path.end());
    TotalMo mo;
    mo.per_loc.resize(x.num_locs());
    for (EventIdx e : path)
        if (x[e].is_write()) mo.per_loc[x[e].loc].push_back(e);
    Verdict v;
    v.witness_mo = std::move(mo);
    return v;
}

namespace detail {

// Phase 2 and 3 of the completion on explicit relations.
inline TotalMo complete_chains(const Execution& x, const BaseRelations& b, const PartialMo& pm) {
    const std::size_t n = x.size();
    TotalMo out;
    out.per_loc.resize(x.num_locs());
    for (std::uint32_t l = 0; l < x.num_locs(); ++l) {
        const auto& evs = x.events_at(std::int32_t(l));
        Digraph g(n);
        for (EventIdx a : evs)
            for (EventIdx c : evs)
                if (b.rf.get(a, c) || b.hb.get(a, c)) g.add_edge(a, c);
        Digraph rfmo(n);
        for (auto [a, c] : pm.pairs)
            if (x[a].loc == std::int32_t(l)) {
                g.add_edge(a, c);
                rfmo.add_edge(a, c);
            }
        struct Chain {
            EventIdx top, bottom;
        };
        std::vector<Chain> chains;
        for (EventIdx a : evs) {
            if (x[a].op != Op::Write) continue;
            EventIdx bot = a;
            while (x.rmw_reader(bot) != kNoEvent) {
                rfmo.add_edge(bot, x.rmw_reader(bot));
                bot = x.rmw_reader(bot);
            }
            chains.push_back({a, bot});
        }
        std::sort(chains.begin(), chains.end(), [&](const Chain& p, const Chain& q) { return x[p.top].id < x[q.top].id; });
        for (std::size_t i = 0; i < chains.size(); ++i)
            for (std::size_t j = i + 1; j < chains.size(); ++j) {
                const Chain& c1 = chains[i];
                const Chain& c2 = chains[j];
                if (!g.reaches(c2.top, c1.bottom)) {
                    g.add_edge(c1.bottom, c2.top);
                    rfmo.add_edge(c1.bottom, c2.top);
                } else if (!g.reaches(c1.top, c2.bottom)) {
                    g.add_edge(c2.bottom, c1.top);
                    rfmo.add_edge(c2.bottom, c1.top);
                }
            }
        auto order = rfmo.topo_order();
        if (!order)
            throw Error(ErrorKind::NotMinimallyCoherent, "completion produced a cycle");
        for (auto e : *order)
            if (x[e].is_write() && x[e].loc == std::int32_t(l)) out.per_loc[l].push_back(e);
    }
    return out;
}

} // namespace detail

// Extends a minimally coherent partial mo to a total RC20 witness.
inline TotalMo complete_witness_rc20(const Execution& x, const PartialMo& pm) {
    BaseRelations b = derive_base(x);
    if (auto c = rc20_minimal_coherence(x, b, pm))
        throw Error(ErrorKind::NotMinimallyCoherent, "condition " + std::to_string(*c) + " fails");
    return detail::complete_chains(x, b, pm);
}

// Same with hb = po.
inline TotalMo complete_witness_relaxed(const Execution& x, const PartialMo& pm) {
    BaseRelations b = derive_base(x, true);
    if (auto c = rc20_minimal_coherence(x, b, pm))
        throw Error(ErrorKind::NotMinimallyCoherent, "condition " + std::to_string(*c) + " fails");
    return detail::complete_chains(x, b, pm);
}

// Any linear extension of hb ∪ m̄o, projected per location.
inline TotalMo complete_witness_sra(const Execution& x, const PartialMo& pm) {
    BaseRelations b = derive_base(x);
    if (auto c = sra_minimal_coherence(x, b, pm))
        throw Error(ErrorKind::NotMinimallyCoherent, "condition " + std::to_string(*c) + " fails");
    Relation r = b.hb | partial_mo_relation(x, pm);
    auto order = r.to_graph().topo_order();
    if (!order)
        throw Error(ErrorKind::NotMinimallyCoherent, "hb ∪ m̄o is cyclic");
    TotalMo out;
    out.per_loc.resize(x.num_locs());
    for (auto e : *order)
        if (x[e].is_write()) out.per_loc[x[e].loc].push_back(e);
    return out;
}

} // namespace mcck

#endif
