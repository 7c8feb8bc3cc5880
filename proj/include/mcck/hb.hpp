#ifndef MCCK_HB_HPP
#define MCCK_HB_HPP

#include "execution.hpp"
#include "graph.hpp"

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace mcck {

using Clock = std::vector<std::uint32_t>;

inline void join(Clock& a, const Clock& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (b[i] > a[i]) a[i] = b[i];
}

// HB_e(t) = number of events of thread t that are hb?-before e.
class HbTable {
public:
    HbTable() = default;
    HbTable(std::size_t n, std::uint32_t k) : n_(n), k_(k), v_(n * k, 0) {}

    std::size_t size() const { return n_; }
    std::uint32_t threads() const { return k_; }

    std::uint32_t operator()(EventIdx e, std::uint32_t t) const { return v_[std::size_t(e) * k_ + t]; }
    std::uint32_t& at(EventIdx e, std::uint32_t t) { return v_[std::size_t(e) * k_ + t]; }

    Clock clock(EventIdx e) const {
        return Clock(v_.begin() + std::ptrdiff_t(e) * k_, v_.begin() + std::ptrdiff_t(e + 1) * k_);
    }
    void store(EventIdx e, const Clock& c) {
        std::copy(c.begin(), c.end(), v_.begin() + std::ptrdiff_t(e) * k_);
    }

    // (a, b) ∈ hb?
    bool hb_opt(const Execution& x, EventIdx a, EventIdx b) const {
        return (*this)(b, x[a].tid) >= x[a].idx;
    }
    // (a, b) ∈ hb
    bool hb(const Execution& x, EventIdx a, EventIdx b) const { return a != b && hb_opt(x, a, b); }

    bool operator==(const HbTable& o) const { return k_ == o.k_ && v_ == o.v_; }

private:
    std::size_t n_ = 0;
    std::uint32_t k_ = 0;
    std::vector<std::uint32_t> v_;
};

// Streaming computation over a topological order of po ∪ rf. Tracks per thread
// H (own clock), LRFH (clock of the last release fence) and SW (everything
// read so far, for later acquire fences); per write the clock it releases
// and per RMW the clocks released further up its rf-chain.
inline HbTable compute_hb_in_order(const Execution& x, const std::vector<EventIdx>& order) {
    const std::uint32_t k = x.num_threads();
    const std::size_t n = x.size();
    HbTable hb(n, k);
    std::vector<Clock> H(k, Clock(k, 0)), LRFH(k, Clock(k, 0)), SW(k, Clock(k, 0));
    std::vector<Clock> LRF(n), RMW_sw(n);
    Clock incoming(k);

    for (EventIdx e : order) {
        const Event& ev = x[e];
        const std::uint32_t t = ev.tid;
        Clock& h = H[t];
        h[t] = ev.idx;
        if (ev.is_read()) {
            const EventIdx w = x.rf(e);
            incoming = LRF[w];
            if (x[w].op == Op::Rmw)
                join(incoming, RMW_sw[w]);
            join(SW[t], incoming);
            if (is_acquire(ev.ord))
                join(h, incoming);
            if (ev.op == Op::Rmw)
                RMW_sw[e] = incoming;
        }
        if (ev.is_fence() && is_acquire(ev.ord))
            join(h, SW[t]);
        if (ev.is_fence() && is_release(ev.ord))
            LRFH[t] = h;
        if (ev.is_write())
            LRF[e] = is_release(ev.ord) ? h : LRFH[t];
        hb.store(e, h);
    }
    return hb;
}

// hb = (po ∪ rf)⁺ when every write is ⊒rel and every read ⊒acq.
inline HbTable compute_hb_strong(const Execution& x, const std::vector<EventIdx>& order) {
    const std::uint32_t k = x.num_threads();
    HbTable hb(x.size(), k);
    std::vector<Clock> H(k, Clock(k, 0));
    for (EventIdx e : order) {
        const Event& ev = x[e];
        Clock& h = H[ev.tid];
        h[ev.tid] = ev.idx;
        if (ev.is_read())
            join(h, hb.clock(x.rf(e)));
        hb.store(e, h);
    }
    return hb;
}

inline HbTable compute_hb(const Execution& x) {
    auto order = topological_order(x);
    if (!order) {
        auto cyc = porf_cycle(x);
        throw Error(ErrorKind::PorfCyclic, "po ∪ rf has a cycle", x[cyc->front()].id);
    }
    if (x.all_strong())
        return compute_hb_strong(x, *order);
    return compute_hb_in_order(x, *order);
}

// Builds sw edges explicitly and sorts po ∪ sw; works when po ∪ rf is cyclic
// through relaxed accesses. nullopt when hb itself is cyclic.
inline std::optional<HbTable> compute_hb_via_sw(const Execution& x) {
    const std::size_t n = x.size();
    const std::uint32_t k = x.num_threads();
    // Last release fence po-before or at each event, first acquire fence po-after.
    std::vector<EventIdx> last_rel_fence(n, kNoEvent), next_acq_fence(n, kNoEvent);
    for (std::uint32_t t = 0; t < k; ++t) {
        EventIdx cur = kNoEvent;
        for (EventIdx e = x.thread_begin(t); e < x.thread_end(t); ++e) {
            if (x[e].is_fence() && is_release(x[e].ord)) cur = e;
            last_rel_fence[e] = cur;
        }
        cur = kNoEvent;
        for (EventIdx e = x.thread_end(t); e-- > x.thread_begin(t);) {
            next_acq_fence[e] = cur;
            if (x[e].is_fence() && is_acquire(x[e].ord)) cur = e;
        }
    }
    std::vector<std::vector<EventIdx>> preds(n);
    Digraph g(n);
    for (EventIdx e = 0; e < n; ++e) {
        if (x[e].idx > 1)
            g.add_edge(e - 1, e);
        if (!x[e].is_read())
            continue;
        std::vector<EventIdx> targets;
        if (is_acquire(x[e].ord)) targets.push_back(e);
        if (next_acq_fence[e] != kNoEvent) targets.push_back(next_acq_fence[e]);
        if (targets.empty())
            continue;
        std::vector<EventIdx> sources;
        std::vector<char> seen(n, 0);
        for (EventIdx w = x.rf(e); w != kNoEvent && !seen[w]; w = x[w].op == Op::Rmw ? x.rf(w) : kNoEvent) {
            seen[w] = 1;
            if (is_release(x[w].ord)) sources.push_back(w);
            else if (last_rel_fence[w] != kNoEvent) sources.push_back(last_rel_fence[w]);
        }
        for (EventIdx s : sources)
            for (EventIdx d : targets)
                if (s != d) {
                    g.add_edge(s, d);
                    preds[d].push_back(s);
                }
    }
    auto order = g.topo_order();
    if (!order)
        return std::nullopt;
    HbTable hb(n, k);
    Clock h(k);
    for (EventIdx e : *order) {
        std::fill(h.begin(), h.end(), 0);
        if (x[e].idx > 1) h = hb.clock(e - 1);
        for (EventIdx s : preds[e]) join(h, hb.clock(s));
        h[x[e].tid] = x[e].idx;
        hb.store(e, h);
    }
    return hb;
}

// Per-(thread, location) po-ordered event lists with a monotone cursor per
// observer thread.
class ObserverLists {
public:
    enum class Kind { Writes, Reads, Accesses };

    ObserverLists(const Execution& x, Kind kind) : x_(&x), k_(x.num_threads()) {
        for (EventIdx e = 0; e < x.size(); ++e) {
            const Event& ev = x[e];
            if (ev.loc < 0) continue;
            bool take = kind == Kind::Accesses || (kind == Kind::Writes && ev.is_write()) ||
                        (kind == Kind::Reads && ev.is_read());
            if (!take) continue;
            auto [it, fresh] = index_.emplace(key(ev.tid, ev.loc), lists_.size());
            if (fresh) lists_.emplace_back();
            lists_[it->second].push_back(e);
        }
        cursor_.assign(lists_.size() * k_, 0);
        last_c_.assign(lists_.size() * k_, 0);
    }

    // Last listed event of thread t on x with idx ≤ c, as seen by observer.
    std::optional<EventIdx> get(std::uint32_t t, std::int32_t x, std::uint32_t c, std::uint32_t observer) {
        auto it = index_.find(key(t, x));
        if (it == index_.end())
            return std::nullopt;
        const std::size_t slot = it->second * k_ + observer;
        if (c < last_c_[slot])
            throw Error(ErrorKind::MonotonicityViolated,
                        "cursor query went from " + std::to_string(last_c_[slot]) + " to " + std::to_string(c));
        last_c_[slot] = c;
        const auto& list = lists_[it->second];
        auto& pos = cursor_[slot];
        while (pos < list.size() && (*x_)[list[pos]].idx <= c) {
            ++pos;
            ++advances_;
        }
        if (pos == 0)
            return std::nullopt;
        return list[pos - 1];
    }

    std::uint64_t advances() const { return advances_; }

private:
    static std::uint64_t key(std::uint32_t t, std::int32_t x) {
        return (std::uint64_t(t) << 32) | std::uint32_t(x);
    }

    const Execution* x_;
    std::uint32_t k_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
    std::vector<std::vector<EventIdx>> lists_;
    std::vector<std::uint32_t> cursor_;
    std::vector<std::uint32_t> last_c_;
    std::uint64_t advances_ = 0;
};

inline std::optional<EventIdx> last_write_before(ObserverLists& writes, std::uint32_t t, std::int32_t x,
                                                 std::uint32_t c, std::uint32_t observer) {
    return writes.get(t, x, c, observer);
}

inline std::optional<EventIdx> last_read_before(ObserverLists& reads, std::uint32_t t, std::int32_t x,
                                                std::uint32_t c, std::uint32_t observer) {
    return reads.get(t, x, c, observer);
}

} // namespace mcck

#endif
