#ifndef MCCK_GENERATORS_HPP
#define MCCK_GENERATORS_HPP

#include "execution.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mcck {

struct UndirectedGraph {
    std::uint32_t n = 0;                                   // nodes 1..n
    std::set<std::pair<std::uint32_t, std::uint32_t>> edges; // normalized a < b

    void add_edge(std::uint32_t a, std::uint32_t b) {
        if (a == b || a == 0 || b == 0 || a > n || b > n)
            throw Error(ErrorKind::InvalidArgument, "bad edge " + std::to_string(a) + " " + std::to_string(b));
        edges.emplace(std::min(a, b), std::max(a, b));
    }

    bool has_edge(std::uint32_t a, std::uint32_t b) const { return edges.count({std::min(a, b), std::max(a, b)}) > 0; }

    bool has_triangle() const {
        for (auto [a, b] : edges)
            for (std::uint32_t c = b + 1; c <= n; ++c)
                if (has_edge(a, c) && has_edge(b, c)) return true;
        return false;
    }
};

namespace detail {

// Collects events in stream order with sequential ids, then lays them out by thread.
class Recorder {
public:
    explicit Recorder(std::uint32_t threads) : per_thread_(threads) {}

    std::uint64_t write(std::uint32_t t, std::string loc, Order o = Order::Rel) { return add(t, Op::Write, o, std::move(loc), 0); }
    std::uint64_t read(std::uint32_t t, std::string loc, std::uint64_t from, Order o = Order::Acq) {
        return add(t, Op::Read, o, std::move(loc), from);
    }
    std::uint64_t rmw(std::uint32_t t, std::string loc, std::uint64_t from, Order o = Order::AcqRel) {
        return add(t, Op::Rmw, o, std::move(loc), from);
    }
    std::uint64_t fence(std::uint32_t t, Order o) { return add(t, Op::Fence, o, {}, 0); }

    Execution build() const {
        ExecutionBuilder b;
        for (std::uint32_t t = 0; t < per_thread_.size(); ++t) {
            b.thread(t);
            for (const auto& e : per_thread_[t]) b.add(t, e.op, e.ord, e.loc, e.id, e.from);
        }
        return b.build();
    }

private:
    struct Rec {
        Op op;
        Order ord;
        std::string loc;
        std::uint64_t id, from;
    };

    std::uint64_t add(std::uint32_t t, Op op, Order o, std::string loc, std::uint64_t from) {
        const std::uint64_t id = ++next_;
        per_thread_.at(t).push_back({op, o, std::move(loc), id, from});
        return id;
    }

    std::vector<std::vector<Rec>> per_thread_;
    std::uint64_t next_ = 0;
};

} // namespace detail

// Each original event of the construction gets its own thread. Every hb edge
// (a, b) becomes a rel write to a fresh location appended to a's thread and an
// acq read of it prepended to b's thread. Size: 3|V| + 13|E| events on
// 3|V| + 3|E| threads.
inline Execution gen_triangle_reduction(const UndirectedGraph& g) {
    struct Slot {
        Op op;
        std::string loc;
        std::int64_t from_slot; // writer slot for the one original read, else -1
        std::vector<std::size_t> in, out; // gadget numbers
    };
    std::vector<Slot> slots;
    auto slot = [&](Op op, std::string loc) {
        slots.push_back({op, std::move(loc), -1, {}, {}});
        return slots.size() - 1;
    };
    const std::uint32_t n = g.n;
    std::vector<std::size_t> w(n + 1), rd(n + 1), wt(n + 1);
    for (std::uint32_t a = 1; a <= n; ++a) {
        w[a] = slot(Op::Write, "y_" + std::to_string(a));
        rd[a] = slot(Op::Write, "jr_" + std::to_string(a));
        wt[a] = slot(Op::Write, "jw_" + std::to_string(a));
    }
    std::size_t gadgets = 0;
    auto hb_edge = [&](std::size_t from, std::size_t to) {
        slots[from].out.push_back(gadgets);
        slots[to].in.push_back(gadgets);
        ++gadgets;
    };
    for (auto [a, b] : g.edges) {
        const std::size_t e = slot(Op::Write, "e_" + std::to_string(a) + "_" + std::to_string(b));
        const std::size_t r = slot(Op::Read, "y_" + std::to_string(b));
        slots[r].from_slot = std::int64_t(w[b]);
        const std::size_t wb = slot(Op::Write, "y_" + std::to_string(a));
        hb_edge(w[a], wb);
        hb_edge(wb, wt[b]);
        hb_edge(wt[b], e);
        hb_edge(e, rd[a]);
        hb_edge(rd[a], r);
    }
    // Ids follow the thread layout; a gadget read comes before its write in
    // that layout, so all ids are fixed before emitting.
    std::vector<std::uint64_t> orig_id(slots.size()), gw_id(gadgets), gr_id(gadgets);
    std::uint64_t next = 0;
    for (std::size_t s = 0; s < slots.size(); ++s) {
        for (auto gi : slots[s].in) gr_id[gi] = ++next;
        orig_id[s] = ++next;
        for (auto gi : slots[s].out) gw_id[gi] = ++next;
    }
    ExecutionBuilder bld;
    for (std::size_t s = 0; s < slots.size(); ++s) {
        const auto t = std::uint32_t(s);
        bld.thread(t);
        for (auto gi : slots[s].in)
            bld.read(t, "hbe_" + std::to_string(gi), Order::Acq, gr_id[gi], gw_id[gi]);
        if (slots[s].op == Op::Write)
            bld.write(t, slots[s].loc, Order::Rel, orig_id[s]);
        else
            bld.read(t, slots[s].loc, Order::Acq, orig_id[s], orig_id[std::size_t(slots[s].from_slot)]);
        for (auto gi : slots[s].out)
            bld.write(t, "hbe_" + std::to_string(gi), Order::Rel, gw_id[gi]);
    }
    return bld.build();
}

struct GenParams {
    std::uint32_t events = 10;
    std::uint32_t threads = 2;
    std::uint32_t locs = 1;
    double rmw = 0.0;
    double fence = 0.0;
    std::array<double, 4> mode_weights{1, 1, 1, 1}; // rlx, acq, rel, acqrel
    std::uint64_t seed = 0;
    std::uint32_t max_writes_per_loc = 0; // 0 = unbounded
};

// Deterministic for a given seed; uses std::mt19937_64.
inline Execution gen_random(const GenParams& p) {
    if (p.threads == 0) throw Error(ErrorKind::InvalidArgument, "need at least one thread");
    for (double v : {p.rmw, p.fence})
        if (!(v >= 0 && v <= 1)) throw Error(ErrorKind::InvalidArgument, "probabilities must lie in [0, 1]");
    std::mt19937_64 rng(p.seed);
    auto uniform = [&] { return double(rng() >> 11) * 0x1.0p-53; };
    auto pick = [&](std::size_t n) { return std::size_t(rng() % n); };
    auto mode = [&](Op op) {
        static constexpr std::array<Order, 4> all{Order::Rlx, Order::Acq, Order::Rel, Order::AcqRel};
        double total = 0;
        for (std::size_t i = 0; i < 4; ++i)
            if (mode_allowed(op, all[i])) total += p.mode_weights[i];
        if (total <= 0) {
            for (Order o : all)
                if (mode_allowed(op, o)) return o;
        }
        double r = uniform() * total;
        Order last = Order::Rlx;
        for (std::size_t i = 0; i < 4; ++i) {
            if (!mode_allowed(op, all[i]) || p.mode_weights[i] <= 0) continue;
            last = all[i];
            if (r < p.mode_weights[i]) return all[i];
            r -= p.mode_weights[i];
        }
        return last;
    };

    struct Gen {
        std::uint32_t t;
        Op op;
        Order ord;
        std::uint32_t loc;
        std::uint64_t from;
    };
    std::vector<Gen> out;
    std::vector<std::vector<std::uint64_t>> writers(p.locs);
    std::vector<char> consumed(std::size_t(p.events) + 1, 0);
    for (std::uint32_t i = 1; i <= p.events; ++i) {
        Gen g{std::uint32_t(pick(p.threads)), Op::Write, Order::Rlx, 0, 0};
        const double r = uniform();
        if (r < p.fence) g.op = Op::Fence;
        else if (r < p.fence + (1 - p.fence) * p.rmw) g.op = Op::Rmw;
        else g.op = uniform() < 0.5 ? Op::Write : Op::Read;
        if (g.op != Op::Fence) {
            if (p.locs == 0) throw Error(ErrorKind::Unsatisfiable, "no locations to access");
            g.loc = std::uint32_t(pick(p.locs));
            auto& ws = writers[g.loc];
            if (g.op == Op::Rmw) {
                std::vector<std::uint64_t> free;
                for (auto w : ws)
                    if (!consumed[w]) free.push_back(w);
                const bool capped = p.max_writes_per_loc && ws.size() >= p.max_writes_per_loc;
                if (free.empty() || capped) g.op = ws.empty() ? Op::Write : Op::Read;
                else {
                    g.from = free[pick(free.size())];
                    consumed[g.from] = 1;
                }
            }
            if (g.op == Op::Write && p.max_writes_per_loc && ws.size() >= p.max_writes_per_loc) g.op = Op::Read;
            if (g.op == Op::Read) {
                if (ws.empty()) g.op = Op::Write;
                else g.from = ws[pick(ws.size())];
            }
            if (g.op != Op::Read) ws.push_back(i);
        }
        g.ord = mode(g.op);
        out.push_back(g);
    }
    ExecutionBuilder b;
    for (std::uint32_t t = 0; t < p.threads; ++t) {
        b.thread(t);
        for (std::uint32_t i = 0; i < out.size(); ++i) {
            const Gen& g = out[i];
            if (g.t != t) continue;
            std::string loc = g.op == Op::Fence ? std::string() : "x" + std::to_string(g.loc);
            b.add(t, g.op, g.ord, loc, i + 1, g.from);
        }
    }
    return b.build();
}

inline const std::vector<std::string>& litmus_names() {
    static const std::vector<std::string> names{"fig1-mp", "fig1-incons", "fig2a", "fig2b", "fig2c", "fig2d", "fig5-helpers"};
    return names;
}

inline Execution gen_litmus(std::string_view name) {
    detail::Recorder r(name == "fig5-helpers" ? 4 : 2);
    if (name == "fig1-mp" || name == "fig1-incons") {
        auto w1 = r.write(0, "x");
        auto w2 = r.write(0, "y");
        auto w3 = r.write(0, "x");
        r.read(1, "y", w2);
        r.write(1, "x");
        r.read(1, "x", name == "fig1-mp" ? w3 : w1);
    } else if (name == "fig2a") {
        r.write(0, "x");
        r.write(0, "x");
        r.write(0, "y");
        r.read(0, "y", 5); // the t1 write recorded next
        r.write(1, "y");
        r.read(1, "x", 1);
    } else if (name == "fig2b") {
        r.write(0, "y");
        r.write(0, "x");
        r.read(0, "x", 4);
        r.write(1, "x");
        r.write(1, "y");
        r.read(1, "y", 1);
    } else if (name == "fig2c") {
        r.write(0, "x");
        r.read(0, "x", 3);
        r.write(1, "x");
        r.read(1, "x", 1);
    } else if (name == "fig2d") {
        auto w1 = r.write(0, "x");
        r.write(0, "x");
        auto w3 = r.write(0, "y");
        r.read(1, "y", w3);
        r.read(1, "x", w1);
    } else if (name == "fig5-helpers") {
        auto e1 = r.write(0, "x", Order::Rlx);
        r.read(0, "x", e1, Order::Rlx);
        auto e3 = r.write(0, "y", Order::Rel);
        auto e4 = r.rmw(1, "y", e3, Order::Rlx);
        auto e5 = r.rmw(2, "y", e4, Order::Rlx);
        r.read(3, "y", e5, Order::Acq);
        r.read(3, "x", e1, Order::Rlx);
    } else {
        throw Error(ErrorKind::UnknownName, "unknown litmus test " + std::string(name));
    }
    return r.build();
}

inline const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"fixed-chain-rw", "fixed-chain-wr", "new-reads", "new-writes", "hb-aware"};
    return names;
}

// Ids follow the intended streaming order. n is the total event count
// (clamped up to the pattern's minimum), k the number of satellite threads.
inline Execution gen_preset(std::string_view name, std::uint32_t n, std::uint32_t k) {
    if (k == 0) throw Error(ErrorKind::InvalidArgument, "k must be positive");
    auto rest = [&](std::uint32_t used) { return n > used ? n - used : 0u; };
    if (name == "fixed-chain-rw") {
        detail::Recorder r(k + 1);
        auto top = r.write(0, "x");
        for (std::uint32_t t = 1; t <= k; ++t) {
            r.read(t, "x", top);
            r.write(t, "x");
        }
        auto prev = top;
        for (std::uint32_t i = 0, m = rest(1 + 2 * k); i < m; ++i) prev = r.rmw(0, "x", prev);
        return r.build();
    }
    if (name == "fixed-chain-wr") {
        detail::Recorder r(k + 1);
        auto prev = r.write(0, "x");
        for (std::uint32_t i = 0, m = rest(1 + 2 * k); i < m; ++i) prev = r.rmw(0, "x", prev);
        for (std::uint32_t t = 1; t <= k; ++t) {
            r.write(t, "x");
            r.read(t, "x", prev);
        }
        return r.build();
    }
    if (name == "new-reads") {
        detail::Recorder r(k + 2);
        auto wx = r.write(1, "x");
        auto wy = r.write(1, "y");
        r.read(0, "y", wy);
        for (std::uint32_t i = 0, m = rest(3 + 2 * k); i < m; ++i) r.write(0, "x");
        for (std::uint32_t t = 2; t < k + 2; ++t) {
            r.write(t, "x");
            r.read(t, "x", wx);
        }
        return r.build();
    }
    if (name == "new-writes") {
        detail::Recorder r(k);
        r.write(0, "x");
        auto wy = r.write(0, "y");
        for (std::uint32_t t = 1; t < k; ++t) r.read(t, "y", wy);
        for (std::uint32_t i = 0, m = rest(2 + (k - 1)); i < m; ++i) r.write(i % k, "x");
        return r.build();
    }
    if (name == "hb-aware") {
        detail::Recorder r(k + 1);
        std::vector<std::uint64_t> ws;
        for (std::uint32_t t = 1; t <= k; ++t) ws.push_back(r.write(t, "x"));
        for (auto w : ws) r.read(0, "x", w);
        auto prev = r.write(0, "x");
        for (std::uint32_t i = 0, m = rest(2 * k + 1); i < m; ++i) prev = r.rmw(0, "x", prev);
        return r.build();
    }
    throw Error(ErrorKind::UnknownName, "unknown preset " + std::string(name));
}

} // namespace mcck

#endif
