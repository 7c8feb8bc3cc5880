#ifndef MCCK_EXECUTION_HPP
#define MCCK_EXECUTION_HPP

#include "error.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mcck {

using EventIdx = std::uint32_t;
inline constexpr EventIdx kNoEvent = 0xffffffffu;

enum class Op : std::uint8_t { Write, Read, Rmw, Fence };
enum class Order : std::uint8_t { Rlx, Acq, Rel, AcqRel };

inline bool is_release(Order o) { return o == Order::Rel || o == Order::AcqRel; }
inline bool is_acquire(Order o) { return o == Order::Acq || o == Order::AcqRel; }

inline const char* to_string(Order o) {
    switch (o) {
    case Order::Rlx: return "rlx";
    case Order::Acq: return "acq";
    case Order::Rel: return "rel";
    case Order::AcqRel: return "acqrel";
    }
    return "?";
}

inline std::optional<Order> parse_order(std::string_view s) {
    if (s == "rlx") return Order::Rlx;
    if (s == "acq") return Order::Acq;
    if (s == "rel") return Order::Rel;
    if (s == "acqrel") return Order::AcqRel;
    return std::nullopt;
}

inline bool mode_allowed(Op op, Order o) {
    switch (op) {
    case Op::Read: return o == Order::Rlx || o == Order::Acq;
    case Op::Write: return o == Order::Rlx || o == Order::Rel;
    case Op::Rmw: return true;
    case Op::Fence: return o != Order::Rlx;
    }
    return false;
}

struct Event {
    std::uint64_t id = 0;
    std::uint32_t tid = 0;
    std::uint32_t idx = 0; // 1-based position in its thread
    Op op = Op::Write;
    Order ord = Order::Rlx;
    std::int32_t loc = -1; // -1 for fences

    bool is_write() const { return op == Op::Write || op == Op::Rmw; }
    bool is_read() const { return op == Op::Read || op == Op::Rmw; }
    bool is_fence() const { return op == Op::Fence; }
};

// Per-location set of ordered pairs (partial) or per-location sequences (total).
struct PartialMo {
    std::vector<std::pair<EventIdx, EventIdx>> pairs;
};

struct TotalMo {
    std::vector<std::vector<EventIdx>> per_loc;
};

class ExecutionBuilder;

// Events are stored thread by thread in program order, so the event with
// (tid, idx) lives at offset(tid) + idx - 1.
class Execution {
public:
    std::size_t size() const { return events_.size(); }
    const Event& operator[](EventIdx e) const { return events_[e]; }
    const std::vector<Event>& events() const { return events_; }

    std::uint32_t num_threads() const { return static_cast<std::uint32_t>(offset_.size()); }
    std::uint32_t thread_size(std::uint32_t t) const { return len_[t]; }
    EventIdx at(std::uint32_t t, std::uint32_t idx) const { return offset_[t] + idx - 1; }
    EventIdx thread_begin(std::uint32_t t) const { return offset_[t]; }
    EventIdx thread_end(std::uint32_t t) const { return offset_[t] + len_[t]; }

    // Writer of a read/RMW, kNoEvent for writes and fences.
    EventIdx rf(EventIdx r) const { return rf_[r]; }
    // The RMW reading w, kNoEvent if none. With weak-atomicity broken, the first one.
    EventIdx rmw_reader(EventIdx w) const { return rmw_reader_[w]; }

    std::uint32_t num_locs() const { return static_cast<std::uint32_t>(loc_names_.size()); }
    const std::string& loc_name(std::int32_t x) const { return loc_names_[x]; }
    std::optional<std::int32_t> find_loc(std::string_view name) const {
        for (std::size_t i = 0; i < loc_names_.size(); ++i)
            if (loc_names_[i] == name)
                return static_cast<std::int32_t>(i);
        return std::nullopt;
    }
    // All events on x, thread by thread in program order.
    const std::vector<EventIdx>& events_at(std::int32_t x) const { return by_loc_[x]; }

    std::optional<EventIdx> find(std::uint64_t id) const {
        auto it = by_id_.find(id);
        if (it == by_id_.end())
            return std::nullopt;
        return it->second;
    }

    bool has_rmw() const {
        return std::any_of(events_.begin(), events_.end(),
                           [](const Event& e) { return e.op == Op::Rmw; });
    }
    bool all_strong() const {
        for (const auto& e : events_) {
            if (e.op == Op::Write && e.ord != Order::Rel) return false;
            if (e.op == Op::Read && e.ord != Order::Acq) return false;
            if (e.op == Op::Rmw && e.ord != Order::AcqRel) return false;
        }
        return true;
    }

private:
    friend class ExecutionBuilder;

    std::vector<Event> events_;
    std::vector<EventIdx> offset_;
    std::vector<std::uint32_t> len_;
    std::vector<EventIdx> rf_;
    std::vector<EventIdx> rmw_reader_;
    std::vector<std::string> loc_names_;
    std::vector<std::vector<EventIdx>> by_loc_;
    std::unordered_map<std::uint64_t, EventIdx> by_id_;
};

class ExecutionBuilder {
public:
    // Declares thread t (idempotent); thread ids must end up dense.
    void thread(std::uint32_t t) {
        if (t >= declared_.size())
            declared_.resize(t + 1, false);
        declared_[t] = true;
        if (t >= pending_.size())
            pending_.resize(t + 1);
    }

    void write(std::uint32_t t, std::string_view loc, Order o, std::uint64_t id,
               std::size_t line = 0) {
        add(t, Op::Write, o, loc, id, 0, line);
    }
    void read(std::uint32_t t, std::string_view loc, Order o, std::uint64_t id,
              std::uint64_t from, std::size_t line = 0) {
        add(t, Op::Read, o, loc, id, from, line);
    }
    void rmw(std::uint32_t t, std::string_view loc, Order o, std::uint64_t id,
             std::uint64_t from, std::size_t line = 0) {
        add(t, Op::Rmw, o, loc, id, from, line);
    }
    void fence(std::uint32_t t, Order o, std::uint64_t id, std::size_t line = 0) {
        add(t, Op::Fence, o, {}, id, 0, line);
    }

    void add(std::uint32_t t, Op op, Order o, std::string_view loc, std::uint64_t id,
             std::uint64_t from, std::size_t line = 0) {
        thread(t);
        pending_[t].push_back(Pending{op, o, std::string(loc), id, from, line});
    }

    Execution build() const;

private:
    struct Pending {
        Op op;
        Order ord;
        std::string loc;
        std::uint64_t id;
        std::uint64_t from;
        std::size_t line;
    };

    std::vector<bool> declared_;
    std::vector<std::vector<Pending>> pending_;
};

inline Execution ExecutionBuilder::build() const {
    Execution x;
    for (std::size_t t = 0; t < declared_.size(); ++t)
        if (!declared_[t])
            throw Error(ErrorKind::BadThread, "thread ids are not dense: missing " + std::to_string(t));

    std::unordered_map<std::string, std::int32_t> locs;
    std::vector<const Pending*> src;
    for (std::uint32_t t = 0; t < pending_.size(); ++t) {
        x.offset_.push_back(static_cast<EventIdx>(x.events_.size()));
        x.len_.push_back(static_cast<std::uint32_t>(pending_[t].size()));
        std::uint32_t idx = 0;
        for (const auto& p : pending_[t]) {
            Event e;
            e.id = p.id;
            e.tid = t;
            e.idx = ++idx;
            e.op = p.op;
            e.ord = p.ord;
            if (p.id == 0)
                throw Error(ErrorKind::SyntaxError, "event ids must be positive", 0, p.line);
            if (!mode_allowed(p.op, p.ord))
                throw Error(ErrorKind::BadMode, std::string("mode ") + to_string(p.ord) +
                                                    " not allowed here", p.id, p.line);
            if (p.op == Op::Fence) {
                if (!p.loc.empty())
                    throw Error(ErrorKind::SyntaxError, "fence with a location", p.id, p.line);
            } else {
                if (p.loc.empty())
                    throw Error(ErrorKind::SyntaxError, "access without a location", p.id, p.line);
                auto [it, fresh] = locs.emplace(p.loc, static_cast<std::int32_t>(x.loc_names_.size()));
                if (fresh)
                    x.loc_names_.push_back(p.loc);
                e.loc = it->second;
            }
            auto [it, fresh] = x.by_id_.emplace(p.id, static_cast<EventIdx>(x.events_.size()));
            if (!fresh)
                throw Error(ErrorKind::DuplicateId, "duplicate event id", p.id, p.line);
            x.events_.push_back(e);
            src.push_back(&p);
        }
    }

    const std::size_t n = x.events_.size();
    x.rf_.assign(n, kNoEvent);
    x.rmw_reader_.assign(n, kNoEvent);
    x.by_loc_.assign(x.loc_names_.size(), {});
    for (EventIdx e = 0; e < n; ++e) {
        const Event& ev = x.events_[e];
        const Pending& p = *src[e];
        if (ev.loc >= 0)
            x.by_loc_[ev.loc].push_back(e);
        if (!ev.is_read()) {
            if (p.from != 0)
                throw Error(ErrorKind::SyntaxError, "only reads carry from=", ev.id, p.line);
            continue;
        }
        if (p.from == 0)
            throw Error(ErrorKind::DanglingRf, "read without a writer", ev.id, p.line);
        auto it = x.by_id_.find(p.from);
        if (it == x.by_id_.end())
            throw Error(ErrorKind::DanglingRf, "unknown writer " + std::to_string(p.from), ev.id,
                        p.line);
        const EventIdx w = it->second;
        if (w == e)
            throw Error(ErrorKind::DanglingRf, "event reads from itself", ev.id, p.line);
        if (!x.events_[w].is_write())
            throw Error(ErrorKind::DanglingRf, "writer " + std::to_string(p.from) + " is not a write",
                        ev.id, p.line);
        if (x.events_[w].loc != ev.loc)
            throw Error(ErrorKind::LocMismatch, "writer " + std::to_string(p.from) +
                                                    " is on another location", ev.id, p.line);
        x.rf_[e] = w;
        if (ev.op == Op::Rmw && x.rmw_reader_[w] == kNoEvent)
            x.rmw_reader_[w] = e;
    }
    return x;
}

// Re-checks the structural invariants of an already built execution.
inline void validate(const Execution& x) {
    for (EventIdx e = 0; e < x.size(); ++e) {
        const Event& ev = x[e];
        if (!mode_allowed(ev.op, ev.ord))
            throw Error(ErrorKind::BadMode, "", ev.id);
        if ((ev.loc < 0) != ev.is_fence())
            throw Error(ErrorKind::SyntaxError, "location presence", ev.id);
        if (ev.is_read()) {
            EventIdx w = x.rf(e);
            if (w == kNoEvent || w == e || !x[w].is_write())
                throw Error(ErrorKind::DanglingRf, "", ev.id);
            if (x[w].loc != ev.loc)
                throw Error(ErrorKind::LocMismatch, "", ev.id);
        } else if (x.rf(e) != kNoEvent) {
            throw Error(ErrorKind::DanglingRf, "non-read carries a writer", ev.id);
        }
    }
}

// Copy of x with events rewritten by f; f may drop events by returning false.
inline Execution transform(const Execution& x, const std::function<bool(Event&)>& f) {
    ExecutionBuilder b;
    for (std::uint32_t t = 0; t < x.num_threads(); ++t) {
        b.thread(t);
        for (EventIdx e = x.thread_begin(t); e < x.thread_end(t); ++e) {
            Event ev = x[e];
            if (!f(ev))
                continue;
            std::string loc = ev.loc >= 0 ? x.loc_name(ev.loc) : std::string();
            std::uint64_t from = ev.is_read() ? x[x.rf(e)].id : 0;
            b.add(t, ev.op, ev.ord, loc, ev.id, from);
        }
    }
    return b.build();
}

// Writes become rel, reads acq, RMWs acqrel.
inline Execution strengthen(const Execution& x) {
    return transform(x, [](Event& e) {
        if (e.op == Op::Write) e.ord = Order::Rel;
        else if (e.op == Op::Read) e.ord = Order::Acq;
        else if (e.op == Op::Rmw) e.ord = Order::AcqRel;
        return true;
    });
}

// Every access becomes rlx and fences are dropped.
inline Execution demote(const Execution& x) {
    return transform(x, [](Event& e) {
        if (e.is_fence())
            return false;
        e.ord = Order::Rlx;
        return true;
    });
}

// Kahn over immediate po and rf, ties broken by smallest event id.
inline std::optional<std::vector<EventIdx>> topological_order(const Execution& x) {
    const std::size_t n = x.size();
    std::vector<std::uint32_t> indeg(n, 0);
    std::vector<std::vector<EventIdx>> readers(n);
    for (EventIdx e = 0; e < n; ++e) {
        if (x[e].idx > 1)
            ++indeg[e];
        if (x.rf(e) != kNoEvent) {
            ++indeg[e];
            readers[x.rf(e)].push_back(e);
        }
    }
    using Item = std::pair<std::uint64_t, EventIdx>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> ready;
    for (EventIdx e = 0; e < n; ++e)
        if (indeg[e] == 0)
            ready.emplace(x[e].id, e);
    std::vector<EventIdx> order;
    order.reserve(n);
    auto release = [&](EventIdx v) {
        if (--indeg[v] == 0)
            ready.emplace(x[v].id, v);
    };
    while (!ready.empty()) {
        EventIdx e = ready.top().second;
        ready.pop();
        order.push_back(e);
        if (x[e].idx < x.thread_size(x[e].tid))
            release(e + 1);
        for (EventIdx r : readers[e])
            release(r);
    }
    if (order.size() != n)
        return std::nullopt;
    return order;
}

// A cycle of po ∪ rf as event indices, or nullopt when acyclic.
inline std::optional<std::vector<EventIdx>> porf_cycle(const Execution& x) {
    if (topological_order(x))
        return std::nullopt;
    // Every event left over has an unprocessed predecessor; walk them backwards.
    const std::size_t n = x.size();
    std::vector<std::uint32_t> indeg(n, 0);
    std::vector<std::vector<EventIdx>> succ(n);
    for (EventIdx e = 0; e < n; ++e) {
        if (x[e].idx > 1) succ[e - 1].push_back(e);
        if (x.rf(e) != kNoEvent) succ[x.rf(e)].push_back(e);
    }
    for (EventIdx e = 0; e < n; ++e)
        for (EventIdx s : succ[e]) ++indeg[s];
    std::vector<EventIdx> stack;
    for (EventIdx e = 0; e < n; ++e)
        if (!indeg[e]) stack.push_back(e);
    while (!stack.empty()) {
        EventIdx e = stack.back();
        stack.pop_back();
        for (EventIdx s : succ[e])
            if (--indeg[s] == 0) stack.push_back(s);
    }
    std::vector<EventIdx> pred(n, kNoEvent);
    EventIdx start = kNoEvent;
    for (EventIdx e = 0; e < n; ++e)
        for (EventIdx s : succ[e])
            if (indeg[e] && indeg[s]) {
                pred[s] = e;
                start = s;
            }
    std::vector<std::uint32_t> seen(n, 0);
    EventIdx v = start;
    while (!seen[v]) {
        seen[v] = 1;
        v = pred[v];
    }
    std::vector<EventIdx> cycle{v};
    for (EventIdx u = pred[v]; u != v; u = pred[u])
        cycle.push_back(u);
    std::reverse(cycle.begin(), cycle.end());
    return cycle;
}

inline bool check_porf_acyclic(const Execution& x) { return topological_order(x).has_value(); }

// Two distinct RMWs sharing a writer, or nullopt.
inline std::optional<std::pair<EventIdx, EventIdx>> weak_atomicity_violation(const Execution& x) {
    for (EventIdx e = 0; e < x.size(); ++e) {
        if (x[e].op != Op::Rmw)
            continue;
        EventIdx first = x.rmw_reader(x.rf(e));
        if (first != e)
            return std::make_pair(first, e);
    }
    return std::nullopt;
}

inline bool check_weak_atomicity(const Execution& x) { return !weak_atomicity_violation(x); }

struct RfChains {
    std::vector<EventIdx> tc;    // kNoEvent for reads and fences
    std::vector<std::uint32_t> pc;
};

inline RfChains build_rf_chains(const Execution& x) {
    if (auto v = weak_atomicity_violation(x))
        throw Error(ErrorKind::WeakAtomicityViolated, "two RMWs share a writer", x[v->second].id);
    const std::size_t n = x.size();
    RfChains c;
    c.tc.assign(n, kNoEvent);
    c.pc.assign(n, 0);
    // Every chain hangs off a plain write; walk down through the unique RMW reader.
    for (EventIdx e = 0; e < n; ++e) {
        if (x[e].op != Op::Write)
            continue;
        std::uint32_t pos = 0;
        for (EventIdx v = e; v != kNoEvent; v = x.rmw_reader(v)) {
            c.tc[v] = e;
            c.pc[v] = pos++;
        }
    }
    for (EventIdx e = 0; e < n; ++e)
        if (x[e].is_write() && c.tc[e] == kNoEvent)
            throw Error(ErrorKind::PorfCyclic, "RMW chain without a plain write", x[e].id);
    return c;
}

struct Triplet {
    EventIdx w, r, w2;
};

// Calls f for every conflicting triplet (w, r, w2).
inline void for_each_triplet(const Execution& x, const std::function<void(const Triplet&)>& f) {
    for (std::uint32_t loc = 0; loc < x.num_locs(); ++loc) {
        const auto& evs = x.events_at(static_cast<std::int32_t>(loc));
        for (EventIdx r : evs) {
            if (!x[r].is_read())
                continue;
            EventIdx w = x.rf(r);
            for (EventIdx w2 : evs)
                if (x[w2].is_write() && w2 != w && w2 != r)
                    f(Triplet{w, r, w2});
        }
    }
}

} // namespace mcck

#endif
