#ifndef MCCK_INCREMENTAL_HPP
#define MCCK_INCREMENTAL_HPP

#include "checkers.hpp"
#include "error.hpp"
#include "hb.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mcck {

struct StepResult {
    enum class Reason { None, Coherence, WriterAlreadyConsumed };

    Status status = Status::Consistent;
    std::uint64_t id = 0;
    Reason reason = Reason::None;

    bool consistent() const { return status == Status::Consistent; }
};

// Streaming RA checker. Every access is treated as rel/acq, so hb = (po ∪ rf)⁺.
//
// For each location the checker keeps, per write, W[a]: the clock of a's
// direct predecessors in hb ∪ m̄o joined along program order (HB of a plus the
// m̄o sources recorded on chain tops po-before a). A chain top's m̄o sources
// live in mo_in. The full predecessor set of a write is the fixpoint of
// following W through the per-thread frontiers, computed only when a read
// adds m̄o edges.
class Session {
public:
    explicit Session(std::uint32_t k) : k_(k), H_(k, Clock(k, 0)), len_(k, 0) {
        if (k == 0) throw Error(ErrorKind::InvalidArgument, "a session needs at least one thread");
    }

    std::uint32_t threads() const { return k_; }
    std::size_t size() const { return ev_.size(); }
    bool dead() const { return dead_; }

    StepResult on_write(std::uint32_t t, std::string_view loc) {
        live(t);
        const EventIdx e = append(t, Op::Write, intern(loc));
        ev_[e].tc = e;
        ev_[e].pc = 0;
        add_write(e);
        return {Status::Consistent, id_of(e)};
    }

    StepResult on_read(std::uint32_t t, std::string_view loc, std::uint64_t writer) {
        return read_like(t, loc, writer, false);
    }

    StepResult on_rmw(std::uint32_t t, std::string_view loc, std::uint64_t writer) {
        return read_like(t, loc, writer, true);
    }

    StepResult on_fence(std::uint32_t t) {
        live(t);
        const EventIdx e = append(t, Op::Fence, -1);
        return {Status::Consistent, id_of(e)};
    }

    // Committed state, for comparing sessions.
    struct Snapshot {
        std::vector<Clock> hb, w, mo_in;
        std::vector<EventIdx> tc;
        std::vector<std::uint32_t> pc;
        std::vector<char> consumed;
        bool operator==(const Snapshot&) const = default;
    };

    Snapshot snapshot() const {
        Snapshot s;
        for (const auto& v : ev_) {
            s.hb.push_back(v.hb);
            s.w.push_back(v.w);
            s.mo_in.push_back(v.mo_in);
            s.tc.push_back(v.tc);
            s.pc.push_back(v.pc);
            s.consumed.push_back(v.consumed);
        }
        return s;
    }

    // Clock of e's direct hb ∪ m̄o predecessors (empty for reads and fences).
    const Clock& hbmo(std::uint64_t id) const { return ev_.at(id - 1).w; }
    const Clock& hb(std::uint64_t id) const { return ev_.at(id - 1).hb; }

private:
    struct Ev {
        std::uint32_t tid = 0, idx = 0;
        Op op = Op::Write;
        std::int32_t loc = -1;
        Clock hb;
        Clock w;     // writes only
        Clock mo_in; // chain tops only
        EventIdx tc = kNoEvent;
        std::uint32_t pc = 0;
        char consumed = 0;
        std::uint32_t lpos = 0; // position in its (thread, location) write list
    };

    static std::uint64_t id_of(EventIdx e) { return std::uint64_t(e) + 1; }

    void live(std::uint32_t t) const {
        if (dead_) throw Error(ErrorKind::SessionDead, "session already rejected an event");
        if (t >= k_) throw Error(ErrorKind::InvalidArgument, "thread " + std::to_string(t) + " out of range");
    }

    std::int32_t intern(std::string_view loc) {
        auto [it, fresh] = locs_.emplace(std::string(loc), std::int32_t(locs_.size()));
        return it->second;
    }

    static std::uint64_t key(std::uint32_t t, std::int32_t x) { return (std::uint64_t(t) << 32) | std::uint32_t(x); }

    EventIdx append(std::uint32_t t, Op op, std::int32_t loc) {
        Ev v;
        v.tid = t;
        v.idx = ++len_[t];
        v.op = op;
        v.loc = loc;
        H_[t][t] = v.idx;
        v.hb = H_[t];
        ev_.push_back(std::move(v));
        return EventIdx(ev_.size() - 1);
    }

    // Registers a committed write/RMW whose hb, tc and pc are final.
    void add_write(EventIdx e) {
        Ev& v = ev_[e];
        auto& list = writes_[key(v.tid, v.loc)];
        v.w = v.hb;
        if (!list.empty()) join(v.w, ev_[list.back()].w);
        if (v.tc == e) v.mo_in.assign(k_, 0);
        v.lpos = std::uint32_t(list.size());
        list.push_back(e);
    }

    // Last write of thread u on x with idx ≤ c.
    std::optional<EventIdx> last_write(std::uint32_t u, std::int32_t x, std::uint32_t c) const {
        auto it = writes_.find(key(u, x));
        if (it == writes_.end()) return std::nullopt;
        const auto& list = it->second;
        auto pos = std::upper_bound(list.begin(), list.end(), c,
                                    [&](std::uint32_t cc, EventIdx a) { return cc < ev_[a].idx; });
        if (pos == list.begin()) return std::nullopt;
        return *(pos - 1);
    }

    // Fixpoint of the predecessor clocks reachable from s on location x.
    void close(Clock& s, std::int32_t x) const {
        Clock seen(k_, 0);
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::uint32_t u = 0; u < k_; ++u) {
                if (s[u] == seen[u]) continue;
                seen[u] = s[u];
                if (auto f = last_write(u, x, s[u])) {
                    for (std::uint32_t v = 0; v < k_; ++v)
                        if (ev_[*f].w[v] > s[v]) {
                            s[v] = ev_[*f].w[v];
                            changed = true;
                        }
                }
            }
        }
    }

    StepResult read_like(std::uint32_t t, std::string_view loc, std::uint64_t writer, bool rmw) {
        live(t);
        if (writer == 0 || writer > ev_.size())
            throw Error(ErrorKind::UnknownWriter, "no event " + std::to_string(writer));
        const EventIdx w = EventIdx(writer - 1);
        if (ev_[w].op != Op::Write && ev_[w].op != Op::Rmw)
            throw Error(ErrorKind::UnknownWriter, "event " + std::to_string(writer) + " is not a write");
        auto lit = locs_.find(std::string(loc));
        if (lit == locs_.end() || lit->second != ev_[w].loc)
            throw Error(ErrorKind::LocMismatch, "writer " + std::to_string(writer) + " is on another location");
        const std::int32_t x = lit->second;
        const std::uint64_t id = ev_.size() + 1;

        if (rmw && ev_[w].consumed) {
            dead_ = true;
            return {Status::Inconsistent, id, StepResult::Reason::WriterAlreadyConsumed};
        }

        Clock hb = H_[t];
        hb[t] = len_[t] + 1;
        join(hb, ev_[w].hb);

        const EventIdx top = ev_[w].tc;
        std::vector<EventIdx> sources;
        for (std::uint32_t u = 0; u < k_; ++u) {
            const std::uint32_t c = u == t ? len_[t] : hb[u];
            auto a = last_write(u, x, c);
            if (!a || *a == w) continue;
            if (ev_[*a].tc == top) {
                if (ev_[w].pc < ev_[*a].pc) return reject(id);
                continue;
            }
            sources.push_back(*a);
        }

        Clock pred(k_, 0);
        if (!sources.empty()) {
            for (EventIdx a : sources) join(pred, ev_[a].w);
            close(pred, x);
            if (pred[ev_[top].tid] >= ev_[top].idx) return reject(id);
        }

        // Commit.
        const EventIdx e = append(t, rmw ? Op::Rmw : Op::Read, x);
        ev_[e].hb = hb;
        H_[t] = hb;
        if (!sources.empty()) {
            join(ev_[top].mo_in, pred);
            propagate(top, pred);
        }
        if (rmw) {
            ev_[e].tc = top;
            ev_[e].pc = ev_[w].pc + 1;
            ev_[w].consumed = 1;
            add_write(e);
        }
        return {Status::Consistent, id};
    }

    // Joins delta into W of top and every later write of its thread on its location.
    void propagate(EventIdx top, const Clock& delta) {
        const auto& list = writes_[key(ev_[top].tid, ev_[top].loc)];
        auto it = list.begin() + ev_[top].lpos;
        for (; it != list.end(); ++it) {
            Clock& w = ev_[*it].w;
            bool grew = false;
            for (std::uint32_t u = 0; u < k_; ++u)
                if (delta[u] > w[u]) {
                    w[u] = delta[u];
                    grew = true;
                }
            if (!grew) break;
        }
    }

    StepResult reject(std::uint64_t id) {
        dead_ = true;
        return {Status::Inconsistent, id, StepResult::Reason::Coherence};
    }

    std::uint32_t k_;
    std::vector<Clock> H_;
    std::vector<std::uint32_t> len_;
    std::vector<Ev> ev_;
    std::unordered_map<std::string, std::int32_t> locs_;
    std::unordered_map<std::uint64_t, std::vector<EventIdx>> writes_;
    bool dead_ = false;
};

inline Session new_session(std::uint32_t k) { return Session(k); }

} // namespace mcck

#endif
