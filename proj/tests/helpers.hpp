#ifndef MCCK_TESTS_HELPERS_HPP
#define MCCK_TESTS_HELPERS_HPP

#include "mcck/mcck.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace testing {

inline mcck::EventIdx ev(const mcck::Execution& x, std::uint64_t id) { return *x.find(id); }

// The random corpus used by the differential suites.
inline mcck::GenParams corpus_params(std::uint64_t seed) {
    mcck::GenParams p;
    p.seed = seed;
    p.events = 2 + std::uint32_t(seed % 11);
    p.threads = 1 + std::uint32_t(seed % 3);
    p.locs = 1 + std::uint32_t((seed / 3) % 2);
    p.rmw = 0.3;
    p.fence = 0.2;
    p.max_writes_per_loc = 4;
    return p;
}

inline mcck::Execution trace(const std::string& body) { return mcck::parse_trace("mcck-trace v1\n" + body); }

// The first m events of order as a standalone execution (order must be po ∪ rf closed).
inline mcck::Execution prefix(const mcck::Execution& x, const std::vector<mcck::EventIdx>& order, std::size_t m) {
    mcck::ExecutionBuilder b;
    for (std::uint32_t t = 0; t < x.num_threads(); ++t) b.thread(t);
    std::vector<mcck::EventIdx> take(order.begin(), order.begin() + std::ptrdiff_t(m));
    std::sort(take.begin(), take.end());
    for (auto e : take) {
        const auto& ev = x[e];
        b.add(ev.tid, ev.op, ev.ord, ev.loc >= 0 ? x.loc_name(ev.loc) : std::string(), ev.id,
              ev.is_read() ? x[x.rf(e)].id : 0);
    }
    return b.build();
}

// Streams x in order; returns the position of the first rejected event.
inline std::optional<std::size_t> stream_rejection(const mcck::Execution& x, const std::vector<mcck::EventIdx>& order) {
    mcck::Session s(std::max<std::uint32_t>(1, x.num_threads()));
    std::vector<std::uint64_t> sid(x.size(), 0);
    for (std::size_t i = 0; i < order.size(); ++i) {
        const mcck::EventIdx e = order[i];
        const auto& ev = x[e];
        mcck::StepResult r;
        switch (ev.op) {
        case mcck::Op::Write: r = s.on_write(ev.tid, x.loc_name(ev.loc)); break;
        case mcck::Op::Read: r = s.on_read(ev.tid, x.loc_name(ev.loc), sid[x.rf(e)]); break;
        case mcck::Op::Rmw: r = s.on_rmw(ev.tid, x.loc_name(ev.loc), sid[x.rf(e)]); break;
        case mcck::Op::Fence: r = s.on_fence(ev.tid); break;
        }
        if (!r.consistent()) return i;
        sid[e] = r.id;
    }
    return std::nullopt;
}

// Shortest prefix of order that check_ra rejects, as the position of its last event.
inline std::optional<std::size_t> offline_rejection(const mcck::Execution& x, const std::vector<mcck::EventIdx>& order) {
    for (std::size_t m = 1; m <= order.size(); ++m)
        if (!mcck::check_ra(prefix(x, order, m)).consistent()) return m - 1;
    return std::nullopt;
}

} // namespace testing

#endif
