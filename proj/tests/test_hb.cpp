#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "oracles.hpp"

#include <random>

using namespace mcck;
using testing::ev;

TEST_CASE("fig5 timestamps") {
    Execution x = gen_litmus("fig5-helpers");
    HbTable hb = compute_hb(x);
    const EventIdx e7 = ev(x, 7);
    CHECK(hb(e7, 0) == 3);
    CHECK(hb(e7, 3) == 2);
    CHECK(hb(e7, 1) == 0);
    CHECK(hb(e7, 2) == 0);
}

TEST_CASE("fig5 observer queries") {
    Execution x = gen_litmus("fig5-helpers");
    const auto lx = *x.find_loc("x");
    const auto ly = *x.find_loc("y");
    ObserverLists writes(x, ObserverLists::Kind::Writes);
    ObserverLists reads(x, ObserverLists::Kind::Reads);
    CHECK(last_write_before(writes, 0, lx, 2, 3) == ev(x, 1));
    CHECK_FALSE(last_write_before(writes, 1, lx, 1, 3));
    CHECK(last_write_before(writes, 1, ly, 1, 3) == ev(x, 4));
    CHECK(last_read_before(reads, 0, lx, 2, 3) == ev(x, 2));
    CHECK_FALSE(last_read_before(reads, 3, ly, 0, 0));
}

TEST_CASE("single thread: hb is po") {
    ExecutionBuilder b;
    for (std::uint64_t i = 1; i <= 8; ++i) b.write(0, i % 2 ? "x" : "y", Order::Rlx, i);
    Execution x = b.build();
    HbTable hb = compute_hb(x);
    for (EventIdx e = 0; e < x.size(); ++e) CHECK(hb(e, 0) == x[e].idx);
}

TEST_CASE("query with c = 0 finds nothing; a thread without reads finds nothing") {
    Execution x = gen_litmus("fig1-mp");
    ObserverLists writes(x, ObserverLists::Kind::Writes);
    ObserverLists reads(x, ObserverLists::Kind::Reads);
    for (std::uint32_t t = 0; t < x.num_threads(); ++t)
        for (std::int32_t l = 0; l < std::int32_t(x.num_locs()); ++l) CHECK_FALSE(writes.get(t, l, 0, t));
    CHECK_FALSE(reads.get(0, *x.find_loc("x"), 3, 1));
}

TEST_CASE("decreasing cursor is reported") {
    Execution x = gen_litmus("fig1-mp");
    ObserverLists writes(x, ObserverLists::Kind::Writes);
    const auto lx = *x.find_loc("x");
    writes.get(0, lx, 3, 1);
    CHECK_THROWS_AS(writes.get(0, lx, 2, 1), Error);
    CHECK_NOTHROW(writes.get(0, lx, 2, 0));
}

TEST_CASE("timestamps equal naive hb counting on random mixed-mode executions") {
    for (std::uint64_t s = 0; s < 500; ++s) {
        Execution x = gen_random(testing::corpus_params(s));
        auto h = oracle::hb(x);
        auto fast = compute_hb_via_sw(x);
        if (!check_porf_acyclic(x)) continue;
        HbTable hb = compute_hb(x);
        REQUIRE(fast);
        CHECK(hb == *fast);
        for (EventIdx e = 0; e < x.size(); ++e)
            for (std::uint32_t t = 0; t < x.num_threads(); ++t) CHECK(hb(e, t) == oracle::hb_count(x, h, e, t));
    }
}

TEST_CASE("timestamps are monotone along po") {
    for (std::uint64_t s = 0; s < 200; ++s) {
        Execution x = gen_random(testing::corpus_params(s));
        HbTable hb = compute_hb(x);
        for (std::uint32_t t = 0; t < x.num_threads(); ++t)
            for (EventIdx e = x.thread_begin(t); e + 1 < x.thread_end(t); ++e)
                for (std::uint32_t u = 0; u < x.num_threads(); ++u) CHECK(hb(e, u) <= hb(e + 1, u));
    }
}

TEST_CASE("strong fast path equals the general computation") {
    for (std::uint64_t s = 0; s < 200; ++s) {
        Execution x = strengthen(gen_random(testing::corpus_params(s)));
        auto order = topological_order(x);
        REQUIRE(order);
        CHECK(compute_hb_strong(x, *order) == compute_hb_in_order(x, *order));
    }
}

TEST_CASE("observer queries match a linear scan") {
    std::mt19937_64 rng(7);
    for (std::uint64_t s = 0; s < 200; ++s) {
        Execution x = gen_random(testing::corpus_params(s));
        if (x.num_locs() == 0) continue;
        ObserverLists writes(x, ObserverLists::Kind::Writes);
        ObserverLists reads(x, ObserverLists::Kind::Reads);
        const std::uint32_t k = x.num_threads();
        for (std::uint32_t obs = 0; obs < k; ++obs)
            for (std::uint32_t t = 0; t < k; ++t)
                for (std::int32_t l = 0; l < std::int32_t(x.num_locs()); ++l) {
                    std::uint32_t c = 0;
                    while (c <= x.thread_size(t)) {
                        CHECK(writes.get(t, l, c, obs) == oracle::last_write_before(x, t, l, c));
                        CHECK(reads.get(t, l, c, obs) == oracle::last_read_before(x, t, l, c));
                        c += std::uint32_t(rng() % 3);
                        if (rng() % 4 == 0) ++c;
                    }
                }
    }
}
