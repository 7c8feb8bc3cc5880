#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "oracles.hpp"

using namespace mcck;
using testing::ev;

namespace {

UndirectedGraph graph(std::uint32_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
    UndirectedGraph g;
    g.n = n;
    for (auto [a, b] : edges) g.add_edge(a, b);
    return g;
}

UndirectedGraph petersen() {
    return graph(10, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}, {1, 6}, {2, 7}, {3, 8}, {4, 9}, {5, 10},
                      {6, 8}, {8, 10}, {10, 7}, {7, 9}, {9, 6}});
}

void expect_all(const Execution& x, bool consistent) {
    CHECK(check_wra(x).consistent() == consistent);
    CHECK(check_ra(x).consistent() == consistent);
    CHECK(check_sra_normw(x).consistent() == consistent);
}

} // namespace

TEST_CASE("triangle reduction on small graphs") {
    expect_all(gen_triangle_reduction(graph(3, {{1, 2}, {2, 3}, {1, 3}})), false);
    expect_all(gen_triangle_reduction(graph(4, {{1, 2}, {2, 3}, {3, 4}, {4, 1}})), true);
    expect_all(gen_triangle_reduction(graph(0, {})), true);
}

TEST_CASE("triangle reduction at the boundary: petersen with and without a chord") {
    UndirectedGraph p = petersen();
    CHECK_FALSE(p.has_triangle());
    expect_all(gen_triangle_reduction(p), true);
    p.add_edge(1, 3);
    CHECK(p.has_triangle());
    expect_all(gen_triangle_reduction(p), false);
}

TEST_CASE("C4 reduction is consistent under the WRA oracle") {
    Execution x = gen_triangle_reduction(graph(4, {{1, 2}, {2, 3}, {3, 4}, {4, 1}}));
    CHECK(oracle::wra(x));
}

TEST_CASE("triangle reduction size") {
    UndirectedGraph g = graph(4, {{1, 2}, {2, 3}});
    Execution x = gen_triangle_reduction(g);
    CHECK(x.size() == 3 * 4 + 13 * 2);
    CHECK(x.num_threads() == 3 * 4 + 3 * 2);
    CHECK_NOTHROW(validate(x));
}

TEST_CASE("bad edges") {
    UndirectedGraph g;
    g.n = 3;
    CHECK_THROWS_AS(g.add_edge(1, 1), Error);
    CHECK_THROWS_AS(g.add_edge(0, 2), Error);
    CHECK_THROWS_AS(g.add_edge(1, 4), Error);
}

TEST_CASE("random generation is deterministic") {
    GenParams p;
    p.events = 30;
    p.threads = 3;
    p.locs = 2;
    p.rmw = 0.3;
    p.fence = 0.2;
    p.seed = 42;
    CHECK(serialize_trace(gen_random(p)) == serialize_trace(gen_random(p)));
    p.seed = 43;
    CHECK(gen_random(p).size() == 30);
}

TEST_CASE("random generation honours its parameters") {
    for (std::uint64_t s = 0; s < 10000; ++s) {
        GenParams p = testing::corpus_params(s);
        p.events = 1 + std::uint32_t(s % 40);
        p.threads = 1 + std::uint32_t(s % 5);
        p.locs = 1 + std::uint32_t(s % 4);
        Execution x = gen_random(p);
        CHECK_NOTHROW(validate(x));
        CHECK(x.size() == p.events);
        CHECK(x.num_threads() <= p.threads);
        CHECK(check_weak_atomicity(x));
        for (std::uint32_t l = 0; l < x.num_locs(); ++l) {
            std::uint32_t w = 0;
            for (auto e : x.events_at(std::int32_t(l))) w += x[e].is_write();
            CHECK(w <= p.max_writes_per_loc);
        }
    }
    GenParams none;
    none.locs = 0;
    CHECK_THROWS_AS(gen_random(none), Error);
}

TEST_CASE("litmus shapes") {
    Execution f5 = gen_litmus("fig5-helpers");
    CHECK(f5.size() == 7);
    CHECK(f5.num_threads() == 4);
    CHECK(f5.rf(ev(f5, 4)) == ev(f5, 3));
    CHECK(f5.rf(ev(f5, 5)) == ev(f5, 4));

    Execution c = gen_litmus("fig2c");
    CHECK(c.size() == 4);
    CHECK(c.num_threads() == 2);
    CHECK(c.rf(ev(c, 2)) == ev(c, 3));
    CHECK(c.rf(ev(c, 4)) == ev(c, 1));

    CHECK(gen_litmus("fig1-mp").size() == 6);
    CHECK_THROWS_AS(gen_litmus("nope"), Error);
    for (const auto& n : litmus_names()) CHECK_NOTHROW(validate(gen_litmus(n)));
}

TEST_CASE("fixed-chain-rw preset") {
    Execution x = gen_preset("fixed-chain-rw", 100, 4);
    CHECK(x.num_threads() == 5);
    CHECK(x.size() == 100);
    RfChains ch = build_rf_chains(x);
    std::uint32_t longest = 0;
    for (auto pc : ch.pc) longest = std::max(longest, pc);
    CHECK(longest == 100 - 1 - 2 * 4);
    for (std::uint32_t t = 1; t <= 4; ++t) {
        CHECK(x.thread_size(t) == 2);
        CHECK(x[x.at(t, 1)].op == Op::Read);
        CHECK(x[x.at(t, 2)].op == Op::Write);
    }
}

TEST_CASE("presets are valid, sized, and reject bad names") {
    for (const auto& n : preset_names()) {
        Execution x = gen_preset(n, 200, 4);
        CHECK_NOTHROW(validate(x));
        CHECK(x.size() >= 200);
        CHECK(x.size() <= 210);
        CHECK(check_porf_acyclic(x));
    }
    CHECK_THROWS_AS(gen_preset("nope", 10, 2), Error);
    CHECK_THROWS_AS(gen_preset("new-reads", 10, 0), Error);
}

TEST_CASE("hb-aware preset at small scale") {
    Execution x = gen_preset("hb-aware", 20, 2);
    CHECK(x.num_threads() == 3);
    CHECK(x.thread_size(1) == 1);
    CHECK(x.thread_size(2) == 1);
    CHECK(x[x.at(0, 1)].op == Op::Read);
    CHECK(x.rf(x.at(0, 1)) == x.at(1, 1));
    CHECK(x.rf(x.at(0, 2)) == x.at(2, 1));
    CHECK(x[x.at(0, 3)].op == Op::Write);
    for (std::uint32_t i = 4; i <= x.thread_size(0); ++i) {
        CHECK(x[x.at(0, i)].op == Op::Rmw);
        CHECK(x.rf(x.at(0, i)) == x.at(0, i - 1));
    }
    Execution small = gen_preset("hb-aware", 8, 2);
    CHECK(check_ra(small).consistent() == oracle::consistent(strengthen(small), oracle::M::RC20));
}
