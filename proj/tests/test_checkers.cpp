#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "oracles.hpp"

using namespace mcck;
using testing::ev;
using testing::trace;

namespace {

std::vector<std::uint64_t> ids(const Execution& x, const std::vector<EventIdx>& v) {
    std::vector<std::uint64_t> out;
    for (auto e : v) out.push_back(x[e].id);
    return out;
}

} // namespace

TEST_CASE("check_wra") {
    CHECK(check_wra(gen_litmus("fig2c")).consistent());
    Verdict v = check_wra(gen_litmus("fig2d"));
    CHECK_FALSE(v.consistent());
    CHECK(v.reason == Reason::WeakReadCoherence);
    // the read of w(x)#1 with w(x)#2 sandwiched in between
    CHECK(v.events == std::vector<std::uint64_t>{1, 2, 5});
    CHECK(check_wra(trace("")).consistent());
}

TEST_CASE("check_wra reports po ∪ rf cycles and shared writers") {
    Execution lb = trace("thread 0\nr x rlx id=1 from=4\nw y rlx id=2\nthread 1\nr y rlx id=3 from=2\nw x rlx id=4\n");
    CHECK(check_wra(lb).reason == Reason::PorfCycle);
    Execution two = trace("thread 0\nw x rel id=3\nu x acqrel id=4 from=3\nthread 1\nu x acqrel id=5 from=3\n");
    CHECK(check_wra(two).reason == Reason::WeakAtomicity);
}

TEST_CASE("check_sra_normw") {
    Execution a = gen_litmus("fig2a");
    Verdict v = check_sra_normw(a);
    CHECK(v.consistent());
    REQUIRE(v.partial_mo);
    TotalMo mo = complete_witness_sra(a, *v.partial_mo);
    const auto& y = mo.per_loc[*a.find_loc("y")];
    CHECK(ids(a, y) == std::vector<std::uint64_t>{3, 5});
    CHECK(all_hold(eval_model(a, mo, Model::SRA)));

    Verdict b = check_sra_normw(gen_litmus("fig2b"));
    CHECK_FALSE(b.consistent());
    CHECK(b.reason == Reason::MoCycle);

    Execution single = trace("thread 0\nw x rel id=1\nthread 1\nr x acq id=2 from=1\n");
    Verdict s = check_sra_normw(single);
    CHECK(s.consistent());
    REQUIRE(s.partial_mo);
    CHECK(s.partial_mo->pairs.empty());

    CHECK_THROWS_AS(check_sra_normw(gen_litmus("fig5-helpers")), Error);
}

TEST_CASE("check_sra_full") {
    CHECK(check_sra_full(trace("")).consistent());
    CHECK(check_sra_full(gen_litmus("fig2a")).consistent());
    CHECK_FALSE(check_sra_full(gen_litmus("fig2b")).consistent());
    Verdict v = check_sra_full(gen_litmus("fig5-helpers"));
    CHECK(v.consistent());
    REQUIRE(v.witness_mo);
    CHECK(all_hold(eval_model(gen_litmus("fig5-helpers"), *v.witness_mo, Model::SRA)));
}

TEST_CASE("check_sra_full reports the node cap") {
    CHECK_THROWS_AS(check_sra_full(gen_litmus("fig2a"), 2), Error);
    CHECK_NOTHROW(check_sra_full(gen_litmus("fig2a"), 1000));
}

TEST_CASE("check_rc20 and check_ra") {
    CHECK(check_rc20(gen_litmus("fig1-mp")).consistent());
    Verdict v = check_rc20(gen_litmus("fig1-incons"));
    CHECK_FALSE(v.consistent());
    CHECK(v.reason == Reason::MoCycle);
    CHECK(v.location == gen_litmus("fig1-incons").find_loc("x"));

    CHECK(check_ra(gen_litmus("fig1-mp")).consistent());
    CHECK(check_ra(gen_litmus("fig2b")).consistent());
    CHECK_FALSE(check_ra(gen_litmus("fig2c")).consistent());
}

TEST_CASE("check_relaxed") {
    CHECK(check_relaxed(gen_litmus("fig2d")).consistent());
    CHECK_FALSE(check_relaxed(demote(gen_litmus("fig2c"))).consistent());
    Execution lb = trace("thread 0\nr x rlx id=1 from=4\nw y rlx id=2\nthread 1\nr y rlx id=3 from=2\nw x rlx id=4\n");
    CHECK(check_relaxed(lb).reason == Reason::PorfCycle);
}

TEST_CASE("rc20 and relaxed agree on rlx-only executions") {
    for (std::uint64_t s = 0; s < 300; ++s) {
        Execution x = demote(gen_random(testing::corpus_params(s)));
        CHECK(check_rc20(x).consistent() == check_relaxed(x).consistent());
    }
}

TEST_CASE("minimal coherence of checker output") {
    Execution mp = gen_litmus("fig1-mp");
    Verdict v = check_rc20(mp);
    REQUIRE(v.partial_mo);
    CHECK_FALSE(rc20_minimal_coherence(mp, derive_base(mp), *v.partial_mo));
    // dropping the forced pair breaks condition 1
    CHECK(rc20_minimal_coherence(mp, derive_base(mp), PartialMo{}));
    CHECK_THROWS_AS(complete_witness_rc20(mp, PartialMo{}), Error);
}

TEST_CASE("completion") {
    SUBCASE("fig1-mp yields the drawn mo") {
        Execution mp = gen_litmus("fig1-mp");
        TotalMo mo = complete_witness_rc20(mp, *check_rc20(mp).partial_mo);
        CHECK(ids(mp, mo.per_loc[*mp.find_loc("x")]) == std::vector<std::uint64_t>{1, 5, 3});
        CHECK(ids(mp, mo.per_loc[*mp.find_loc("y")]) == std::vector<std::uint64_t>{2});
    }
    SUBCASE("two independent writes: lowest-id top first") {
        Execution x = trace("thread 0\nw x rlx id=7\nthread 1\nw x rlx id=4\n");
        TotalMo mo = complete_witness_rc20(x, PartialMo{});
        CHECK(ids(x, mo.per_loc[0]) == std::vector<std::uint64_t>{4, 7});
    }
    SUBCASE("random checker output completes to a witness") {
        for (std::uint64_t s = 0; s < 400; ++s) {
            Execution x = gen_random(testing::corpus_params(s));
            Verdict v = check_rc20(x);
            if (!v.consistent()) continue;
            TotalMo mo = complete_witness_rc20(x, *v.partial_mo);
            CHECK(all_hold(eval_model(x, mo, Model::RC20)));
            Execution d = demote(x);
            Verdict r = check_relaxed(d);
            if (r.consistent()) CHECK(all_hold(eval_model(d, complete_witness_relaxed(d, *r.partial_mo), Model::Relaxed)));
        }
    }
}

TEST_CASE("checkers match the naive oracle on random executions") {
    for (std::uint64_t s = 0; s < 600; ++s) {
        Execution x = gen_random(testing::corpus_params(s));
        CHECK(check_wra(x).consistent() == oracle::consistent(x, oracle::M::WRA));
        CHECK(check_rc20(x).consistent() == oracle::consistent(x, oracle::M::RC20));
        CHECK(check_sra_full(x).consistent() == oracle::consistent(x, oracle::M::SRA));
        Execution d = demote(x);
        CHECK(check_relaxed(d).consistent() == oracle::consistent(d, oracle::M::Relaxed));
        CHECK(check_ra(x).consistent() == oracle::consistent(strengthen(x), oracle::M::RC20));
        if (!x.has_rmw()) CHECK(check_sra_normw(x).consistent() == oracle::consistent(x, oracle::M::SRA));
    }
}
