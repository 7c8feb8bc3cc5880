// Naive reference implementations used only by the tests. Everything here is
// written directly from the definitions on boolean matrices and shares no
// code with the library beyond the Execution type.
#ifndef MCCK_TESTS_ORACLES_HPP
#define MCCK_TESTS_ORACLES_HPP

#include "mcck/execution.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

namespace oracle {

using mcck::EventIdx;
using mcck::Execution;
using mcck::kNoEvent;
using mcck::Op;

using Mat = std::vector<std::vector<char>>;

inline Mat empty(std::size_t n) { return Mat(n, std::vector<char>(n, 0)); }

inline Mat closure(Mat m) {
    const std::size_t n = m.size();
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (m[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (m[k][j]) m[i][j] = 1;
    return m;
}

inline Mat unite(const Mat& a, const Mat& b) {
    Mat c = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) c[i][j] |= b[i][j];
    return c;
}

inline Mat compose(const Mat& a, const Mat& b) {
    const std::size_t n = a.size();
    Mat c = empty(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            if (a[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (b[k][j]) c[i][j] = 1;
    return c;
}

inline Mat refl(Mat a) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i][i] = 1;
    return a;
}

inline bool irreflexive(const Mat& a) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i][i]) return false;
    return true;
}

// DFS with colours.
inline bool acyclic(const Mat& a) {
    const std::size_t n = a.size();
    std::vector<int> colour(n, 0);
    std::function<bool(std::size_t)> dfs = [&](std::size_t u) {
        colour[u] = 1;
        for (std::size_t v = 0; v < n; ++v) {
            if (!a[u][v]) continue;
            if (colour[v] == 1) return false;
            if (colour[v] == 0 && !dfs(v)) return false;
        }
        colour[u] = 2;
        return true;
    };
    for (std::size_t u = 0; u < n; ++u)
        if (colour[u] == 0 && !dfs(u)) return false;
    return true;
}

inline Mat po(const Execution& x) {
    Mat m = empty(x.size());
    for (EventIdx a = 0; a < x.size(); ++a)
        for (EventIdx b = 0; b < x.size(); ++b)
            if (x[a].tid == x[b].tid && x[a].idx < x[b].idx) m[a][b] = 1;
    return m;
}

inline Mat rf(const Execution& x) {
    Mat m = empty(x.size());
    for (EventIdx e = 0; e < x.size(); ++e)
        if (x.rf(e) != kNoEvent) m[x.rf(e)][e] = 1;
    return m;
}

// sw from its definition, enumerating the optional fence legs explicitly.
inline Mat sw(const Execution& x) {
    const std::size_t n = x.size();
    const Mat p = po(x);
    const Mat rfp = closure(rf(x));
    Mat m = empty(n);
    for (EventIdx a = 0; a < n; ++a) {
        if (!mcck::is_release(x[a].ord)) continue;
        for (EventIdx b = 0; b < n; ++b) {
            if (!mcck::is_acquire(x[b].ord)) continue;
            for (EventIdx a2 = 0; a2 < n && !m[a][b]; ++a2) {
                if (!(a2 == a || (x[a].is_fence() && p[a][a2]))) continue;
                for (EventIdx b2 = 0; b2 < n; ++b2) {
                    if (!(b2 == b || (x[b].is_fence() && p[b2][b]))) continue;
                    if (rfp[a2][b2]) {
                        m[a][b] = 1;
                        break;
                    }
                }
            }
        }
    }
    return m;
}

inline Mat hb(const Execution& x, bool relaxed = false) {
    if (relaxed) return po(x);
    return closure(unite(po(x), sw(x)));
}

inline Mat mo(const Execution& x, const std::vector<std::vector<EventIdx>>& per_loc) {
    Mat m = empty(x.size());
    for (const auto& seq : per_loc)
        for (std::size_t i = 0; i < seq.size(); ++i)
            for (std::size_t j = i + 1; j < seq.size(); ++j) m[seq[i]][seq[j]] = 1;
    return m;
}

// HB_e(t) by counting: the largest idx of a thread-t event hb?-before e.
inline std::uint32_t hb_count(const Execution& x, const Mat& h, EventIdx e, std::uint32_t t) {
    std::uint32_t best = 0;
    for (EventIdx a = 0; a < x.size(); ++a)
        if (x[a].tid == t && (a == e || h[a][e])) best = std::max(best, x[a].idx);
    return best;
}

inline std::optional<EventIdx> last_write_before(const Execution& x, std::uint32_t t, std::int32_t loc, std::uint32_t c) {
    std::optional<EventIdx> out;
    for (EventIdx e = 0; e < x.size(); ++e)
        if (x[e].tid == t && x[e].idx <= c && x[e].loc == loc && x[e].is_write()) out = e;
    return out;
}

inline std::optional<EventIdx> last_read_before(const Execution& x, std::uint32_t t, std::int32_t loc, std::uint32_t c) {
    std::optional<EventIdx> out;
    for (EventIdx e = 0; e < x.size(); ++e)
        if (x[e].tid == t && x[e].idx <= c && x[e].loc == loc && x[e].is_read()) out = e;
    return out;
}

inline bool porf_acyclic(const Execution& x) { return acyclic(unite(po(x), rf(x))); }

// Top and position of e's rf-chain by following rf links upwards.
inline std::pair<EventIdx, std::uint32_t> chain_of(const Execution& x, EventIdx e) {
    std::uint32_t pc = 0;
    while (x[e].op == Op::Rmw) {
        e = x.rf(e);
        ++pc;
    }
    return {e, pc};
}

enum class M { SC, SRA, RA, WRA, RC20, Relaxed };

// Model axioms for one explicit mo.
inline bool axioms_hold(const Execution& x, const Mat& m, M model) {
    const std::size_t n = x.size();
    const Mat p = po(x), r = rf(x);
    const Mat h = hb(x, model == M::Relaxed);
    Mat rinv = empty(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) rinv[i][j] = r[j][i];
    Mat fr = compose(rinv, m);
    for (std::size_t i = 0; i < n; ++i) fr[i][i] = 0;
    auto wcoh = [&] { return irreflexive(compose(m, compose(refl(r), refl(h)))); };
    auto rcoh = [&] { return irreflexive(compose(fr, compose(refl(r), h))); };
    auto atom = [&] { return irreflexive(compose(fr, m)); };
    switch (model) {
    case M::SC:
        return acyclic(unite(unite(p, r), unite(m, fr)));
    case M::SRA:
        return acyclic(unite(h, m)) && rcoh() && atom();
    case M::RA:
        return wcoh() && rcoh() && atom();
    case M::RC20:
    case M::Relaxed:
        return wcoh() && rcoh() && atom() && porf_acyclic(x);
    case M::WRA:
        break;
    }
    return true;
}

// irr(hbloc;[W];hb;rf⁻¹), no two RMWs on one writer, acy(po ∪ rf).
inline bool wra(const Execution& x) {
    const std::size_t n = x.size();
    const Mat h = hb(x);
    for (EventIdx r = 0; r < n; ++r) {
        if (!x[r].is_read()) continue;
        const EventIdx w = x.rf(r);
        for (EventIdx a = 0; a < n; ++a)
            if (a != w && x[a].is_write() && x[a].loc == x[w].loc && h[w][a] && h[a][r]) return false;
    }
    for (EventIdx a = 0; a < n; ++a)
        for (EventIdx b = a + 1; b < n; ++b)
            if (x[a].op == Op::Rmw && x[b].op == Op::Rmw && x.rf(a) == x.rf(b)) return false;
    return porf_acyclic(x);
}

// Calls f for every total mo; stops when f returns true.
inline bool for_each_mo(const Execution& x, const std::function<bool(const std::vector<std::vector<EventIdx>>&)>& f) {
    std::vector<std::vector<EventIdx>> per(x.num_locs());
    for (EventIdx e = 0; e < x.size(); ++e)
        if (x[e].is_write()) per[x[e].loc].push_back(e);
    std::function<bool(std::size_t)> rec = [&](std::size_t l) -> bool {
        if (l == per.size()) return f(per);
        std::sort(per[l].begin(), per[l].end());
        do {
            if (rec(l + 1)) return true;
        } while (std::next_permutation(per[l].begin(), per[l].end()));
        return false;
    };
    return rec(0);
}

inline bool consistent(const Execution& x, M model) {
    if (model == M::WRA) return wra(x);
    return for_each_mo(x, [&](const auto& per) { return axioms_hold(x, mo(x, per), model); });
}

// Pairs common to every passing mo.
inline Mat witness_intersection(const Execution& x, M model, bool& any) {
    Mat inter;
    any = false;
    for_each_mo(x, [&](const auto& per) {
        Mat m = mo(x, per);
        if (!axioms_hold(x, m, model)) return false;
        if (!any) inter = m;
        else
            for (std::size_t i = 0; i < m.size(); ++i)
                for (std::size_t j = 0; j < m.size(); ++j) inter[i][j] &= m[i][j];
        any = true;
        return false;
    });
    return inter;
}

} // namespace oracle

#endif
