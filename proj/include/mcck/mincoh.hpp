#ifndef MCCK_MINCOH_HPP
#define MCCK_MINCOH_HPP

#include "execution.hpp"
#include "relations.hpp"

#include <optional>

namespace mcck {

inline Relation partial_mo_relation(const Execution& x, const PartialMo& pm) {
    Relation r(x.size());
    for (auto [a, b] : pm.pairs) r.set(a, b);
    return r;
}

namespace detail {

// (w', r) ∈ rf?;hb for each pair, as a relation.
inline Relation rf_opt_hb(const BaseRelations& b) { return b.rf.optional().compose(b.hb); }

} // namespace detail

// Number (1 or 2) of the first failing condition, or nullopt when minimally
// coherent. Condition 1 is checked for sources in rf?;hb, which implies the
// plain hb form.
inline std::optional<int> sra_minimal_coherence(const Execution& x, const BaseRelations& b, const PartialMo& pm) {
    Relation m = partial_mo_relation(x, pm);
    Relation reach = (b.hb | m).plus();
    Relation src = detail::rf_opt_hb(b);
    int failed = 0;
    for_each_triplet(x, [&](const Triplet& t) {
        if (failed) return;
        if (src.get(t.w2, t.r) && !reach.get(t.w2, t.w)) failed = 1;
    });
    if (failed) return failed;
    if (!reach.irreflexive()) return 2;
    return std::nullopt;
}

// Conditions 1-3 for RC20; pass relaxed base relations (hb = po) for the
// Relaxed variant.
inline std::optional<int> rc20_minimal_coherence(const Execution& x, const BaseRelations& b, const PartialMo& pm) {
    const RfChains ch = build_rf_chains(x);
    Relation m = partial_mo_relation(x, pm);
    Relation rf_plus = b.rf.plus();
    Relation per_loc = same_loc(x, b.rf | b.hb | m);
    Relation reach = per_loc.plus();
    Relation src = detail::rf_opt_hb(b);
    int failed = 0;
    for_each_triplet(x, [&](const Triplet& t) {
        if (failed) return;
        if (src.get(t.w2, t.r) && !rf_plus.get(t.w2, t.w) && !reach.get(t.w2, ch.tc[t.w])) failed = 1;
    });
    if (failed) return failed;
    for (auto [a, c] : pm.pairs)
        if (!rf_plus.get(a, c) && !m.get(a, ch.tc[c])) return 2;
    if (!reach.irreflexive()) return 3;
    return std::nullopt;
}

} // namespace mcck

#endif
