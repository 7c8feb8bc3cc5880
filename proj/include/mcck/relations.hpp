#ifndef MCCK_RELATIONS_HPP
#define MCCK_RELATIONS_HPP

#include "execution.hpp"
#include "graph.hpp"

#include <bit>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace mcck {

// Dense binary relation over event indices, one bit row per event.
class Relation {
public:
    Relation() = default;
    explicit Relation(std::size_t n) : n_(n), w_((n + 63) / 64), bits_(n * w_, 0) {}

    static Relation identity(std::size_t n) {
        Relation r(n);
        for (std::size_t i = 0; i < n; ++i) r.set(i, i);
        return r;
    }

    std::size_t size() const { return n_; }
    std::size_t words() const { return w_; }

    bool get(std::size_t a, std::size_t b) const { return (bits_[a * w_ + b / 64] >> (b % 64)) & 1u; }
    void set(std::size_t a, std::size_t b) { bits_[a * w_ + b / 64] |= std::uint64_t{1} << (b % 64); }
    void reset(std::size_t a, std::size_t b) { bits_[a * w_ + b / 64] &= ~(std::uint64_t{1} << (b % 64)); }

    const std::uint64_t* row(std::size_t a) const { return &bits_[a * w_]; }
    std::uint64_t* row(std::size_t a) { return &bits_[a * w_]; }

    Relation& operator|=(const Relation& o) {
        for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
        return *this;
    }
    friend Relation operator|(Relation a, const Relation& b) { return a |= b; }

    Relation& operator-=(const Relation& o) {
        for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= ~o.bits_[i];
        return *this;
    }

    bool operator==(const Relation& o) const { return n_ == o.n_ && bits_ == o.bits_; }

    // this ; o
    Relation compose(const Relation& o) const {
        Relation r(n_);
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = 0; b < n_; ++b)
                if (get(a, b)) {
                    auto* dst = r.row(a);
                    const auto* src = o.row(b);
                    for (std::size_t k = 0; k < w_; ++k) dst[k] |= src[k];
                }
        return r;
    }

    Relation transpose() const {
        Relation r(n_);
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = 0; b < n_; ++b)
                if (get(a, b)) r.set(b, a);
        return r;
    }

    // R ∪ id
    Relation optional() const { return *this | identity(n_); }

    // Transitive closure (Warshall, row-parallel).
    Relation plus() const {
        Relation r = *this;
        for (std::size_t k = 0; k < n_; ++k)
            for (std::size_t a = 0; a < n_; ++a)
                if (r.get(a, k)) {
                    auto* dst = r.row(a);
                    const auto* src = r.row(k);
                    for (std::size_t j = 0; j < w_; ++j) dst[j] |= src[j];
                }
        return r;
    }

    // Restriction to pairs whose endpoints satisfy the given predicates.
    template <class P, class Q>
    Relation restrict(P dom, Q cod) const {
        Relation r(n_);
        for (std::size_t a = 0; a < n_; ++a) {
            if (!dom(a)) continue;
            for (std::size_t b = 0; b < n_; ++b)
                if (get(a, b) && cod(b)) r.set(a, b);
        }
        return r;
    }

    std::optional<std::size_t> reflexive_point() const {
        for (std::size_t a = 0; a < n_; ++a)
            if (get(a, a)) return a;
        return std::nullopt;
    }
    bool irreflexive() const { return !reflexive_point(); }

    Digraph to_graph() const {
        Digraph g(n_);
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = 0; b < n_; ++b)
                if (get(a, b)) g.add_edge(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
        return g;
    }
    bool acyclic() const { return to_graph().acyclic(); }

    std::vector<std::pair<EventIdx, EventIdx>> pairs() const {
        std::vector<std::pair<EventIdx, EventIdx>> out;
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = 0; b < n_; ++b)
                if (get(a, b)) out.emplace_back(static_cast<EventIdx>(a), static_cast<EventIdx>(b));
        return out;
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto v : bits_) c += static_cast<std::size_t>(std::popcount(v));
        return c;
    }

private:
    std::size_t n_ = 0;
    std::size_t w_ = 0;
    std::vector<std::uint64_t> bits_;
};

struct BaseRelations {
    Relation po;    // strict program order (transitive)
    Relation rf;
    Relation sw;
    Relation hb;
    Relation hbloc;
};

struct Relations : BaseRelations {
    Relation mo;
    Relation fr;
};

inline Relation po_relation(const Execution& x) {
    Relation po(x.size());
    for (std::uint32_t t = 0; t < x.num_threads(); ++t)
        for (EventIdx a = x.thread_begin(t); a < x.thread_end(t); ++a)
            for (EventIdx b = a + 1; b < x.thread_end(t); ++b) po.set(a, b);
    return po;
}

inline Relation rf_relation(const Execution& x) {
    Relation rf(x.size());
    for (EventIdx e = 0; e < x.size(); ++e)
        if (x.rf(e) != kNoEvent) rf.set(x.rf(e), e);
    return rf;
}

// sw = [E⊒rel];([F];po)?;rf⁺;(po;[F])?;[E⊒acq]
inline Relation sw_relation(const Execution& x, const Relation& po, const Relation& rf) {
    const std::size_t n = x.size();
    Relation rel(n), acq(n), rel_f(n), acq_f(n);
    for (EventIdx e = 0; e < n; ++e) {
        if (is_release(x[e].ord)) {
            rel.set(e, e);
            if (x[e].is_fence()) rel_f.set(e, e);
        }
        if (is_acquire(x[e].ord)) {
            acq.set(e, e);
            if (x[e].is_fence()) acq_f.set(e, e);
        }
    }
    Relation head = rel | rel_f.compose(po);
    Relation tail = acq | po.compose(acq_f);
    return head.compose(rf.plus()).compose(tail);
}

// hbloc keeps the hb pairs between two accesses of the same location.
inline Relation same_loc(const Execution& x, const Relation& r) {
    Relation out(x.size());
    for (EventIdx a = 0; a < x.size(); ++a) {
        if (x[a].loc < 0) continue;
        for (EventIdx b = 0; b < x.size(); ++b)
            if (r.get(a, b) && x[b].loc == x[a].loc) out.set(a, b);
    }
    return out;
}

// With relaxed_hb the happens-before is program order alone.
inline BaseRelations derive_base(const Execution& x, bool relaxed_hb = false) {
    BaseRelations r;
    r.po = po_relation(x);
    r.rf = rf_relation(x);
    if (relaxed_hb) {
        r.sw = Relation(x.size());
        r.hb = r.po;
    } else {
        r.sw = sw_relation(x, r.po, r.rf);
        r.hb = (r.po | r.sw).plus();
    }
    r.hbloc = same_loc(x, r.hb);
    return r;
}

inline Relation mo_relation(const Execution& x, const TotalMo& mo) {
    Relation r(x.size());
    for (const auto& seq : mo.per_loc)
        for (std::size_t i = 0; i < seq.size(); ++i)
            for (std::size_t j = i + 1; j < seq.size(); ++j) r.set(seq[i], seq[j]);
    return r;
}

inline Relation fr_relation(const Execution& x, const Relation& rf, const Relation& mo) {
    Relation fr = rf.transpose().compose(mo);
    for (EventIdx e = 0; e < x.size(); ++e) fr.reset(e, e);
    return fr;
}

inline Relations derive_relations(const Execution& x, const TotalMo& mo, bool relaxed_hb = false) {
    Relations r;
    static_cast<BaseRelations&>(r) = derive_base(x, relaxed_hb);
    r.mo = mo_relation(x, mo);
    r.fr = fr_relation(x, r.rf, r.mo);
    return r;
}

} // namespace mcck

#endif
