#ifndef MCCK_GRAPH_HPP
#define MCCK_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

namespace mcck {

// Plain adjacency-list digraph on nodes 0..n-1.
class Digraph {
public:
    explicit Digraph(std::size_t n = 0) : succ_(n) {}

    std::size_t size() const { return succ_.size(); }
    void add_edge(std::uint32_t u, std::uint32_t v) { succ_[u].push_back(v); }
    const std::vector<std::uint32_t>& succ(std::uint32_t u) const { return succ_[u]; }

    // Kahn's algorithm; nullopt if there is a cycle.
    std::optional<std::vector<std::uint32_t>> topo_order() const {
        std::vector<std::uint32_t> indeg(size(), 0);
        for (const auto& s : succ_)
            for (auto v : s) ++indeg[v];
        std::vector<std::uint32_t> order;
        order.reserve(size());
        for (std::uint32_t u = 0; u < size(); ++u)
            if (!indeg[u]) order.push_back(u);
        for (std::size_t i = 0; i < order.size(); ++i)
            for (auto v : succ_[order[i]])
                if (--indeg[v] == 0) order.push_back(v);
        if (order.size() != size())
            return std::nullopt;
        return order;
    }

    bool acyclic() const { return topo_order().has_value(); }

    // Some cycle, as a node list in edge order, or empty if acyclic.
    std::vector<std::uint32_t> find_cycle() const {
        const std::size_t n = size();
        std::vector<std::uint32_t> indeg(n, 0);
        for (const auto& s : succ_)
            for (auto v : s) ++indeg[v];
        std::vector<std::uint32_t> stack;
        for (std::uint32_t u = 0; u < n; ++u)
            if (!indeg[u]) stack.push_back(u);
        while (!stack.empty()) {
            auto u = stack.back();
            stack.pop_back();
            for (auto v : succ_[u])
                if (--indeg[v] == 0) stack.push_back(v);
        }
        // Nodes left with indeg > 0 each have a predecessor that is also left.
        constexpr std::uint32_t none = 0xffffffffu;
        std::vector<std::uint32_t> pred(n, none);
        std::uint32_t start = none;
        for (std::uint32_t u = 0; u < n; ++u) {
            if (!indeg[u]) continue;
            for (auto v : succ_[u])
                if (indeg[v]) {
                    pred[v] = u;
                    start = v;
                }
        }
        if (start == none)
            return {};
        std::vector<char> seen(n, 0);
        auto v = start;
        while (!seen[v]) {
            seen[v] = 1;
            v = pred[v];
        }
        std::vector<std::uint32_t> cycle{v};
        for (auto u = pred[v]; u != v; u = pred[u])
            cycle.push_back(u);
        std::reverse(cycle.begin(), cycle.end());
        return cycle;
    }

    // Is v reachable from u (u itself counts)?
    bool reaches(std::uint32_t u, std::uint32_t v) const {
        if (u == v) return true;
        std::vector<char> seen(size(), 0);
        std::vector<std::uint32_t> stack{u};
        seen[u] = 1;
        while (!stack.empty()) {
            auto a = stack.back();
            stack.pop_back();
            for (auto b : succ_[a]) {
                if (b == v) return true;
                if (!seen[b]) {
                    seen[b] = 1;
                    stack.push_back(b);
                }
            }
        }
        return false;
    }

private:
    std::vector<std::vector<std::uint32_t>> succ_;
};

} // namespace mcck

#endif
