#include "af2db/error.hpp"
#include "af2db/translate.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

namespace af2db::translate {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Misra-Gries state: a (max degree + 1)-color palette, with per-vertex
// color -> edge slots so "is color c free at v" is O(1).
class MisraGries {
public:
    MisraGries(std::size_t vertex_count, const std::vector<std::pair<std::size_t, std::size_t>>& edges)
        : edges_(edges), adjacency_(vertex_count) {
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            const auto [u, v] = edges_[e];
            if (u == v || u >= vertex_count || v >= vertex_count)
                throw Error("edge coloring needs a loop-free graph over known vertices");
            adjacency_[u].push_back({v, e});
            adjacency_[v].push_back({u, e});
        }
        std::size_t max_degree = 0;
        for (const auto& nbrs : adjacency_)
            max_degree = std::max(max_degree, nbrs.size());
        palette_ = max_degree + 1;
        slot_.assign(vertex_count, std::vector<std::size_t>(palette_, kNone));
        color_.assign(edges_.size(), kNone);
    }

    std::vector<std::size_t> run() {
        for (std::size_t e = 0; e < edges_.size(); ++e)
            color_edge(e);
        return color_;
    }

private:
    bool is_free(std::size_t v, std::size_t c) const { return slot_[v][c] == kNone; }

    std::size_t some_free(std::size_t v) const {
        for (std::size_t c = 0; c < palette_; ++c)
            if (is_free(v, c))
                return c;
        throw std::logic_error("no free color; palette is too small");
    }

    std::size_t other_end(std::size_t e, std::size_t v) const {
        return edges_[e].first == v ? edges_[e].second : edges_[e].first;
    }

    std::size_t edge_between(std::size_t u, std::size_t v) const {
        for (const auto& [w, e] : adjacency_[u])
            if (w == v)
                return e;
        throw std::logic_error("no such edge");
    }

    void uncolor(std::size_t e) {
        if (color_[e] == kNone)
            return;
        slot_[edges_[e].first][color_[e]] = kNone;
        slot_[edges_[e].second][color_[e]] = kNone;
        color_[e] = kNone;
    }

    void paint(std::size_t e, std::size_t c) {
        uncolor(e);
        const auto [u, v] = edges_[e];
        if (!is_free(u, c) || !is_free(v, c))
            throw std::logic_error("color clash while painting");
        slot_[u][c] = e;
        slot_[v][c] = e;
        color_[e] = c;
    }

    // Maximal fan of u starting at v: (u, fan[0]) is uncolored and the color of
    // (u, fan[i+1]) is free on fan[i].
    std::vector<std::size_t> build_fan(std::size_t u, std::size_t v) const {
        std::vector<std::size_t> fan{v};
        std::vector<bool> in_fan(adjacency_.size(), false);
        in_fan[v] = true;
        bool grew = true;
        while (grew) {
            grew = false;
            for (const auto& [x, e] : adjacency_[u]) {
                if (in_fan[x] || color_[e] == kNone || !is_free(fan.back(), color_[e]))
                    continue;
                fan.push_back(x);
                in_fan[x] = true;
                grew = true;
                break;
            }
        }
        return fan;
    }

    // Swap c and d along the maximal path from u whose edges alternate d, c, d, ...
    void invert_path(std::size_t u, std::size_t c, std::size_t d) {
        if (c == d)
            return;
        std::vector<std::size_t> path;
        std::size_t at = u;
        std::size_t want = d;
        while (slot_[at][want] != kNone) {
            const std::size_t e = slot_[at][want];
            path.push_back(e);
            at = other_end(e, at);
            want = want == d ? c : d;
        }
        std::vector<std::size_t> old(path.size());
        for (std::size_t i = 0; i < path.size(); ++i) {
            old[i] = color_[path[i]];
            uncolor(path[i]);
        }
        for (std::size_t i = 0; i < path.size(); ++i)
            paint(path[i], old[i] == c ? d : c);
    }

    bool fan_prefix_valid(std::size_t u, const std::vector<std::size_t>& fan, std::size_t last) const {
        if (color_[edge_between(u, fan[0])] != kNone)
            return false;
        for (std::size_t i = 1; i <= last; ++i) {
            const auto col = color_[edge_between(u, fan[i])];
            if (col == kNone || !is_free(fan[i - 1], col))
                return false;
        }
        return true;
    }

    void color_edge(std::size_t e) {
        const auto [u, v] = edges_[e];
        const auto fan = build_fan(u, v);
        const std::size_t c = some_free(u);
        const std::size_t d = some_free(fan.back());
        invert_path(u, c, d);

        std::size_t w = kNone;
        for (std::size_t i = 0; i < fan.size() && w == kNone; ++i)
            if (is_free(fan[i], d) && fan_prefix_valid(u, fan, i))
                w = i;
        if (w == kNone)
            throw std::logic_error("Misra-Gries: no fan vertex with a free color");

        // Rotate the fan prefix: each edge takes the color of its successor.
        std::vector<std::size_t> fan_edges(w + 1);
        std::vector<std::size_t> shifted(w + 1, kNone);
        for (std::size_t i = 0; i <= w; ++i)
            fan_edges[i] = edge_between(u, fan[i]);
        for (std::size_t i = 0; i < w; ++i)
            shifted[i] = color_[fan_edges[i + 1]];
        for (auto fe : fan_edges)
            uncolor(fe);
        for (std::size_t i = 0; i < w; ++i)
            paint(fan_edges[i], shifted[i]);
        paint(fan_edges[w], d);
    }

    std::vector<std::pair<std::size_t, std::size_t>> edges_;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency_; // (neighbour, edge)
    std::size_t palette_ = 1;
    std::vector<std::vector<std::size_t>> slot_;
    std::vector<std::size_t> color_;
};

} // namespace

std::size_t EdgeColoring::color_count() const {
    if (color_of.empty())
        return 0;
    return *std::max_element(color_of.begin(), color_of.end()) + 1;
}

std::vector<std::size_t> misra_gries(std::size_t vertex_count,
                                     const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    return MisraGries(vertex_count, edges).run();
}

EdgeColoring edge_color(const std::vector<Conflict>& conflicts, const af::ArgumentationFramework& af) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    edges.reserve(conflicts.size());
    for (const auto& conflict : conflicts)
        edges.emplace_back(af.require_index(conflict.first), af.require_index(conflict.second));
    const auto raw = misra_gries(af.size(), edges);

    std::map<std::size_t, std::size_t> renumber;
    EdgeColoring out;
    out.color_of.reserve(raw.size());
    for (auto c : raw)
        out.color_of.push_back(renumber.emplace(c, renumber.size()).first->second);
    return out;
}

bool is_proper(const std::vector<Conflict>& conflicts, const EdgeColoring& coloring) {
    if (coloring.color_of.size() != conflicts.size())
        return false;
    std::vector<bool> used(coloring.color_count(), false);
    std::map<std::pair<std::string, std::size_t>, std::size_t> seen; // (endpoint, color) -> uses
    for (std::size_t i = 0; i < conflicts.size(); ++i) {
        const auto c = coloring.color_of[i];
        used[c] = true;
        for (const auto* endpoint : {&conflicts[i].first, &conflicts[i].second})
            if (++seen[{*endpoint, c}] > 1)
                return false;
    }
    return std::all_of(used.begin(), used.end(), [](bool b) { return b; });
}

} // namespace af2db::translate
