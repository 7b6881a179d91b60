#include "temporeach/tgraph.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "temporeach/errors.hpp"

namespace temporeach {

namespace {

std::string edge_name(Vertex u, Vertex v) {
    return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

}  // namespace

TemporalGraph::TemporalGraph(int n, std::vector<EdgeSpec> edges) : n_(n) {
    if (n < 0) throw InvalidInput("negative vertex count");
    for (auto& s : edges) {
        if (s.u == s.v) throw InvalidInput("self-loop at vertex " + std::to_string(s.u));
        if (s.u > s.v) std::swap(s.u, s.v);
        if (s.u < 0 || s.v >= n)
            throw InvalidInput("edge " + edge_name(s.u, s.v) + " out of range for n=" + std::to_string(n));
        if (s.labels.empty()) throw InvalidInput("edge " + edge_name(s.u, s.v) + " has no labels");
        for (std::size_t i = 0; i < s.labels.size(); ++i) {
            if (s.labels[i] < 1) throw InvalidInput("edge " + edge_name(s.u, s.v) + " has label < 1");
            if (i > 0 && s.labels[i] <= s.labels[i - 1])
                throw InvalidInput("edge " + edge_name(s.u, s.v) + " labels not strictly increasing");
        }
    }
    std::sort(edges.begin(), edges.end(),
              [](const EdgeSpec& a, const EdgeSpec& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v)
            throw InvalidInput("duplicate edge " + edge_name(edges[i].u, edges[i].v));

    edges_.reserve(edges.size());
    label_begin_.reserve(edges.size() + 1);
    label_begin_.push_back(0);
    std::vector<std::size_t> deg(n + 1, 0);
    for (const auto& s : edges) {
        edges_.push_back({s.u, s.v});
        label_pool_.insert(label_pool_.end(), s.labels.begin(), s.labels.end());
        label_begin_.push_back(label_pool_.size());
        lifetime_ = std::max(lifetime_, s.labels.back());
        temporality_ = std::max(temporality_, static_cast<int>(s.labels.size()));
        ++deg[s.u];
        ++deg[s.v];
    }
    adj_begin_.assign(n + 1, 0);
    for (int v = 0; v < n; ++v) adj_begin_[v + 1] = adj_begin_[v] + deg[v];
    adj_.resize(adj_begin_[n]);
    std::vector<std::size_t> fill(adj_begin_.begin(), adj_begin_.end() - 1);
    for (EdgeId e = 0; e < edge_count(); ++e) {
        adj_[fill[edges_[e].u]++] = {edges_[e].v, e};
        adj_[fill[edges_[e].v]++] = {edges_[e].u, e};
    }
    for (int v = 0; v < n; ++v)
        std::sort(adj_.begin() + adj_begin_[v], adj_.begin() + adj_begin_[v + 1],
                  [](const Incidence& a, const Incidence& b) { return a.neighbor < b.neighbor; });
}

std::span<const Time> TemporalGraph::labels(EdgeId e) const {
    return {label_pool_.data() + label_begin_[e], label_begin_[e + 1] - label_begin_[e]};
}

std::optional<EdgeId> TemporalGraph::find_edge(Vertex a, Vertex b) const {
    if (a < 0 || b < 0 || a >= n_ || b >= n_ || a == b) return std::nullopt;
    auto inc = incident(a);
    auto it = std::lower_bound(inc.begin(), inc.end(), b,
                               [](const Incidence& x, Vertex w) { return x.neighbor < w; });
    if (it != inc.end() && it->neighbor == b) return it->edge;
    return std::nullopt;
}

std::span<const Incidence> TemporalGraph::incident(Vertex v) const {
    return {adj_.data() + adj_begin_[v], adj_begin_[v + 1] - adj_begin_[v]};
}

int TemporalGraph::max_degree() const noexcept {
    int best = 0;
    for (int v = 0; v < n_; ++v) best = std::max(best, static_cast<int>(adj_begin_[v + 1] - adj_begin_[v]));
    return best;
}

bool TemporalGraph::is_connected() const {
    if (n_ <= 1) return true;
    std::vector<char> seen(n_, 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        Vertex x = stack.back();
        stack.pop_back();
        for (const auto& inc : incident(x))
            if (!seen[inc.neighbor]) {
                seen[inc.neighbor] = 1;
                ++count;
                stack.push_back(inc.neighbor);
            }
    }
    return count == n_;
}

bool TemporalGraph::is_tree() const {
    return n_ >= 1 && edge_count() == n_ - 1 && is_connected();
}

TemporalGraph TemporalGraph::with_labels(std::vector<std::vector<Time>> lists) const {
    if (static_cast<int>(lists.size()) != edge_count()) throw InvalidInput("label list count mismatch");
    std::vector<EdgeSpec> specs;
    specs.reserve(edges_.size());
    for (EdgeId e = 0; e < edge_count(); ++e) specs.push_back({edges_[e].u, edges_[e].v, std::move(lists[e])});
    return TemporalGraph(n_, std::move(specs));
}

std::vector<EdgeSpec> TemporalGraph::specs() const {
    std::vector<EdgeSpec> out;
    out.reserve(edges_.size());
    for (EdgeId e = 0; e < edge_count(); ++e) {
        auto l = labels(e);
        out.push_back({edges_[e].u, edges_[e].v, {l.begin(), l.end()}});
    }
    return out;
}

bool TemporalGraph::operator==(const TemporalGraph& o) const {
    return n_ == o.n_ && edges_ == o.edges_ && label_begin_ == o.label_begin_ && label_pool_ == o.label_pool_;
}

}  // namespace temporeach
