// Comparison methods and the ground-truth oracle: pruned path labelling (with
// and without parent sets), bidirectional BFS, and the double-BFS oracle.
#pragma once

#include "spgq/search.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace spgq {

struct PplEntry
{
    VertexId hub;
    Distance dist;

    bool operator==(const PplEntry &) const = default;
};

enum class PruneMode
{
    path_cover,     // keep labels on distance ties (2-hop path cover)
    distance_cover, // prune on ties as well (plain distance labelling)
};

// 2-hop labels built by pruned BFSs over a vertex order. Entries are sorted by
// hub id; self entries are implicit.
class PplLabels
{
public:
    PplLabels() = default;
    explicit PplLabels(std::uint32_t vertex_count)
        : labels_(vertex_count), was_root_(vertex_count, false) {}

    std::span<const PplEntry> of(VertexId v) const { return labels_[v]; }
    std::uint32_t vertex_count() const { return static_cast<std::uint32_t>(labels_.size()); }
    std::size_t entry_count() const;

    // 2-hop distance over labels, including implicit self entries
    Distance query_distance(VertexId u, VertexId v) const;

    // landmarks minimizing delta_ur + delta_vr, endpoints excluded
    std::vector<VertexId> hubs(VertexId u, VertexId v) const;

    void add(VertexId v, VertexId hub, Distance dist);
    bool was_root(VertexId v) const { return was_root_[v]; }
    void mark_root(VertexId v) { was_root_[v] = true; }

    // the vertex order the labels were built over
    const std::vector<VertexId> &order() const { return order_; }
    void set_order(std::vector<VertexId> order) { order_ = std::move(order); }

private:
    std::vector<std::vector<PplEntry>> labels_;
    std::vector<bool> was_root_;
    std::vector<VertexId> order_;
};

// One pruned BFS from root, appending labels (root, depth) to every vertex the
// existing labels do not already cover strictly better. Expansion stops at
// vertices that were earlier roots; a tie at a not-yet-processed vertex is
// labelled and expanded, which keeps every shortest path covered. Under
// distance_cover, ties are pruned entirely and never expanded.
void pruned_bfs(const Graph &g, VertexId root, PplLabels &labels,
                PruneMode mode = PruneMode::path_cover);

// Sequential pruned BFSs over the given vertex order (a permutation of V).
// Returns nullopt if the wall-clock budget runs out.
std::optional<PplLabels> ppl_build(const Graph &g, std::span<const VertexId> order,
                                   PruneMode mode = PruneMode::path_cover,
                                   double time_budget_s = -1.0);

// Recursive hub expansion; base case d = 1 emits the edge. Sub-queries are
// deduplicated per query unless memoize is false.
SpgResult ppl_query(const PplLabels &labels, const Graph &g, VertexId u, VertexId v,
                    bool memoize = true);

struct ParentPplEntry
{
    VertexId hub;
    Distance dist;
    std::vector<VertexId> parents; // neighbors of the vertex one hop closer to hub
};

class ParentPplLabels
{
public:
    ParentPplLabels() = default;
    explicit ParentPplLabels(std::uint32_t vertex_count)
        : labels_(vertex_count), was_root_(vertex_count, false) {}

    std::span<const ParentPplEntry> of(VertexId v) const { return labels_[v]; }
    std::uint32_t vertex_count() const { return static_cast<std::uint32_t>(labels_.size()); }
    std::size_t entry_count() const;
    std::size_t parent_count() const;

    Distance query_distance(VertexId u, VertexId v) const;
    std::vector<VertexId> hubs(VertexId u, VertexId v) const;
    const ParentPplEntry *find(VertexId v, VertexId hub) const;

    void add(VertexId v, VertexId hub, Distance dist, std::vector<VertexId> parents);
    bool was_root(VertexId v) const { return was_root_[v]; }
    void mark_root(VertexId v) { was_root_[v] = true; }

private:
    std::vector<std::vector<ParentPplEntry>> labels_;
    std::vector<bool> was_root_;
};

std::optional<ParentPplLabels> parentppl_build(const Graph &g, std::span<const VertexId> order,
                                               double time_budget_s = -1.0);

SpgResult parentppl_query(const ParentPplLabels &labels, const Graph &g, VertexId u, VertexId v);

// Unbounded bidirectional BFS on the full graph plus reverse search.
class BiBfsQuerier
{
public:
    explicit BiBfsQuerier(const Graph &g);
    SpgResult query(VertexId u, VertexId v);

private:
    const Graph &g_;
    std::vector<std::uint32_t> mark_[2]; // (generation << 16) | depth
    std::vector<VertexId> frontier_[2], next_[2], level1_[2];
    std::vector<std::uint32_t> aux_stamp_;
    std::uint16_t generation_ = 0;
    std::uint32_t aux_generation_ = 0;
};

SpgResult bibfs_spg(const Graph &g, VertexId u, VertexId v);

// Ground truth: full BFS from both endpoints; an edge is in the answer iff its
// endpoint distances sum to the pair distance in some orientation.
SpgResult oracle_spg(const Graph &g, VertexId u, VertexId v);

// Visit every shortest u-v path (vertex sequence from u to v), stopping after
// cap paths. Returns false when the cap was hit with paths still unvisited.
bool enumerate_shortest_paths(const Graph &g, VertexId u, VertexId v, std::uint64_t cap,
                              const std::function<void(std::span<const VertexId>)> &visit);

enum class CoverVerdict
{
    pass,
    fail,
    inconclusive, // enumeration cap exceeded before all paths were checked
};

struct CoverCheckResult
{
    CoverVerdict verdict = CoverVerdict::pass;
    VertexId u = 0, v = 0;                  // first counterexample pair when failed
    std::vector<VertexId> witness_path;     // a shortest path with no common hub
};

// Check the 2-hop path cover property by enumerating up to path_cap shortest
// paths per pair and requiring a common internal hub on each.
CoverCheckResult check_2hop_path_cover(const Graph &g, const PplLabels &labels,
                                       std::uint64_t path_cap = 1'000'000);

} // namespace spgq
