// Landmark labelling scheme: path labels, meta-graph, and precomputed
// landmark-to-landmark shortest path graphs (delta store).
#pragma once

#include "spgq/graph.hpp"

#include <cstdint>
#include <istream>
#include <ostream>
#include <vector>

namespace spgq {

using LandmarkIndex = std::uint16_t;
constexpr LandmarkIndex kNotLandmark = 0xFFFF;

struct LandmarkSet
{
    std::vector<VertexId> landmarks;        // ordered; position defines the landmark index
    std::vector<LandmarkIndex> index_of;    // per vertex, kNotLandmark for non-landmarks

    std::size_t size() const { return landmarks.size(); }
    bool is_landmark(VertexId v) const { return index_of[v] != kNotLandmark; }
    LandmarkIndex index(VertexId v) const { return index_of[v]; }
    VertexId vertex(LandmarkIndex i) const { return landmarks[i]; }
};

// First k vertices of degree_descending(g). Throws if k is 0 or exceeds |V|.
LandmarkSet select_landmarks(const Graph &g, std::size_t k);

// Landmark set from an explicit vertex list (order kept, duplicates rejected).
LandmarkSet make_landmark_set(const Graph &g, std::vector<VertexId> landmarks);

struct LabelEntry
{
    LandmarkIndex landmark;
    Distance dist;

    bool operator==(const LabelEntry &) const = default;
};

// Per non-landmark vertex, entries (r, d_G(v,r)) for exactly the landmarks r
// reachable by some shortest path avoiding all other landmarks.
// Entries are sorted by landmark index.
class PathLabels
{
public:
    PathLabels() = default;
    PathLabels(std::vector<std::uint32_t> offsets, std::vector<LabelEntry> entries)
        : offsets_(std::move(offsets)), entries_(std::move(entries)) {}

    std::span<const LabelEntry> of(VertexId v) const
    {
        return {entries_.data() + offsets_[v], entries_.data() + offsets_[v + 1]};
    }

    // kInfDistance when the vertex has no entry for this landmark
    Distance distance_to(VertexId v, LandmarkIndex r) const;

    std::size_t entry_count() const { return entries_.size(); }

private:
    std::vector<std::uint32_t> offsets_; // |V|+1
    std::vector<LabelEntry> entries_;
};

struct MetaEdge
{
    LandmarkIndex a, b; // a < b
    Distance weight;    // d_G(r_a, r_b)

    bool operator==(const MetaEdge &) const = default;
};

// Weighted overlay on landmarks; an edge means some shortest path between its
// endpoints avoids all other landmarks. Holds the APSP table and, per landmark
// pair, the meta-edges lying on shortest meta-paths.
class MetaGraph
{
public:
    MetaGraph() = default;
    MetaGraph(std::size_t landmark_count, std::vector<MetaEdge> edges);

    std::size_t landmark_count() const { return landmark_count_; }
    const std::vector<MetaEdge> &edges() const { return edges_; }

    Distance distance(LandmarkIndex i, LandmarkIndex j) const
    {
        return dist_[static_cast<std::size_t>(i) * landmark_count_ + j];
    }

    // ids into edges() of the meta-edges on shortest i-j meta-paths
    std::span<const std::uint32_t> spg_edges(LandmarkIndex i, LandmarkIndex j) const;

    // direct edge weight lookup, kInfDistance when (i,j) is not a meta-edge
    Distance edge_weight(LandmarkIndex i, LandmarkIndex j) const;
    std::int64_t edge_id(LandmarkIndex i, LandmarkIndex j) const;

private:
    std::size_t landmark_count_ = 0;
    std::vector<MetaEdge> edges_;            // sorted by (a, b)
    std::vector<Distance> dist_;             // k*k APSP matrix
    std::vector<std::vector<std::uint32_t>> spg_; // per unordered pair (i<j)
    std::vector<std::int64_t> edge_id_;      // k*k, -1 when absent

    std::size_t pair_index(LandmarkIndex i, LandmarkIndex j) const;

    friend void meta_apsp(MetaGraph &meta);
};

// Fill the APSP table (Floyd-Warshall) and the per-pair shortest-path meta-edge
// sets of a meta-graph whose edges are already populated.
void meta_apsp(MetaGraph &meta);

// Per meta-edge: the graph edges of all shortest paths between its landmark
// endpoints that avoid other landmarks.
class DeltaStore
{
public:
    DeltaStore() = default;
    explicit DeltaStore(std::vector<std::vector<Edge>> edge_sets)
        : edge_sets_(std::move(edge_sets)) {}

    std::span<const Edge> of(std::uint32_t meta_edge_id) const
    {
        return edge_sets_[meta_edge_id];
    }
    std::size_t meta_edge_count() const { return edge_sets_.size(); }
    std::uint64_t total_edges() const;

private:
    std::vector<std::vector<Edge>> edge_sets_; // aligned with MetaGraph::edges()
};

DeltaStore build_delta(const Graph &g, const LandmarkSet &landmark_set,
                       const PathLabels &labels, const MetaGraph &meta);

struct LabellingScheme
{
    std::uint32_t vertex_count = 0;
    LandmarkSet landmark_set;
    PathLabels labels;
    MetaGraph meta;
    DeltaStore delta;
};

// Output of one landmark-rooted BFS: labels assigned by this landmark and the
// meta-edges incident to it.
struct LandmarkBfsResult
{
    std::vector<std::pair<VertexId, Distance>> labels;        // sorted by vertex
    std::vector<std::pair<LandmarkIndex, Distance>> meta_edges; // other endpoint, weight
};

// Two-queue level-synchronous BFS from landmark r: vertices first reached
// through a landmark-free lineage are labelled; landmarks reached that way
// become meta-edges. The labelled-frontier expands before the non-labelled one
// at every level.
LandmarkBfsResult landmark_bfs(const Graph &g, VertexId r, const LandmarkSet &landmark_set);

// Run landmark_bfs for every landmark (thread_budget workers), merge
// deterministically, then compute meta APSP and the delta store. The result is
// identical for any thread budget.
LabellingScheme build_labelling(const Graph &g, LandmarkSet landmark_set,
                                unsigned thread_budget = 1);

struct DecodeError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

// Versioned little-endian index format; returns bytes written.
// The APSP table and meta shortest-path sets are recomputed on load.
std::uint64_t serialize(const LabellingScheme &scheme, std::ostream &out);
LabellingScheme deserialize(std::istream &in);

// Documented size accounting: k bytes of label capacity per vertex.
std::uint64_t labelling_size_bytes(const LabellingScheme &scheme);
// Serialized byte count of the delta payload.
std::uint64_t delta_size_bytes(const LabellingScheme &scheme);

} // namespace spgq
