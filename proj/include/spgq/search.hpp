// Exact shortest-path-graph queries: sketch-bounded bidirectional search on
// the landmark-sparsified graph, reverse search, and label-guided recovery.
#pragma once

#include "spgq/sketch.hpp"

#include <vector>

namespace spgq {

struct SpgResult
{
    Distance distance = kInfDistance;
    std::vector<Edge> edges;       // sorted, unique
    std::vector<VertexId> vertices; // endpoint set; {u} when distance is 0

    bool operator==(const SpgResult &) const = default;
};

enum class BidirStatus
{
    not_run,        // skipped (landmark endpoint)
    met,            // frontiers intersected: sparsified distance = d_u + d_v
    bound_exceeded, // d_u + d_v reached d_top without meeting
    exhausted,      // a frontier emptied: sparsified distance is infinite
};

struct BidirOutcome
{
    BidirStatus status = BidirStatus::not_run;
    Distance d_u = 0, d_v = 0;   // completed levels per side
    std::vector<VertexId> meet;  // nonempty iff met

    Distance sparsified_distance() const
    {
        return status == BidirStatus::met ? static_cast<Distance>(d_u + d_v) : kInfDistance;
    }
};

struct Anchor
{
    VertexId w;
    LandmarkIndex landmark;
    Distance label_dist; // delta_wr, the remaining descent distance
    bool side_u;         // which depth map w belongs to

    bool operator==(const Anchor &) const = default;
};

// Distance and coverage internals of one query, used for pair classification.
struct QueryProbe
{
    Distance distance = kInfDistance;    // d_G(u, v)
    Distance d_top = kInfDistance;       // sketch upper bound
    BidirStatus bidir_status = BidirStatus::not_run;
    Distance sparsified_distance = kInfDistance; // valid when met
};

// Answers SPG(u, v) against one immutable graph + scheme. Holds per-instance
// scratch (generation-stamped depth maps), so concurrent queries need one
// querier per thread.
class SpgQuerier
{
public:
    SpgQuerier(const Graph &g, const LabellingScheme &scheme);

    SpgResult query(VertexId u, VertexId v);

    // distance-only pipeline, no edge reconstruction
    QueryProbe probe(VertexId u, VertexId v);

    // Staged interface. A bidirectional_search invalidates the state of any
    // previous call; reverse/anchor/recover operate on the latest search.
    BidirOutcome bidirectional_search(VertexId u, VertexId v, const Sketch &sketch);
    std::vector<Edge> reverse_search(const BidirOutcome &outcome);
    std::vector<Anchor> compute_anchors(const Sketch &sketch, const BidirOutcome &outcome);
    std::vector<Edge> recover_search(const Sketch &sketch, const std::vector<Anchor> &anchors,
                                     const BidirOutcome &outcome);

    // depth-map accessors for the latest search (kInfDistance when unvisited)
    Distance depth_u(VertexId x) const { return depth(0, x); }
    Distance depth_v(VertexId x) const { return depth(1, x); }
    // P_t snapshots, reconstructed from the depth marks
    std::vector<VertexId> visited_u() const { return visited(0); }
    std::vector<VertexId> visited_v() const { return visited(1); }

private:
    struct Side
    {
        // per-vertex (generation << 16) | depth: one word per visit test
        std::vector<std::uint32_t> mark;
        std::vector<VertexId> frontier, next;
        std::vector<VertexId> level1; // first frontier, kept for reverse walks
        std::size_t visited_count = 0; // |P_t|
        VertexId root = 0;
        Distance level = 0; // d_t
    };

    const Graph &g_;
    const LabellingScheme &scheme_;
    Side side_[2];
    std::vector<std::uint64_t> landmark_bits_; // L1-resident landmark test
    std::vector<std::uint64_t> label_mask_;   // per vertex: landmark bits in L(v); only
                                               // built when the dense table is unavailable
    std::vector<std::uint8_t> dense_label_;    // |V| x k label distances, 255 = absent
    std::vector<std::uint16_t> aux_stamp_;     // descent/anchor-walk dedup
    std::vector<std::uint16_t> walk_stamp_[2]; // backwalk dedup, shared within a query
    std::vector<VertexId> scratch_a_, scratch_b_; // walker frontier buffers
    std::uint16_t generation_ = 0;
    std::uint16_t aux_generation_ = 0;
    std::uint16_t walk_generation_[2] = {0, 0};
    bool walk_started_[2] = {false, false};

    bool is_landmark(VertexId v) const
    {
        return (landmark_bits_[v >> 6] >> (v & 63)) & 1;
    }
    bool may_have_label(VertexId v, LandmarkIndex r) const
    {
        if (!dense_label_.empty())
            return true; // the dense lookup is a single load anyway
        return label_mask_.empty() || ((label_mask_[v] >> r) & 1);
    }
    // one-load label distance when the dense table exists
    Distance label_distance(VertexId v, LandmarkIndex r) const
    {
        if (!dense_label_.empty())
        {
            std::uint8_t d = dense_label_[static_cast<std::size_t>(v) * scheme_.landmark_set.size() + r];
            return d == 0xFF ? kInfDistance : d;
        }
        return scheme_.labels.distance_to(v, r);
    }
    Distance depth(int s, VertexId x) const
    {
        std::uint32_t m = side_[s].mark[x];
        return (m >> 16) == generation_ ? static_cast<Distance>(m & 0xFFFF) : kInfDistance;
    }
    std::vector<VertexId> visited(int s) const;
    void begin_query(VertexId u, VertexId v);
    bool expand(int s, std::vector<VertexId> &meet);
    int pick_side(const Sketch &sketch) const;
    void backwalk(int s, std::span<const VertexId> from, std::vector<Edge> &out);
    void descend(std::span<const VertexId> from, LandmarkIndex r, Distance start,
                 std::vector<Edge> &out);
    void recover_collect(const Sketch &sketch, const std::vector<Anchor> &anchors,
                         const BidirOutcome &outcome, std::vector<Edge> &out);
    SpgResult finish(Distance distance, std::vector<Edge> edges) const;
    SpgResult landmark_route(VertexId u, VertexId v, const Sketch &sketch);
};

// One-shot convenience wrapper.
SpgResult query_spg(const Graph &g, const LabellingScheme &scheme, VertexId u, VertexId v);

} // namespace spgq
