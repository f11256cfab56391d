// Per-query sketch: upper bound d_top over landmark routes plus the terminal
// and meta edges of every minimizing route, and the per-side search bounds.
#pragma once

#include "spgq/labelling.hpp"

#include <vector>

namespace spgq {

struct SketchTerminal
{
    LandmarkIndex landmark;
    Distance dist; // sigma_S(r, t) = d_G(r, t)

    bool operator==(const SketchTerminal &) const = default;
};

struct Sketch
{
    Distance d_top = kInfDistance;
    Distance d_u_star = 0;
    Distance d_v_star = 0;
    std::vector<SketchTerminal> terminals_u; // edges (r, u), sorted by landmark
    std::vector<SketchTerminal> terminals_v; // edges (r', v)
    std::vector<std::uint32_t> meta_edge_ids; // meta-edges of all minimizing routes
    std::vector<std::pair<LandmarkIndex, LandmarkIndex>> min_pairs; // (u-side, v-side)

    bool reachable() const { return d_top != kInfDistance; }
};

// Minimize delta_ur + d_M(r,r') + delta_vr' over label entries of u and v
// (r = r' allowed). A landmark endpoint t contributes the virtual label
// {(t, 0)}. All minimizing pairs contribute their edges.
Sketch compute_sketch(const LabellingScheme &scheme, VertexId u, VertexId v);

} // namespace spgq
