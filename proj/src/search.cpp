#include "spgq/search.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

using namespace std;

namespace spgq {

SpgQuerier::SpgQuerier(const Graph &g, const LabellingScheme &scheme)
    : g_(g), scheme_(scheme)
{
    if (g.vertex_count() != scheme.vertex_count)
        throw invalid_argument("scheme was built for a different graph");
    for (int s = 0; s < 2; s++)
    {
        side_[s].mark.assign(g.vertex_count(), 0);
        walk_stamp_[s].assign(g.vertex_count(), 0);
    }
    landmark_bits_.assign((static_cast<size_t>(g.vertex_count()) >> 6) + 1, 0);
    for (VertexId r : scheme.landmark_set.landmarks)
        landmark_bits_[r >> 6] |= uint64_t{1} << (r & 63);
    const size_t k = scheme.landmark_set.size();
    if (k > 0 && k <= 64)
    {
        if (static_cast<uint64_t>(g.vertex_count()) * k <= 64'000'000)
        {
            bool fits = true;
            for (VertexId v = 0; v < g.vertex_count() && fits; v++)
                for (const LabelEntry &e : scheme.labels.of(v))
                    fits &= e.dist < 0xFF;
            if (fits)
            {
                dense_label_.assign(static_cast<size_t>(g.vertex_count()) * k, 0xFF);
                for (VertexId v = 0; v < g.vertex_count(); v++)
                    for (const LabelEntry &e : scheme.labels.of(v))
                        dense_label_[static_cast<size_t>(v) * k + e.landmark] =
                            static_cast<uint8_t>(e.dist);
            }
        }
        if (dense_label_.empty())
        {
            label_mask_.assign(g.vertex_count(), 0);
            for (VertexId v = 0; v < g.vertex_count(); v++)
                for (const LabelEntry &e : scheme.labels.of(v))
                    label_mask_[v] |= uint64_t{1} << e.landmark;
        }
    }
    aux_stamp_.assign(g.vertex_count(), 0);
}

vector<VertexId> SpgQuerier::visited(int s) const
{
    vector<VertexId> out;
    out.reserve(side_[s].visited_count);
    for (VertexId v = 0; v < g_.vertex_count(); v++)
        if (depth(s, v) != kInfDistance && v != side_[s].root)
            out.push_back(v);
    return out;
}

void SpgQuerier::begin_query(VertexId u, VertexId v)
{
    if (++generation_ == 0)
    {
        for (int s = 0; s < 2; s++)
            fill(side_[s].mark.begin(), side_[s].mark.end(), 0u);
        generation_ = 1;
    }
    VertexId roots[2] = {u, v};
    const uint32_t landmark_tag = static_cast<uint32_t>(generation_) << 16 | kInfDistance;
    for (int s = 0; s < 2; s++)
    {
        Side &S = side_[s];
        for (VertexId r : scheme_.landmark_set.landmarks)
            S.mark[r] = landmark_tag; // reads back as unvisited-at-infinity
        S.root = roots[s];
        S.mark[S.root] = static_cast<uint32_t>(generation_) << 16;
        S.frontier.assign(1, S.root);
        S.level1.clear();
        S.visited_count = 0;
        S.level = 0;
        walk_started_[s] = false;
    }
}

// one level-synchronous expansion on the sparsified graph; returns meet vertices
bool SpgQuerier::expand(int s, vector<VertexId> &meet)
{
    Side &S = side_[s];
    const Side &O = side_[1 - s];
    if (S.level >= kMaxDistance)
        throw runtime_error("sparsified distance exceeds 16-bit range");
    Distance depth = static_cast<Distance>(S.level + 1);
    const uint32_t gen = generation_;
    const uint32_t tag = static_cast<uint32_t>(gen) << 16 | depth;
    S.next.clear();
    for (VertexId x : S.frontier)
    {
        auto nb = g_.neighbors(x);
        for (size_t i = 0; i < nb.size(); i++)
        {
            if (i + 8 < nb.size())
                __builtin_prefetch(&S.mark[nb[i + 8]]);
            VertexId y = nb[i];
            if ((S.mark[y] >> 16) == gen)
                continue; // visited, or a landmark pre-marked at infinity
            S.mark[y] = tag;
            S.next.push_back(y);
            if ((O.mark[y] >> 16) == gen)
                meet.push_back(y);
        }
    }
    S.level = depth;
    S.visited_count += S.next.size();
    if (depth == 1)
        S.level1 = S.next;
    swap(S.frontier, S.next);
    return !S.frontier.empty();
}

int SpgQuerier::pick_side(const Sketch &sketch) const
{
    bool prefer_u = side_[0].level < sketch.d_u_star;
    bool prefer_v = side_[1].level < sketch.d_v_star;
    if (prefer_u != prefer_v)
        return prefer_u ? 0 : 1;
    return side_[0].visited_count <= side_[1].visited_count ? 0 : 1;
}

BidirOutcome SpgQuerier::bidirectional_search(VertexId u, VertexId v, const Sketch &sketch)
{
    if (scheme_.landmark_set.is_landmark(u) || scheme_.landmark_set.is_landmark(v))
        throw invalid_argument("bidirectional search endpoints must not be landmarks");
    begin_query(u, v);

    BidirOutcome out;
    out.status = BidirStatus::bound_exceeded;
    const uint32_t bound = sketch.d_top;
    while (static_cast<uint32_t>(side_[0].level) + side_[1].level < bound)
    {
        int s = pick_side(sketch);
        bool alive = expand(s, out.meet);
        if (!out.meet.empty())
        {
            out.status = BidirStatus::met;
            break;
        }
        if (!alive)
        {
            out.status = BidirStatus::exhausted;
            break;
        }
    }
    if (out.status == BidirStatus::bound_exceeded && bound == kInfDistance)
        throw runtime_error("sparsified distance exceeds 16-bit range");
    out.d_u = side_[0].level;
    out.d_v = side_[1].level;
    return out;
}

// Depth-decrementing walk toward the side's root, collecting traversed edges.
// The dedup stamp is shared across walks of one query, so a vertex whose cone
// was already walked (e.g. by the reverse search) is not re-traversed.
void SpgQuerier::backwalk(int s, span<const VertexId> from, vector<Edge> &out)
{
    auto &stamps = walk_stamp_[s];
    if (!walk_started_[s])
    {
        walk_started_[s] = true;
        if (++walk_generation_[s] == 0)
        {
            fill(stamps.begin(), stamps.end(), 0u);
            walk_generation_[s] = 1;
        }
    }
    const uint32_t wgen = walk_generation_[s];
    vector<VertexId> &cur = scratch_a_, &nxt = scratch_b_;
    cur.clear();
    for (VertexId x : from)
        if (stamps[x] != wgen)
        {
            stamps[x] = wgen;
            cur.push_back(x);
        }
    while (!cur.empty())
    {
        nxt.clear();
        for (VertexId x : cur)
        {
            Distance rho = depth(s, x);
            if (rho == 0)
                continue;
            if (rho == 1)
            {
                // the only vertex at depth 0 is the root itself
                out.push_back(make_edge(x, side_[s].root));
                continue;
            }
            if (rho == 2 && g_.degree(x) > 4 * side_[s].level1.size())
            {
                // depth-1 parents all sit in the stored first frontier
                for (VertexId y : side_[s].level1)
                {
                    if (!g_.has_edge(x, y))
                        continue;
                    out.push_back(make_edge(x, y));
                    if (stamps[y] != wgen)
                    {
                        stamps[y] = wgen;
                        nxt.push_back(y);
                    }
                }
                continue;
            }
            // landmarks read back as depth infinity, so one word test covers them
            const uint32_t want = static_cast<uint32_t>(generation_) << 16 | (rho - 1);
            auto nb = g_.neighbors(x);
            for (size_t i = 0; i < nb.size(); i++)
            {
                if (i + 8 < nb.size())
                    __builtin_prefetch(&side_[s].mark[nb[i + 8]]);
                VertexId y = nb[i];
                if (side_[s].mark[y] != want)
                    continue;
                out.push_back(make_edge(x, y));
                if (stamps[y] != wgen)
                {
                    stamps[y] = wgen;
                    nxt.push_back(y);
                }
            }
        }
        swap(cur, nxt);
    }
}

vector<Edge> SpgQuerier::reverse_search(const BidirOutcome &outcome)
{
    vector<Edge> edges;
    if (outcome.meet.empty())
        return edges;
    backwalk(0, outcome.meet, edges);
    backwalk(1, outcome.meet, edges);
    sort(edges.begin(), edges.end());
    edges.erase(unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

vector<Anchor> SpgQuerier::compute_anchors(const Sketch &sketch, const BidirOutcome &outcome)
{
    // A vertex w anchors terminal (r, t) iff depth_t[w] = d_m and
    // delta_wr + d_m = sigma. Every such w lies on a shortest t-r path whose
    // prefix keeps depth_t[x] = i and delta_xr = sigma - i, so the anchors are
    // found by walking forward from t along exactly those vertices instead of
    // scanning whole levels.
    vector<Anchor> anchors;
    vector<VertexId> &cur = scratch_a_, &nxt = scratch_b_;

    // walk one terminal from the given level onward
    auto advance = [&](vector<VertexId> &frontier, int s, const SketchTerminal &term,
                       Distance from_level, Distance d_m) {
        for (Distance i = from_level; i < d_m && !frontier.empty(); i++)
        {
            if (++aux_generation_ == 0)
            {
                fill(aux_stamp_.begin(), aux_stamp_.end(), 0u);
                aux_generation_ = 1;
            }
            const uint32_t next_mark = static_cast<uint32_t>(generation_) << 16 | (i + 1);
            const Distance next_delta = static_cast<Distance>(term.dist - i - 1);
            nxt.clear();
            for (VertexId x : frontier)
                for (VertexId y : g_.neighbors(x))
                {
                    if (side_[s].mark[y] != next_mark || aux_stamp_[y] == aux_generation_)
                        continue;
                    if (!may_have_label(y, term.landmark) ||
                        label_distance(y, term.landmark) != next_delta)
                        continue;
                    aux_stamp_[y] = aux_generation_;
                    nxt.push_back(y);
                }
            swap(frontier, nxt);
        }
        for (VertexId w : frontier)
            anchors.push_back({w, term.landmark, static_cast<Distance>(term.dist - d_m), s == 0});
    };

    const bool masked = !label_mask_.empty() || !dense_label_.empty();
    for (int s = 0; s < 2; s++)
    {
        const auto &terminals = s == 0 ? sketch.terminals_u : sketch.terminals_v;
        Distance d_t = s == 0 ? outcome.d_u : outcome.d_v;
        const VertexId root = side_[s].root;

        if (!masked)
        {
            for (const SketchTerminal &term : terminals)
            {
                if (term.dist == 0)
                    continue;
                cur.assign(1, root);
                advance(cur, s, term, 0, min<Distance>(term.dist - 1, d_t));
            }
            continue;
        }

        // fast path: one scan of the root's adjacency serves every terminal
        uint64_t wanted = 0;
        vector<pair<SketchTerminal, vector<VertexId>>> deep; // d_m >= 2 walks
        for (const SketchTerminal &term : terminals)
        {
            if (term.dist == 0)
                continue; // the terminal is the landmark endpoint itself
            Distance d_m = min<Distance>(term.dist - 1, d_t);
            if (d_m == 0)
            {
                anchors.push_back({root, term.landmark, term.dist, s == 0});
                continue;
            }
            wanted |= uint64_t{1} << term.landmark;
            if (d_m >= 2)
                deep.emplace_back(term, vector<VertexId>{});
        }
        if (!wanted)
            continue;
        const uint32_t mark1 = static_cast<uint32_t>(generation_) << 16 | 1;
        const bool dense = !dense_label_.empty();
        for (VertexId y : g_.neighbors(root))
        {
            if (side_[s].mark[y] != mark1)
                continue;
            uint64_t bits = dense ? wanted : label_mask_[y] & wanted;
            while (bits)
            {
                LandmarkIndex r = static_cast<LandmarkIndex>(countr_zero(bits));
                bits &= bits - 1;
                const SketchTerminal *term = nullptr;
                for (const SketchTerminal &t : terminals)
                    if (t.landmark == r)
                        term = &t;
                Distance delta = label_distance(y, r);
                if (delta + 1 != term->dist)
                    continue; // not on a shortest chain toward r
                Distance d_m = min<Distance>(term->dist - 1, d_t);
                if (d_m == 1)
                {
                    anchors.push_back({y, r, delta, s == 0});
                    continue;
                }
                for (auto &[dt, frontier] : deep)
                    if (dt.landmark == r)
                        frontier.push_back(y);
            }
        }
        for (auto &[term, frontier] : deep)
            advance(frontier, s, term, 1, min<Distance>(term.dist - 1, d_t));
    }
    return anchors;
}

// label-guided walk from the given vertices toward landmark r, label distance
// decrementing by one per level and ending with the direct edges to r
void SpgQuerier::descend(span<const VertexId> from, LandmarkIndex r, Distance start,
                         vector<Edge> &out)
{
    const VertexId target = scheme_.landmark_set.vertex(r);
    if (++aux_generation_ == 0)
    {
        fill(aux_stamp_.begin(), aux_stamp_.end(), 0u);
        aux_generation_ = 1;
    }
    vector<VertexId> &cur = scratch_a_, &nxt = scratch_b_;
    cur.assign(from.begin(), from.end());
    for (VertexId x : cur)
        aux_stamp_[x] = aux_generation_;
    for (Distance delta = start; delta >= 1 && !cur.empty(); delta--)
    {
        if (delta == 1)
        {
            for (VertexId x : cur)
                out.push_back(make_edge(x, target));
            break;
        }
        nxt.clear();
        for (VertexId x : cur)
            for (VertexId y : g_.neighbors(x))
            {
                if (is_landmark(y) || !may_have_label(y, r))
                    continue;
                if (label_distance(y, r) != delta - 1)
                    continue;
                out.push_back(make_edge(x, y));
                if (aux_stamp_[y] != aux_generation_)
                {
                    aux_stamp_[y] = aux_generation_;
                    nxt.push_back(y);
                }
            }
        swap(cur, nxt);
    }
}

vector<Edge> SpgQuerier::recover_search(const Sketch &sketch, const vector<Anchor> &anchors,
                                        const BidirOutcome &outcome)
{
    vector<Edge> edges;
    recover_collect(sketch, anchors, outcome, edges);
    sort(edges.begin(), edges.end());
    edges.erase(unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

void SpgQuerier::recover_collect(const Sketch &sketch, const vector<Anchor> &anchors,
                                 const BidirOutcome &outcome, vector<Edge> &edges)
{
    // landmark-to-landmark stretches come precomputed
    for (uint32_t id : sketch.meta_edge_ids)
    {
        auto set = scheme_.delta.of(id);
        edges.insert(edges.end(), set.begin(), set.end());
    }

    // group anchors per (side, landmark); each group descends once
    vector<Anchor> sorted = anchors;
    sort(sorted.begin(), sorted.end(), [](const Anchor &x, const Anchor &y) {
        if (x.side_u != y.side_u)
            return x.side_u;
        if (x.landmark != y.landmark)
            return x.landmark < y.landmark;
        return x.w < y.w;
    });
    vector<VertexId> group;
    for (size_t i = 0; i < sorted.size();)
    {
        size_t j = i;
        group.clear();
        while (j < sorted.size() && sorted[j].side_u == sorted[i].side_u &&
               sorted[j].landmark == sorted[i].landmark)
        {
            assert(sorted[j].label_dist == sorted[i].label_dist);
            group.push_back(sorted[j].w);
            j++;
        }
        descend(group, sorted[i].landmark, sorted[i].label_dist, edges);
        i = j;
    }

    // back to the endpoints along the recorded depths
    if (outcome.status != BidirStatus::not_run)
    {
        vector<VertexId> from_u, from_v;
        for (const Anchor &a : anchors)
            (a.side_u ? from_u : from_v).push_back(a.w);
        if (!from_u.empty())
            backwalk(0, from_u, edges);
        if (!from_v.empty())
            backwalk(1, from_v, edges);
    }
}

SpgResult SpgQuerier::finish(Distance distance, vector<Edge> edges) const
{
    sort(edges.begin(), edges.end());
    edges.erase(unique(edges.begin(), edges.end()), edges.end());
    SpgResult res;
    res.distance = distance;
    res.vertices.reserve(edges.size());
    for (const Edge &e : edges)
    {
        res.vertices.push_back(e.first);
        res.vertices.push_back(e.second);
    }
    sort(res.vertices.begin(), res.vertices.end());
    res.vertices.erase(unique(res.vertices.begin(), res.vertices.end()), res.vertices.end());
    res.edges = std::move(edges);
    return res;
}

// answer through the sketch alone: landmark endpoints are absent from the
// sparsified graph, so every shortest path goes through a landmark
SpgResult SpgQuerier::landmark_route(VertexId u, VertexId v, const Sketch &sketch)
{
    if (!sketch.reachable())
        return SpgResult{};
    vector<Anchor> anchors;
    for (int s = 0; s < 2; s++)
    {
        VertexId t = s == 0 ? u : v;
        if (scheme_.landmark_set.is_landmark(t))
            continue;
        for (const SketchTerminal &term : s == 0 ? sketch.terminals_u : sketch.terminals_v)
            anchors.push_back({t, term.landmark, term.dist, s == 0});
    }
    BidirOutcome none;
    vector<Edge> edges;
    recover_collect(sketch, anchors, none, edges);
    return finish(sketch.d_top, std::move(edges));
}

SpgResult SpgQuerier::query(VertexId u, VertexId v)
{
    if (u >= g_.vertex_count() || v >= g_.vertex_count())
        throw invalid_argument("query vertex out of range");
    if (u == v)
        return SpgResult{0, {}, {u}};
    if (g_.has_edge(u, v))
        return SpgResult{1, {make_edge(u, v)}, {min(u, v), max(u, v)}};

    Sketch sketch = compute_sketch(scheme_, u, v);
    if (scheme_.landmark_set.is_landmark(u) || scheme_.landmark_set.is_landmark(v))
        return landmark_route(u, v, sketch);

    BidirOutcome out = bidirectional_search(u, v, sketch);
    if (out.status == BidirStatus::met)
    {
        Distance dminus = out.sparsified_distance();
        vector<Edge> edges;
        backwalk(0, out.meet, edges);
        backwalk(1, out.meet, edges);
        if (dminus == sketch.d_top)
        {
            vector<Anchor> anchors = compute_anchors(sketch, out);
            recover_collect(sketch, anchors, out, edges);
        }
        return finish(dminus, std::move(edges));
    }
    // sparsified distance exceeds the bound (or is infinite): landmark routes only
    if (!sketch.reachable())
        return SpgResult{};
    vector<Anchor> anchors = compute_anchors(sketch, out);
    vector<Edge> edges;
    recover_collect(sketch, anchors, out, edges);
    return finish(sketch.d_top, std::move(edges));
}

QueryProbe SpgQuerier::probe(VertexId u, VertexId v)
{
    if (u >= g_.vertex_count() || v >= g_.vertex_count())
        throw invalid_argument("query vertex out of range");
    QueryProbe p;
    if (u == v)
    {
        p.distance = 0;
        p.d_top = 0;
        return p;
    }
    Sketch sketch = compute_sketch(scheme_, u, v);
    p.d_top = sketch.d_top;
    if (scheme_.landmark_set.is_landmark(u) || scheme_.landmark_set.is_landmark(v))
    {
        p.distance = sketch.d_top;
        return p;
    }
    BidirOutcome out = bidirectional_search(u, v, sketch);
    p.bidir_status = out.status;
    p.sparsified_distance = out.sparsified_distance();
    p.distance = min(p.sparsified_distance, sketch.d_top);
    return p;
}

SpgResult query_spg(const Graph &g, const LabellingScheme &scheme, VertexId u, VertexId v)
{
    SpgQuerier querier(g, scheme);
    return querier.query(u, v);
}

} // namespace spgq
