#include "spgq/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_set>

using namespace std;

namespace spgq {

//--------------------------- PPL labels ---------------------------

size_t PplLabels::entry_count() const
{
    size_t n = 0;
    for (const auto &l : labels_)
        n += l.size();
    return n;
}

void PplLabels::add(VertexId v, VertexId hub, Distance dist)
{
    auto &lst = labels_[v];
    auto it = lower_bound(lst.begin(), lst.end(), hub,
                          [](const PplEntry &e, VertexId h) { return e.hub < h; });
    lst.insert(it, {hub, dist});
}

namespace {

// find (hub, *) in a hub-sorted entry list
template <typename Entry>
const Entry *find_hub(span<const Entry> entries, VertexId hub)
{
    auto it = lower_bound(entries.begin(), entries.end(), hub,
                          [](const Entry &e, VertexId h) { return e.hub < h; });
    return it != entries.end() && it->hub == hub ? &*it : nullptr;
}

// 2-hop minimum over two hub-sorted lists plus implicit self entries
template <typename Entry>
Distance two_hop_distance(span<const Entry> lu, span<const Entry> lv, VertexId u, VertexId v)
{
    if (u == v)
        return 0;
    uint32_t best = kInfDistance;
    auto iu = lu.begin();
    auto iv = lv.begin();
    while (iu != lu.end() && iv != lv.end())
    {
        if (iu->hub < iv->hub)
            ++iu;
        else if (iv->hub < iu->hub)
            ++iv;
        else
        {
            best = min(best, static_cast<uint32_t>(iu->dist) + iv->dist);
            ++iu, ++iv;
        }
    }
    if (const Entry *e = find_hub(lv, u))
        best = min(best, static_cast<uint32_t>(e->dist));
    if (const Entry *e = find_hub(lu, v))
        best = min(best, static_cast<uint32_t>(e->dist));
    return static_cast<Distance>(best);
}

} // namespace

Distance PplLabels::query_distance(VertexId u, VertexId v) const
{
    return two_hop_distance(of(u), of(v), u, v);
}

vector<VertexId> PplLabels::hubs(VertexId u, VertexId v) const
{
    Distance d = query_distance(u, v);
    vector<VertexId> out;
    if (d == kInfDistance)
        return out;
    auto lu = of(u);
    auto lv = of(v);
    auto iu = lu.begin();
    auto iv = lv.begin();
    while (iu != lu.end() && iv != lv.end())
    {
        if (iu->hub < iv->hub)
            ++iu;
        else if (iv->hub < iu->hub)
            ++iv;
        else
        {
            if (iu->hub != u && iu->hub != v && iu->dist + iv->dist == d)
                out.push_back(iu->hub);
            ++iu, ++iv;
        }
    }
    return out;
}

//--------------------------- pruned BFS construction ---------------------------

void pruned_bfs(const Graph &g, VertexId root, PplLabels &labels, PruneMode mode)
{
    vector<Distance> depth(g.vertex_count(), kInfDistance);
    vector<VertexId> queue;
    queue.reserve(64);
    queue.push_back(root);
    depth[root] = 0;
    for (size_t head = 0; head < queue.size(); head++)
    {
        VertexId u = queue[head];
        if (u != root)
        {
            // queries against earlier labels only: u has no entry for root yet
            Distance covered = labels.query_distance(root, u);
            if (covered < depth[u])
                continue; // covered strictly better: no label, no expansion
            if (mode == PruneMode::distance_cover && covered == depth[u])
                continue; // plain distance labelling prunes ties unlabelled
            labels.add(u, root, depth[u]);
            if (labels.was_root(u))
                continue; // only not-yet-processed vertices are traversed
        }
        if (depth[u] == kMaxDistance)
            throw runtime_error("graph diameter exceeds 16-bit distance range");
        for (VertexId v : g.neighbors(u))
            if (depth[v] == kInfDistance)
            {
                depth[v] = static_cast<Distance>(depth[u] + 1);
                queue.push_back(v);
            }
    }
    labels.mark_root(root);
}

optional<PplLabels> ppl_build(const Graph &g, span<const VertexId> order, PruneMode mode,
                              double time_budget_s)
{
    if (order.size() != g.vertex_count())
        throw invalid_argument("order must be a permutation of the vertices");
    vector<bool> seen(g.vertex_count(), false);
    for (VertexId v : order)
    {
        if (v >= g.vertex_count() || seen[v])
            throw invalid_argument("order must be a permutation of the vertices");
        seen[v] = true;
    }
    auto start = chrono::steady_clock::now();
    PplLabels labels(g.vertex_count());
    for (VertexId root : order)
    {
        if (time_budget_s >= 0.0 &&
            chrono::duration<double>(chrono::steady_clock::now() - start).count() > time_budget_s)
            return nullopt;
        pruned_bfs(g, root, labels, mode);
    }
    labels.set_order(vector<VertexId>(order.begin(), order.end()));
    return labels;
}

//--------------------------- PPL query ---------------------------

namespace {

uint64_t pair_key(VertexId a, VertexId b)
{
    if (a > b)
        swap(a, b);
    return (static_cast<uint64_t>(a) << 32) | b;
}

SpgResult result_from_edges(Distance distance, vector<Edge> edges)
{
    sort(edges.begin(), edges.end());
    edges.erase(unique(edges.begin(), edges.end()), edges.end());
    SpgResult res;
    res.distance = distance;
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

} // namespace

SpgResult ppl_query(const PplLabels &labels, const Graph &g, VertexId u, VertexId v, bool memoize)
{
    if (u >= g.vertex_count() || v >= g.vertex_count())
        throw invalid_argument("query vertex out of range");
    if (u == v)
        return SpgResult{0, {}, {u}};
    Distance d0 = labels.query_distance(u, v);
    if (d0 == kInfDistance)
        return SpgResult{};

    vector<Edge> edges;
    vector<pair<VertexId, VertexId>> work{{u, v}};
    unordered_set<uint64_t> processed;
    while (!work.empty())
    {
        auto [a, b] = work.back();
        work.pop_back();
        if (memoize && !processed.insert(pair_key(a, b)).second)
            continue;
        Distance d = labels.query_distance(a, b);
        if (d == 1)
        {
            edges.push_back(make_edge(a, b));
            continue;
        }
        for (VertexId r : labels.hubs(a, b))
        {
            work.emplace_back(a, r);
            work.emplace_back(r, b);
        }
    }
    return result_from_edges(d0, std::move(edges));
}

//--------------------------- ParentPPL ---------------------------

size_t ParentPplLabels::entry_count() const
{
    size_t n = 0;
    for (const auto &l : labels_)
        n += l.size();
    return n;
}

size_t ParentPplLabels::parent_count() const
{
    size_t n = 0;
    for (const auto &l : labels_)
        for (const auto &e : l)
            n += e.parents.size();
    return n;
}

void ParentPplLabels::add(VertexId v, VertexId hub, Distance dist, vector<VertexId> parents)
{
    auto &lst = labels_[v];
    auto it = lower_bound(lst.begin(), lst.end(), hub,
                          [](const ParentPplEntry &e, VertexId h) { return e.hub < h; });
    lst.insert(it, {hub, dist, std::move(parents)});
}

Distance ParentPplLabels::query_distance(VertexId u, VertexId v) const
{
    return two_hop_distance(of(u), of(v), u, v);
}

const ParentPplEntry *ParentPplLabels::find(VertexId v, VertexId hub) const
{
    return find_hub(of(v), hub);
}

namespace {

void parent_pruned_bfs(const Graph &g, VertexId root, ParentPplLabels &labels)
{
    vector<Distance> depth(g.vertex_count(), kInfDistance);
    vector<VertexId> queue{root};
    depth[root] = 0;
    for (size_t head = 0; head < queue.size(); head++)
    {
        VertexId u = queue[head];
        if (u != root)
        {
            Distance covered = labels.query_distance(root, u);
            if (covered < depth[u])
                continue;
            vector<VertexId> parents;
            for (VertexId w : g.neighbors(u))
                if (depth[w] != kInfDistance && depth[w] + 1 == depth[u])
                    parents.push_back(w);
            labels.add(u, root, depth[u], std::move(parents));
            if (labels.was_root(u))
                continue;
        }
        if (depth[u] == kMaxDistance)
            throw runtime_error("graph diameter exceeds 16-bit distance range");
        for (VertexId v : g.neighbors(u))
            if (depth[v] == kInfDistance)
            {
                depth[v] = static_cast<Distance>(depth[u] + 1);
                queue.push_back(v);
            }
    }
    labels.mark_root(root);
}

} // namespace

optional<ParentPplLabels> parentppl_build(const Graph &g, span<const VertexId> order,
                                          double time_budget_s)
{
    if (order.size() != g.vertex_count())
        throw invalid_argument("order must be a permutation of the vertices");
    auto start = chrono::steady_clock::now();
    ParentPplLabels labels(g.vertex_count());
    for (VertexId root : order)
    {
        if (time_budget_s >= 0.0 &&
            chrono::duration<double>(chrono::steady_clock::now() - start).count() > time_budget_s)
            return nullopt;
        parent_pruned_bfs(g, root, labels);
    }
    return labels;
}

SpgResult parentppl_query(const ParentPplLabels &labels, const Graph &g, VertexId u, VertexId v)
{
    if (u >= g.vertex_count() || v >= g.vertex_count())
        throw invalid_argument("query vertex out of range");
    if (u == v)
        return SpgResult{0, {}, {u}};
    Distance d0 = labels.query_distance(u, v);
    if (d0 == kInfDistance)
        return SpgResult{};

    vector<Edge> edges;
    vector<pair<VertexId, VertexId>> work{{u, v}};
    unordered_set<uint64_t> processed;
    while (!work.empty())
    {
        auto [a, b] = work.back();
        work.pop_back();
        if (!processed.insert(pair_key(a, b)).second)
            continue;
        Distance d = labels.query_distance(a, b);
        if (d == 1)
        {
            edges.push_back(make_edge(a, b));
            continue;
        }
        // first hops straight out of the parent sets, remainder recursively
        auto emit_parents = [&](VertexId from, VertexId to) {
            const ParentPplEntry *e = labels.find(from, to);
            if (!e || e->dist != d)
                return;
            for (VertexId w : e->parents)
            {
                edges.push_back(make_edge(from, w));
                if (w != to)
                    work.emplace_back(w, to);
            }
        };
        emit_parents(a, b);
        emit_parents(b, a);
        // hub expansion keeps the answer complete when parent sets were pruned
        for (VertexId r : labels.hubs(a, b))
        {
            work.emplace_back(a, r);
            work.emplace_back(r, b);
        }
    }
    return result_from_edges(d0, std::move(edges));
}

vector<VertexId> ParentPplLabels::hubs(VertexId u, VertexId v) const
{
    Distance d = query_distance(u, v);
    vector<VertexId> out;
    if (d == kInfDistance)
        return out;
    auto lu = of(u);
    auto lv = of(v);
    auto iu = lu.begin();
    auto iv = lv.begin();
    while (iu != lu.end() && iv != lv.end())
    {
        if (iu->hub < iv->hub)
            ++iu;
        else if (iv->hub < iu->hub)
            ++iv;
        else
        {
            if (iu->hub != u && iu->hub != v && iu->dist + iv->dist == d)
                out.push_back(iu->hub);
            ++iu, ++iv;
        }
    }
    return out;
}

//--------------------------- bidirectional BFS baseline ---------------------------

BiBfsQuerier::BiBfsQuerier(const Graph &g) : g_(g)
{
    for (int s = 0; s < 2; s++)
        mark_[s].assign(g.vertex_count(), 0);
    aux_stamp_.assign(g.vertex_count(), 0);
}

SpgResult BiBfsQuerier::query(VertexId u, VertexId v)
{
    if (u >= g_.vertex_count() || v >= g_.vertex_count())
        throw invalid_argument("query vertex out of range");
    if (u == v)
        return SpgResult{0, {}, {u}};

    if (++generation_ == 0)
    {
        for (int s = 0; s < 2; s++)
            fill(mark_[s].begin(), mark_[s].end(), 0u);
        generation_ = 1;
    }
    const uint32_t gen = generation_;
    VertexId roots[2] = {u, v};
    size_t visited[2] = {0, 0};
    Distance level[2] = {0, 0};
    for (int s = 0; s < 2; s++)
    {
        mark_[s][roots[s]] = gen << 16;
        frontier_[s].assign(1, roots[s]);
    }

    vector<VertexId> meet;
    level1_[0].clear();
    level1_[1].clear();
    while (true)
    {
        int s = visited[0] <= visited[1] ? 0 : 1;
        if (level[s] >= kMaxDistance)
            throw runtime_error("graph diameter exceeds 16-bit distance range");
        Distance d = static_cast<Distance>(level[s] + 1);
        const uint32_t tag = gen << 16 | d;
        next_[s].clear();
        for (VertexId x : frontier_[s])
        {
            auto nb = g_.neighbors(x);
            for (size_t i = 0; i < nb.size(); i++)
            {
                if (i + 8 < nb.size())
                    __builtin_prefetch(&mark_[s][nb[i + 8]]);
                VertexId y = nb[i];
                if ((mark_[s][y] >> 16) == gen)
                    continue;
                mark_[s][y] = tag;
                next_[s].push_back(y);
                if ((mark_[1 - s][y] >> 16) == gen)
                    meet.push_back(y);
            }
        }
        level[s] = d;
        visited[s] += next_[s].size();
        if (d == 1)
            level1_[s] = next_[s];
        swap(frontier_[s], next_[s]);
        if (!meet.empty())
            break;
        if (frontier_[s].empty())
            return SpgResult{}; // different components
    }

    // reverse search: depth-decrementing walks from the meet set to both roots
    vector<Edge> edges;
    for (int s = 0; s < 2; s++)
    {
        if (++aux_generation_ == 0)
        {
            fill(aux_stamp_.begin(), aux_stamp_.end(), 0u);
            aux_generation_ = 1;
        }
        vector<VertexId> cur = meet, nxt;
        for (VertexId x : cur)
            aux_stamp_[x] = aux_generation_;
        while (!cur.empty())
        {
            nxt.clear();
            for (VertexId x : cur)
            {
                Distance rho = static_cast<Distance>(mark_[s][x] & 0xFFFF);
                if (rho == 0)
                    continue;
                if (rho == 1)
                {
                    // the only vertex at depth 0 is the root itself
                    edges.push_back(make_edge(x, roots[s]));
                    continue;
                }
                if (rho == 2 && g_.degree(x) > 4 * level1_[s].size())
                {
                    // depth-1 parents all sit in the first frontier
                    for (VertexId y : level1_[s])
                    {
                        if (!g_.has_edge(x, y))
                            continue;
                        edges.push_back(make_edge(x, y));
                        if (aux_stamp_[y] != aux_generation_)
                        {
                            aux_stamp_[y] = aux_generation_;
                            nxt.push_back(y);
                        }
                    }
                    continue;
                }
                const uint32_t want = gen << 16 | (rho - 1);
                auto nb = g_.neighbors(x);
                for (size_t i = 0; i < nb.size(); i++)
                {
                    if (i + 8 < nb.size())
                        __builtin_prefetch(&mark_[s][nb[i + 8]]);
                    VertexId y = nb[i];
                    if (mark_[s][y] != want)
                        continue;
                    edges.push_back(make_edge(x, y));
                    if (aux_stamp_[y] != aux_generation_)
                    {
                        aux_stamp_[y] = aux_generation_;
                        nxt.push_back(y);
                    }
                }
            }
            swap(cur, nxt);
        }
    }
    return result_from_edges(static_cast<Distance>(level[0] + level[1]), std::move(edges));
}

SpgResult bibfs_spg(const Graph &g, VertexId u, VertexId v)
{
    BiBfsQuerier querier(g);
    return querier.query(u, v);
}

//--------------------------- oracle ---------------------------

SpgResult oracle_spg(const Graph &g, VertexId u, VertexId v)
{
    if (u >= g.vertex_count() || v >= g.vertex_count())
        throw invalid_argument("query vertex out of range");
    if (u == v)
        return SpgResult{0, {}, {u}};
    vector<Distance> du = bfs_distances(g, u);
    vector<Distance> dv = bfs_distances(g, v);
    Distance d = du[v];
    if (d == kInfDistance)
        return SpgResult{};

    vector<Edge> edges;
    for (VertexId x = 0; x < g.vertex_count(); x++)
    {
        if (du[x] == kInfDistance && dv[x] == kInfDistance)
            continue;
        for (VertexId y : g.neighbors(x))
        {
            if (x > y)
                continue;
            bool on_path = (du[x] != kInfDistance && dv[y] != kInfDistance && du[x] + 1 + dv[y] == d) ||
                           (du[y] != kInfDistance && dv[x] != kInfDistance && du[y] + 1 + dv[x] == d);
            if (on_path)
                edges.push_back({x, y});
        }
    }
    return result_from_edges(d, std::move(edges));
}

bool enumerate_shortest_paths(const Graph &g, VertexId u, VertexId v, uint64_t cap,
                              const function<void(span<const VertexId>)> &visit)
{
    if (u == v)
    {
        if (cap == 0)
            return false;
        VertexId self[1] = {u};
        visit(span<const VertexId>{self, 1});
        return true;
    }
    vector<Distance> du = bfs_distances(g, u);
    if (du[v] == kInfDistance)
        return true; // no paths at all
    vector<Distance> dv = bfs_distances(g, v);
    const Distance d = du[v];

    vector<VertexId> path{u};
    uint64_t count = 0;
    bool capped = false;
    auto dfs = [&](auto &&self, VertexId x) -> void {
        if (capped)
            return;
        if (x == v)
        {
            if (count == cap)
            {
                capped = true;
                return;
            }
            count++;
            visit(path);
            return;
        }
        for (VertexId y : g.neighbors(x))
        {
            if (du[y] != du[x] + 1 || dv[y] == kInfDistance || du[y] + dv[y] != d)
                continue;
            path.push_back(y);
            self(self, y);
            path.pop_back();
            if (capped)
                return;
        }
    };
    dfs(dfs, u);
    return !capped;
}

//--------------------------- path cover check ---------------------------

CoverCheckResult check_2hop_path_cover(const Graph &g, const PplLabels &labels, uint64_t path_cap)
{
    CoverCheckResult res;
    bool any_capped = false;
    for (VertexId u = 0; u < g.vertex_count(); u++)
    {
        vector<Distance> du = bfs_distances(g, u);
        for (VertexId v = u + 1; v < g.vertex_count(); v++)
        {
            if (du[v] == kInfDistance || du[v] < 2)
                continue;
            const Distance d = du[v];
            bool failed = false;
            vector<VertexId> witness;
            bool complete = enumerate_shortest_paths(
                g, u, v, path_cap, [&](span<const VertexId> path) {
                    if (failed)
                        return;
                    for (size_t i = 1; i + 1 < path.size(); i++)
                    {
                        VertexId r = path[i];
                        const PplEntry *eu = find_hub(labels.of(u), r);
                        const PplEntry *ev = find_hub(labels.of(v), r);
                        if (eu && ev && eu->dist + ev->dist == d)
                            return; // covered
                    }
                    failed = true;
                    witness.assign(path.begin(), path.end());
                });
            if (failed)
                return {CoverVerdict::fail, u, v, std::move(witness)};
            if (!complete)
                any_capped = true;
        }
    }
    res.verdict = any_capped ? CoverVerdict::inconclusive : CoverVerdict::pass;
    return res;
}

} // namespace spgq
