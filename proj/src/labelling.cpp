#include "spgq/labelling.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <thread>

using namespace std;

namespace spgq {

//--------------------------- landmark sets ---------------------------

LandmarkSet select_landmarks(const Graph &g, size_t k)
{
    if (k == 0 || k > g.vertex_count())
        throw invalid_argument("landmark count must be in [1, |V|]");
    vector<VertexId> order = degree_descending(g);
    order.resize(k);
    return make_landmark_set(g, std::move(order));
}

LandmarkSet make_landmark_set(const Graph &g, vector<VertexId> landmarks)
{
    if (landmarks.empty() && g.vertex_count() > 0)
        throw invalid_argument("landmark set must not be empty");
    if (landmarks.size() > 0xFFFF)
        throw invalid_argument("too many landmarks");
    LandmarkSet set;
    set.index_of.assign(g.vertex_count(), kNotLandmark);
    for (size_t i = 0; i < landmarks.size(); i++)
    {
        VertexId v = landmarks[i];
        if (v >= g.vertex_count())
            throw invalid_argument("landmark id out of range");
        if (set.index_of[v] != kNotLandmark)
            throw invalid_argument("duplicate landmark");
        set.index_of[v] = static_cast<LandmarkIndex>(i);
    }
    set.landmarks = std::move(landmarks);
    return set;
}

//--------------------------- path labels ---------------------------

Distance PathLabels::distance_to(VertexId v, LandmarkIndex r) const
{
    auto entries = of(v);
    auto it = lower_bound(entries.begin(), entries.end(), r,
                          [](const LabelEntry &e, LandmarkIndex x) { return e.landmark < x; });
    return it != entries.end() && it->landmark == r ? it->dist : kInfDistance;
}

//--------------------------- meta-graph ---------------------------

MetaGraph::MetaGraph(size_t landmark_count, vector<MetaEdge> edges)
    : landmark_count_(landmark_count), edges_(std::move(edges))
{
    sort(edges_.begin(), edges_.end(), [](const MetaEdge &x, const MetaEdge &y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
    edge_id_.assign(landmark_count_ * landmark_count_, -1);
    for (size_t i = 0; i < edges_.size(); i++)
    {
        const MetaEdge &e = edges_[i];
        assert(e.a < e.b && e.b < landmark_count_);
        edge_id_[e.a * landmark_count_ + e.b] = static_cast<int64_t>(i);
        edge_id_[e.b * landmark_count_ + e.a] = static_cast<int64_t>(i);
    }
}

size_t MetaGraph::pair_index(LandmarkIndex i, LandmarkIndex j) const
{
    // triangular index over unordered pairs, i < j
    size_t k = landmark_count_;
    return static_cast<size_t>(i) * (2 * k - i - 1) / 2 + (j - i - 1);
}

span<const uint32_t> MetaGraph::spg_edges(LandmarkIndex i, LandmarkIndex j) const
{
    if (i == j)
        return {};
    if (i > j)
        swap(i, j);
    return spg_[pair_index(i, j)];
}

Distance MetaGraph::edge_weight(LandmarkIndex i, LandmarkIndex j) const
{
    int64_t id = edge_id_[static_cast<size_t>(i) * landmark_count_ + j];
    return id < 0 ? kInfDistance : edges_[id].weight;
}

int64_t MetaGraph::edge_id(LandmarkIndex i, LandmarkIndex j) const
{
    return edge_id_[static_cast<size_t>(i) * landmark_count_ + j];
}

void meta_apsp(MetaGraph &meta)
{
    const size_t k = meta.landmark_count_;
    constexpr uint32_t inf32 = 0xFFFFFFFF;
    vector<uint32_t> d(k * k, inf32);
    for (size_t i = 0; i < k; i++)
        d[i * k + i] = 0;
    for (const MetaEdge &e : meta.edges_)
    {
        d[e.a * k + e.b] = e.weight;
        d[e.b * k + e.a] = e.weight;
    }
    for (size_t m = 0; m < k; m++)
        for (size_t i = 0; i < k; i++)
        {
            uint32_t dim = d[i * k + m];
            if (dim == inf32)
                continue;
            for (size_t j = 0; j < k; j++)
            {
                uint32_t via = dim + d[m * k + j];
                if (d[m * k + j] != inf32 && via < d[i * k + j])
                    d[i * k + j] = via;
            }
        }

    meta.dist_.assign(k * k, kInfDistance);
    for (size_t i = 0; i < k * k; i++)
    {
        if (d[i] == inf32)
            continue;
        if (d[i] > kMaxDistance)
            throw runtime_error("meta distance exceeds 16-bit range");
        meta.dist_[i] = static_cast<Distance>(d[i]);
    }

    // meta-edges on at least one minimal-weight i-j meta-path
    meta.spg_.assign(k == 0 ? 0 : k * (k - 1) / 2, {});
    for (LandmarkIndex i = 0; i < k; i++)
        for (LandmarkIndex j = i + 1; j < k; j++)
        {
            uint32_t dij = d[static_cast<size_t>(i) * k + j];
            if (dij == inf32)
                continue;
            auto &lst = meta.spg_[meta.pair_index(i, j)];
            for (uint32_t id = 0; id < meta.edges_.size(); id++)
            {
                const MetaEdge &e = meta.edges_[id];
                uint32_t da = d[static_cast<size_t>(i) * k + e.a];
                uint32_t db = d[static_cast<size_t>(i) * k + e.b];
                uint32_t aj = d[static_cast<size_t>(e.a) * k + j];
                uint32_t bj = d[static_cast<size_t>(e.b) * k + j];
                bool on_path = (da != inf32 && bj != inf32 && da + e.weight + bj == dij) ||
                               (db != inf32 && aj != inf32 && db + e.weight + aj == dij);
                if (on_path)
                    lst.push_back(id);
            }
        }
}

//--------------------------- landmark BFS (labelling construction) ---------------------------

LandmarkBfsResult landmark_bfs(const Graph &g, VertexId r, const LandmarkSet &landmark_set)
{
    if (!landmark_set.is_landmark(r))
        throw invalid_argument("landmark_bfs root is not a landmark");

    LandmarkBfsResult out;
    vector<bool> visited(g.vertex_count(), false);
    vector<VertexId> cur_l{r}, cur_n, next_l, next_n;
    visited[r] = true;
    uint32_t level = 0;

    while (!cur_l.empty() || !cur_n.empty())
    {
        if (level >= kMaxDistance)
            throw runtime_error("graph diameter exceeds 16-bit distance range");
        Distance depth = static_cast<Distance>(++level);
        next_l.clear();
        next_n.clear();
        // labelled frontier first: its discoveries carry a landmark-free lineage
        for (VertexId u : cur_l)
            for (VertexId v : g.neighbors(u))
            {
                if (visited[v])
                    continue;
                visited[v] = true;
                if (landmark_set.is_landmark(v))
                {
                    out.meta_edges.emplace_back(landmark_set.index(v), depth);
                    next_n.push_back(v);
                }
                else
                {
                    out.labels.emplace_back(v, depth);
                    next_l.push_back(v);
                }
            }
        for (VertexId u : cur_n)
            for (VertexId v : g.neighbors(u))
            {
                if (visited[v])
                    continue;
                visited[v] = true;
                next_n.push_back(v);
            }
        swap(cur_l, next_l);
        swap(cur_n, next_n);
    }

    sort(out.labels.begin(), out.labels.end());
    sort(out.meta_edges.begin(), out.meta_edges.end());
    return out;
}

//--------------------------- delta store ---------------------------

uint64_t DeltaStore::total_edges() const
{
    uint64_t n = 0;
    for (const auto &set : edge_sets_)
        n += set.size();
    return n;
}

DeltaStore build_delta(const Graph &g, const LandmarkSet &landmark_set,
                       const PathLabels &labels, const MetaGraph &meta)
{
    vector<vector<Edge>> sets(meta.edges().size());

    // ext(v) = label entries of v plus the virtual (index(v), 0) for landmarks
    auto ext_labels = [&](VertexId v, LabelEntry &slot) -> span<const LabelEntry> {
        if (landmark_set.is_landmark(v))
        {
            slot = {landmark_set.index(v), 0};
            return {&slot, 1};
        }
        return labels.of(v);
    };

    LabelEntry slot_x, slot_y;
    for (VertexId x = 0; x < g.vertex_count(); x++)
    {
        auto lx = ext_labels(x, slot_x);
        if (lx.empty())
            continue;
        for (VertexId y : g.neighbors(x))
        {
            if (y < x)
                continue;
            for (const LabelEntry &ex : lx)
                for (const LabelEntry &ey : ext_labels(y, slot_y))
                {
                    if (ex.landmark == ey.landmark)
                        continue;
                    int64_t id = meta.edge_id(ex.landmark, ey.landmark);
                    if (id >= 0 && ex.dist + 1 + ey.dist == meta.edges()[id].weight)
                        sets[id].push_back(make_edge(x, y));
                }
        }
    }
    for (auto &set : sets)
    {
        sort(set.begin(), set.end());
        set.erase(unique(set.begin(), set.end()), set.end());
    }
    return DeltaStore(std::move(sets));
}

//--------------------------- full build ---------------------------

LabellingScheme build_labelling(const Graph &g, LandmarkSet landmark_set, unsigned thread_budget)
{
    if (thread_budget < 1)
        throw invalid_argument("thread budget must be at least 1");
    const size_t k = landmark_set.size();

    vector<LandmarkBfsResult> per_landmark(k);
    if (thread_budget <= 1 || k <= 1)
    {
        for (size_t i = 0; i < k; i++)
            per_landmark[i] = landmark_bfs(g, landmark_set.vertex(static_cast<LandmarkIndex>(i)), landmark_set);
    }
    else
    {
        atomic<size_t> cursor{0};
        auto worker = [&]() {
            for (size_t i = cursor.fetch_add(1); i < k; i = cursor.fetch_add(1))
                per_landmark[i] = landmark_bfs(g, landmark_set.vertex(static_cast<LandmarkIndex>(i)), landmark_set);
        };
        vector<thread> threads;
        size_t nthreads = min<size_t>(thread_budget, k);
        threads.reserve(nthreads);
        for (size_t t = 0; t < nthreads; t++)
            threads.emplace_back(worker);
        for (thread &t : threads)
            t.join();
    }

    // merge labels by landmark index: per-vertex lists come out sorted
    vector<uint32_t> counts(static_cast<size_t>(g.vertex_count()) + 1, 0);
    for (const auto &res : per_landmark)
        for (auto [v, d] : res.labels)
            counts[v + 1]++;
    for (size_t v = 1; v < counts.size(); v++)
        counts[v] += counts[v - 1];
    vector<uint32_t> offsets = counts;
    vector<LabelEntry> entries(offsets.back());
    vector<uint32_t> cursor_v(offsets.begin(), offsets.end() - 1);
    for (size_t i = 0; i < k; i++)
        for (auto [v, d] : per_landmark[i].labels)
            entries[cursor_v[v]++] = {static_cast<LandmarkIndex>(i), d};

    // each meta-edge is discovered from both endpoints; dedup normalized
    vector<MetaEdge> meta_edges;
    for (size_t i = 0; i < k; i++)
        for (auto [j, w] : per_landmark[i].meta_edges)
            if (i < j)
                meta_edges.push_back({static_cast<LandmarkIndex>(i), j, w});
    sort(meta_edges.begin(), meta_edges.end(), [](const MetaEdge &x, const MetaEdge &y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
    meta_edges.erase(unique(meta_edges.begin(), meta_edges.end()), meta_edges.end());

    LabellingScheme scheme;
    scheme.vertex_count = g.vertex_count();
    scheme.landmark_set = std::move(landmark_set);
    scheme.labels = PathLabels(std::move(offsets), std::move(entries));
    scheme.meta = MetaGraph(k, std::move(meta_edges));
    meta_apsp(scheme.meta);
    scheme.delta = build_delta(g, scheme.landmark_set, scheme.labels, scheme.meta);
    return scheme;
}

//--------------------------- serialization ---------------------------

namespace {

constexpr char kMagic[4] = {'Q', 'B', 'S', '1'};
constexpr uint16_t kVersion = 1;

struct Writer
{
    ostream &out;
    uint64_t bytes = 0;

    void u16(uint16_t x)
    {
        char b[2] = {static_cast<char>(x & 0xFF), static_cast<char>(x >> 8)};
        out.write(b, 2);
        bytes += 2;
    }
    void u32(uint32_t x)
    {
        char b[4];
        for (int i = 0; i < 4; i++)
            b[i] = static_cast<char>((x >> (8 * i)) & 0xFF);
        out.write(b, 4);
        bytes += 4;
    }
    void raw(const char *p, size_t n)
    {
        out.write(p, static_cast<streamsize>(n));
        bytes += n;
    }
};

struct Reader
{
    istream &in;

    uint16_t u16()
    {
        unsigned char b[2];
        if (!in.read(reinterpret_cast<char *>(b), 2))
            throw DecodeError("truncated index file");
        return static_cast<uint16_t>(b[0] | (b[1] << 8));
    }
    uint32_t u32()
    {
        unsigned char b[4];
        if (!in.read(reinterpret_cast<char *>(b), 4))
            throw DecodeError("truncated index file");
        return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
               (static_cast<uint32_t>(b[2]) << 16) | (static_cast<uint32_t>(b[3]) << 24);
    }
};

} // namespace

uint64_t serialize(const LabellingScheme &scheme, ostream &out)
{
    Writer w{out};
    w.raw(kMagic, 4);
    w.u16(kVersion);
    w.u32(scheme.vertex_count);
    w.u16(static_cast<uint16_t>(scheme.landmark_set.size()));
    for (VertexId r : scheme.landmark_set.landmarks)
        w.u32(r);
    for (VertexId v = 0; v < scheme.vertex_count; v++)
    {
        auto entries = scheme.labels.of(v);
        w.u16(static_cast<uint16_t>(entries.size()));
        for (const LabelEntry &e : entries)
        {
            w.u16(e.landmark);
            w.u16(e.dist);
        }
    }
    const auto &meta_edges = scheme.meta.edges();
    w.u32(static_cast<uint32_t>(meta_edges.size()));
    for (const MetaEdge &e : meta_edges)
    {
        w.u16(e.a);
        w.u16(e.b);
        w.u16(e.weight);
    }
    for (uint32_t id = 0; id < meta_edges.size(); id++)
    {
        auto set = scheme.delta.of(id);
        w.u32(static_cast<uint32_t>(set.size()));
        for (const Edge &e : set)
        {
            w.u32(e.first);
            w.u32(e.second);
        }
    }
    if (!out)
        throw runtime_error("index write failed");
    return w.bytes;
}

LabellingScheme deserialize(istream &in)
{
    Reader r{in};
    char magic[4];
    if (!in.read(magic, 4) || !equal(magic, magic + 4, kMagic))
        throw DecodeError("bad index magic");
    if (r.u16() != kVersion)
        throw DecodeError("unsupported index version");

    LabellingScheme scheme;
    scheme.vertex_count = r.u32();
    uint16_t k = r.u16();

    vector<VertexId> landmarks(k);
    for (uint16_t i = 0; i < k; i++)
    {
        landmarks[i] = r.u32();
        if (landmarks[i] >= scheme.vertex_count)
            throw DecodeError("landmark id out of range");
    }
    scheme.landmark_set.landmarks = std::move(landmarks);
    scheme.landmark_set.index_of.assign(scheme.vertex_count, kNotLandmark);
    for (uint16_t i = 0; i < k; i++)
    {
        VertexId v = scheme.landmark_set.landmarks[i];
        if (scheme.landmark_set.index_of[v] != kNotLandmark)
            throw DecodeError("duplicate landmark");
        scheme.landmark_set.index_of[v] = i;
    }

    vector<uint32_t> offsets(static_cast<size_t>(scheme.vertex_count) + 1, 0);
    vector<LabelEntry> entries;
    for (VertexId v = 0; v < scheme.vertex_count; v++)
    {
        uint16_t n = r.u16();
        for (uint16_t i = 0; i < n; i++)
        {
            uint16_t lm = r.u16();
            uint16_t d = r.u16();
            if (lm >= k)
                throw DecodeError("label landmark index out of range");
            entries.push_back({lm, d});
        }
        offsets[v + 1] = static_cast<uint32_t>(entries.size());
    }
    scheme.labels = PathLabels(std::move(offsets), std::move(entries));

    uint32_t edge_count = r.u32();
    vector<MetaEdge> meta_edges(edge_count);
    for (uint32_t i = 0; i < edge_count; i++)
    {
        uint16_t a = r.u16(), b = r.u16(), wgt = r.u16();
        if (a >= b || b >= k)
            throw DecodeError("bad meta-edge");
        meta_edges[i] = {a, b, wgt};
    }
    scheme.meta = MetaGraph(k, std::move(meta_edges));

    vector<vector<Edge>> sets(edge_count);
    for (uint32_t id = 0; id < edge_count; id++)
    {
        uint32_t n = r.u32();
        sets[id].resize(n);
        for (uint32_t i = 0; i < n; i++)
        {
            VertexId a = r.u32(), b = r.u32();
            if (a >= scheme.vertex_count || b >= scheme.vertex_count)
                throw DecodeError("delta edge endpoint out of range");
            sets[id][i] = {a, b};
        }
    }
    scheme.delta = DeltaStore(std::move(sets));

    meta_apsp(scheme.meta); // cheap, not stored
    return scheme;
}

uint64_t labelling_size_bytes(const LabellingScheme &scheme)
{
    return static_cast<uint64_t>(scheme.vertex_count) * scheme.landmark_set.size();
}

uint64_t delta_size_bytes(const LabellingScheme &scheme)
{
    uint64_t bytes = 0;
    for (uint32_t id = 0; id < scheme.meta.edges().size(); id++)
        bytes += 4 + 8 * scheme.delta.of(id).size();
    return bytes;
}

} // namespace spgq
