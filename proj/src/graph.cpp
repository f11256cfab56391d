#include "spgq/graph.hpp"

#include <algorithm>
#include <cctype>
#include <queue>

using namespace std;

namespace spgq {

void Graph::build_csr(uint32_t vertex_count, vector<Edge> &edges)
{
    // drop self-loops, normalize, dedup
    erase_if(edges, [](const Edge &e) { return e.first == e.second; });
    for (Edge &e : edges)
        if (e.first > e.second)
            swap(e.first, e.second);
    sort(edges.begin(), edges.end());
    edges.erase(unique(edges.begin(), edges.end()), edges.end());

    offsets_.assign(static_cast<size_t>(vertex_count) + 1, 0);
    for (const Edge &e : edges)
    {
        offsets_[e.first + 1]++;
        offsets_[e.second + 1]++;
    }
    for (size_t v = 1; v <= vertex_count; v++)
        offsets_[v] += offsets_[v - 1];

    adjacency_.resize(edges.size() * 2);
    vector<uint64_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const Edge &e : edges)
    {
        adjacency_[cursor[e.first]++] = e.second;
        adjacency_[cursor[e.second]++] = e.first;
    }
    for (uint32_t v = 0; v < vertex_count; v++)
        sort(adjacency_.begin() + offsets_[v], adjacency_.begin() + offsets_[v + 1]);
}

Graph Graph::from_edges(uint32_t vertex_count, vector<Edge> edges)
{
    for (const Edge &e : edges)
        if (e.first >= vertex_count || e.second >= vertex_count)
            throw invalid_argument("edge endpoint out of range");
    Graph g;
    g.external_ids_.resize(vertex_count);
    for (uint32_t v = 0; v < vertex_count; v++)
    {
        g.external_ids_[v] = v;
        g.id_map_.emplace(v, v);
    }
    g.build_csr(vertex_count, edges);
    return g;
}

bool Graph::has_edge(VertexId u, VertexId v) const
{
    auto nb = neighbors(u);
    return binary_search(nb.begin(), nb.end(), v);
}

namespace {

bool parse_u64(const char *&p, const char *end, uint64_t &out)
{
    if (p == end || !isdigit(static_cast<unsigned char>(*p)))
        return false;
    out = 0;
    while (p != end && isdigit(static_cast<unsigned char>(*p)))
        out = out * 10 + static_cast<uint64_t>(*p++ - '0');
    return true;
}

void skip_ws(const char *&p, const char *end)
{
    while (p != end && (*p == ' ' || *p == '\t' || *p == '\r'))
        p++;
}

} // namespace

Graph load_edge_list(istream &in, IngestReport *report)
{
    Graph g;
    vector<Edge> edges;
    IngestReport local;
    string line;
    size_t line_no = 0;

    auto intern = [&g](uint64_t ext) -> VertexId {
        auto [it, inserted] = g.id_map_.try_emplace(ext, static_cast<VertexId>(g.external_ids_.size()));
        if (inserted)
            g.external_ids_.push_back(ext);
        return it->second;
    };

    while (getline(in, line))
    {
        line_no++;
        local.lines++;
        const char *p = line.data();
        const char *end = line.data() + line.size();
        skip_ws(p, end);
        if (p == end)
            continue;
        if (*p == '#' || *p == '%')
        {
            local.comments++;
            continue;
        }
        uint64_t a, b;
        if (!parse_u64(p, end, a))
            throw ParseError(line_no, "expected integer vertex id");
        skip_ws(p, end);
        if (!parse_u64(p, end, b))
            throw ParseError(line_no, "expected second vertex id");
        skip_ws(p, end);
        if (p != end)
            throw ParseError(line_no, "trailing characters after edge");

        VertexId u = intern(a);
        VertexId v = intern(b);
        if (u == v)
        {
            local.self_loops++;
            continue;
        }
        edges.push_back(make_edge(u, v));
    }
    if (in.bad())
        throw ParseError(line_no, "read failure");

    size_t before = edges.size();
    g.build_csr(static_cast<uint32_t>(g.external_ids_.size()), edges);
    local.duplicates = before - g.edge_count();
    if (report)
        *report = local;
    return g;
}

void write_canonical_edge_list(const Graph &g, ostream &out)
{
    vector<pair<uint64_t, uint64_t>> ext_edges;
    ext_edges.reserve(g.edge_count());
    for (VertexId u = 0; u < g.vertex_count(); u++)
        for (VertexId v : g.neighbors(u))
            if (u < v)
            {
                uint64_t a = g.external_id(u), b = g.external_id(v);
                ext_edges.emplace_back(min(a, b), max(a, b));
            }
    sort(ext_edges.begin(), ext_edges.end());
    for (auto [a, b] : ext_edges)
        out << a << ' ' << b << '\n';
}

vector<Distance> bfs_distances(const Graph &g, VertexId source, span<const VertexId> excluded)
{
    if (source >= g.vertex_count())
        throw invalid_argument("bfs source out of range");
    vector<Distance> dist(g.vertex_count(), kInfDistance);
    for (VertexId x : excluded)
    {
        if (x == source)
            throw invalid_argument("bfs source is excluded");
        dist[x] = kInfDistance; // excluded stay unreachable
    }
    vector<bool> blocked(g.vertex_count(), false);
    for (VertexId x : excluded)
        blocked[x] = true;

    vector<VertexId> frontier{source}, next;
    dist[source] = 0;
    Distance level = 0;
    while (!frontier.empty())
    {
        if (level == kMaxDistance)
            throw runtime_error("graph diameter exceeds 16-bit distance range");
        level++;
        next.clear();
        for (VertexId x : frontier)
            for (VertexId y : g.neighbors(x))
                if (!blocked[y] && dist[y] == kInfDistance)
                {
                    dist[y] = level;
                    next.push_back(y);
                }
        swap(frontier, next);
    }
    return dist;
}

vector<VertexId> degree_descending(const Graph &g)
{
    vector<VertexId> order(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); v++)
        order[v] = v;
    sort(order.begin(), order.end(), [&g](VertexId a, VertexId b) {
        uint32_t da = g.degree(a), db = g.degree(b);
        return da != db ? da > db : a < b;
    });
    return order;
}

} // namespace spgq
