#include "doctest.h"

#include "fixtures.hpp"
#include "spgq/gen.hpp"
#include "spgq/graph.hpp"

#include <random>
#include <set>
#include <sstream>

using namespace spgq;
using namespace spgq::testing;
using namespace std;

TEST_CASE("load_edge_list: triangle")
{
    Graph g = load_graph("1 2\n2 3\n3 1\n");
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 3);
}

TEST_CASE("load_edge_list: self-loop and duplicate dropped")
{
    IngestReport report;
    istringstream in("5 7\n7 5\n5 5\n");
    Graph g = load_edge_list(in, &report);
    CHECK(g.vertex_count() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(g.has_edge(ext(g, 5), ext(g, 7)));
    CHECK(report.self_loops == 1);
    CHECK(report.duplicates == 1);
}

TEST_CASE("load_edge_list: comments, blank lines, dense remap order")
{
    Graph g = load_graph("# header\n% other comment style\n\n10 20\n20 30\n");
    CHECK(g.vertex_count() == 3);
    CHECK(ext(g, 10) == 0);
    CHECK(ext(g, 20) == 1);
    CHECK(ext(g, 30) == 2);
}

TEST_CASE("load_edge_list: malformed input reports line number")
{
    istringstream bad("1 2\n3 x\n");
    CHECK_THROWS_AS(load_edge_list(bad), ParseError);
    istringstream bad2("1 2\n3\n");
    try
    {
        load_edge_list(bad2);
        FAIL("expected parse error");
    }
    catch (const ParseError &e)
    {
        CHECK(e.line == 2);
    }
    istringstream trailing("1 2 3\n");
    CHECK_THROWS_AS(load_edge_list(trailing), ParseError);
}

TEST_CASE("load_edge_list: empty input gives empty graph")
{
    Graph g = load_graph("");
    CHECK(g.vertex_count() == 0);
    CHECK(g.edge_count() == 0);
}

TEST_CASE("load_edge_list: edge count matches independent line dedup")
{
    // messy re-encode of an ER graph: duplicates, flips, comments
    Graph base = gen_erdos_renyi(50, 0.1, 7);
    ostringstream text;
    mt19937_64 rng(99);
    set<pair<uint64_t, uint64_t>> expected;
    for (VertexId u = 0; u < base.vertex_count(); u++)
        for (VertexId v : base.neighbors(u))
        {
            if (u > v)
                continue;
            expected.insert({u, v});
            if (rng() % 2)
                text << u << ' ' << v << '\n';
            else
                text << v << ' ' << u << '\n';
            if (rng() % 3 == 0)
                text << v << ' ' << u << '\n'; // duplicate, flipped
            if (rng() % 5 == 0)
                text << "# noise\n";
        }
    Graph g = load_graph(text.str());
    CHECK(g.edge_count() == expected.size());
}

TEST_CASE("neighbors: sorted slices on small fixtures")
{
    Graph tri = load_graph("0 1\n1 2\n2 0\n");
    auto nb = tri.neighbors(ext(tri, 0));
    CHECK(vector<VertexId>(nb.begin(), nb.end()) == vector<VertexId>{ext(tri, 1), ext(tri, 2)});

    Graph path = load_graph("0 1\n1 2\n");
    auto nb1 = path.neighbors(ext(path, 1));
    CHECK(vector<VertexId>(nb1.begin(), nb1.end()) ==
          vector<VertexId>{ext(path, 0), ext(path, 2)});
}

TEST_CASE("neighbors: random graph matches rescan of the edge file")
{
    Graph g = gen_erdos_renyi(40, 0.15, 11);
    ostringstream out;
    write_canonical_edge_list(g, out);

    // rebuild adjacency sets straight from the text
    vector<set<VertexId>> adj(g.vertex_count());
    istringstream in(out.str());
    uint64_t a, b;
    while (in >> a >> b)
    {
        adj[ext(g, a)].insert(ext(g, b));
        adj[ext(g, b)].insert(ext(g, a));
    }
    for (VertexId v = 0; v < g.vertex_count(); v++)
    {
        auto nb = g.neighbors(v);
        CHECK(set<VertexId>(nb.begin(), nb.end()) == adj[v]);
        CHECK(is_sorted(nb.begin(), nb.end()));
    }
}

TEST_CASE("graph invariants: sorted, loop-free, symmetric")
{
    for (const Graph &g : random_graph_suite(10, 80, 5))
    {
        for (VertexId v = 0; v < g.vertex_count(); v++)
        {
            auto nb = g.neighbors(v);
            CHECK(is_sorted(nb.begin(), nb.end()));
            CHECK(adjacent_find(nb.begin(), nb.end()) == nb.end());
            for (VertexId w : nb)
            {
                CHECK(w != v);
                CHECK(g.has_edge(w, v));
            }
        }
    }
}

TEST_CASE("canonical export round-trips")
{
    Graph g = gen_erdos_renyi(30, 0.2, 3);
    ostringstream first;
    write_canonical_edge_list(g, first);
    Graph g2 = load_graph(first.str());
    ostringstream second;
    write_canonical_edge_list(g2, second);
    CHECK(first.str() == second.str());
    CHECK(g2.vertex_count() == g.vertex_count());
    CHECK(g2.edge_count() == g.edge_count());
}

TEST_CASE("bfs_distances: path graph and cut vertex")
{
    Graph g = load_graph("0 1\n1 2\n2 3\n");
    auto remap = [&](initializer_list<Distance> by_ext) {
        vector<Distance> out(4);
        size_t i = 0;
        for (Distance d : by_ext)
            out[ext(g, i++)] = d;
        return out;
    };
    CHECK(bfs_distances(g, ext(g, 0)) == remap({0, 1, 2, 3}));

    vector<VertexId> cut{ext(g, 1)};
    auto dist = bfs_distances(g, ext(g, 0), cut);
    CHECK(dist[ext(g, 0)] == 0);
    CHECK(dist[ext(g, 1)] == kInfDistance);
    CHECK(dist[ext(g, 2)] == kInfDistance);
    CHECK(dist[ext(g, 3)] == kInfDistance);

    CHECK_THROWS_AS(bfs_distances(g, ext(g, 1), cut), invalid_argument);
}

TEST_CASE("bfs_distances: levels of the example graph from vertex 1")
{
    Graph g = fig3a();
    auto dist = bfs_distances(g, ext(g, 1));
    const pair<uint64_t, Distance> expected[] = {
        {1, 0}, {2, 1}, {4, 1}, {5, 1}, {6, 1}, {13, 1},
        {3, 2}, {7, 2}, {8, 2}, {9, 2}, {14, 2},
        {10, 3}, {12, 3}, {11, 4}};
    for (auto [v, d] : expected)
        CHECK(dist[ext(g, v)] == d);
}

namespace {

// Floyd-Warshall over the adjacency matrix
vector<vector<uint32_t>> floyd_warshall(const Graph &g)
{
    const uint32_t inf = 0xFFFFFFF;
    size_t n = g.vertex_count();
    vector<vector<uint32_t>> d(n, vector<uint32_t>(n, inf));
    for (VertexId v = 0; v < n; v++)
    {
        d[v][v] = 0;
        for (VertexId w : g.neighbors(v))
            d[v][w] = 1;
    }
    for (size_t k = 0; k < n; k++)
        for (size_t i = 0; i < n; i++)
            for (size_t j = 0; j < n; j++)
                d[i][j] = min(d[i][j], d[i][k] + d[k][j]);
    return d;
}

} // namespace

TEST_CASE("bfs_distances: agrees with Floyd-Warshall on small graphs")
{
    for (const Graph &g : random_graph_suite(8, 64, 21))
    {
        auto fw = floyd_warshall(g);
        for (VertexId s = 0; s < g.vertex_count(); s++)
        {
            auto dist = bfs_distances(g, s);
            for (VertexId t = 0; t < g.vertex_count(); t++)
            {
                uint32_t expected = fw[s][t] >= 0xFFFFFFF ? kInfDistance : fw[s][t];
                CHECK(dist[t] == expected);
            }
            // adjacent levels differ by at most one
            for (VertexId x = 0; x < g.vertex_count(); x++)
                for (VertexId y : g.neighbors(x))
                    if (dist[x] != kInfDistance && dist[y] != kInfDistance)
                        CHECK(abs(int(dist[x]) - int(dist[y])) <= 1);
        }
    }
}

TEST_CASE("degree_descending: star center first, triangle tie-break")
{
    Graph star = load_graph("0 1\n0 2\n0 3\n0 4\n");
    CHECK(degree_descending(star)[0] == ext(star, 0));

    Graph tri = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(degree_descending(tri) == vector<VertexId>{0, 1, 2});
}

TEST_CASE("degree_descending: max element verified by scan")
{
    Graph g = gen_barabasi_albert(1000, 3, 3);
    auto order = degree_descending(g);
    REQUIRE(order.size() == g.vertex_count());
    uint32_t max_deg = 0;
    for (VertexId v = 0; v < g.vertex_count(); v++)
        max_deg = max(max_deg, g.degree(v));
    CHECK(g.degree(order[0]) == max_deg);
    for (size_t i = 1; i < order.size(); i++)
    {
        uint32_t prev = g.degree(order[i - 1]), cur = g.degree(order[i]);
        CHECK(prev >= cur);
        if (prev == cur)
            CHECK(order[i - 1] < order[i]);
    }
}

TEST_CASE("generators: complete graph, determinism, handshake")
{
    Graph complete = gen_erdos_renyi(10, 1.0, 1);
    CHECK(complete.edge_count() == 45);

    Graph a = gen_barabasi_albert(200, 5, 9);
    Graph b = gen_barabasi_albert(200, 5, 9);
    ostringstream ta, tb;
    write_canonical_edge_list(a, ta);
    write_canonical_edge_list(b, tb);
    CHECK(ta.str() == tb.str());

    uint64_t degree_sum = 0;
    for (VertexId v = 0; v < a.vertex_count(); v++)
        degree_sum += a.degree(v);
    CHECK(degree_sum == 2 * a.edge_count());

    Graph grid = gen_grid(9);
    CHECK(grid.vertex_count() == 9);
    CHECK(grid.edge_count() == 12); // 3x3 grid
}
