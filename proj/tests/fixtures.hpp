// Shared test fixtures and brute-force oracles.
#pragma once

#include "spgq/baselines.hpp"
#include "spgq/gen.hpp"
#include "spgq/labelling.hpp"

#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace spgq::testing {

// 14-vertex example graph with three hub vertices 1, 2, 3. Vertex 3 appears
// early so that the degree ordering (with id tie-break) selects exactly
// {1, 2, 3} for k = 3.
inline const char *kFig3aEdgeList =
    "1 2\n"
    "2 3\n"
    "3 4\n"
    "1 4\n"
    "1 5\n"
    "1 6\n"
    "1 13\n"
    "2 8\n"
    "2 9\n"
    "3 12\n"
    "5 6\n"
    "5 14\n"
    "6 7\n"
    "7 8\n"
    "8 9\n"
    "9 10\n"
    "10 11\n"
    "11 12\n"
    "13 14\n";

// 7-vertex example with two shortest paths between 3 and 7 (through 1 and
// through 4), both passing vertex 5.
inline const char *kFig2aEdgeList =
    "1 2\n"
    "1 3\n"
    "2 4\n"
    "2 5\n"
    "3 4\n"
    "5 6\n"
    "5 7\n"
    "6 7\n";

inline Graph load_graph(const std::string &text)
{
    std::istringstream in(text);
    return load_edge_list(in);
}

inline Graph fig3a() { return load_graph(kFig3aEdgeList); }
inline Graph fig2a() { return load_graph(kFig2aEdgeList); }

// distance-3 pair with exactly three shortest paths
inline Graph three_path_graph()
{
    return Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 5}, {0, 3}, {3, 4}, {4, 5}, {1, 4}});
}

// distance-3 pair (0, 7) with exactly seven shortest paths
inline Graph seven_path_graph()
{
    return Graph::from_edges(8, {{0, 1}, {0, 2}, {0, 3},
                                 {1, 4}, {1, 5}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {3, 6},
                                 {4, 7}, {5, 7}, {6, 7}});
}

inline VertexId ext(const Graph &g, std::uint64_t external)
{
    auto v = g.find_external(external);
    if (!v)
        throw std::runtime_error("fixture vertex missing: " + std::to_string(external));
    return *v;
}

// mix of sparse and denser random graphs for property tests
inline std::vector<Graph> random_graph_suite(std::size_t count, std::uint32_t max_n,
                                             std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<Graph> graphs;
    graphs.reserve(count);
    for (std::size_t i = 0; i < count; i++)
    {
        std::uint32_t n = 5 + static_cast<std::uint32_t>(rng() % (max_n - 4));
        if (i % 3 == 2 && n >= 6)
        {
            std::uint32_t m = 1 + static_cast<std::uint32_t>(rng() % 4);
            graphs.push_back(gen_barabasi_albert(n, std::min(m, n - 1), rng()));
        }
        else
        {
            double avg_deg = 2.0 + static_cast<double>(rng() % 1200) / 100.0; // 2..14
            double p = std::min(1.0, avg_deg / n);
            graphs.push_back(gen_erdos_renyi(n, p, rng()));
        }
    }
    return graphs;
}

// restricted-distance oracle: BFS with the given vertices deleted
inline std::vector<Distance> restricted_bfs(const Graph &g, VertexId source,
                                            const std::vector<VertexId> &deleted)
{
    return bfs_distances(g, source, deleted);
}

// all landmarks except keep_a / keep_b
inline std::vector<VertexId> landmarks_except(const LandmarkSet &set, VertexId keep_a,
                                              VertexId keep_b = static_cast<VertexId>(-1))
{
    std::vector<VertexId> out;
    for (VertexId r : set.landmarks)
        if (r != keep_a && r != keep_b)
            out.push_back(r);
    return out;
}

} // namespace spgq::testing
