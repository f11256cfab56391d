#include "spgq/gen.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

using namespace std;

namespace spgq {

Graph gen_erdos_renyi(uint32_t n, double p, uint64_t seed)
{
    if (p < 0.0 || p > 1.0)
        throw invalid_argument("edge probability must be in [0, 1]");
    mt19937_64 rng(seed);
    // compare raw draws against a fixed threshold: stable across library versions
    const uint64_t threshold =
        p >= 1.0 ? UINT64_MAX : static_cast<uint64_t>(p * 18446744073709551616.0);
    vector<Edge> edges;
    for (VertexId u = 0; u < n; u++)
        for (VertexId v = u + 1; v < n; v++)
        {
            uint64_t draw = rng();
            if (p >= 1.0 || draw < threshold)
                edges.push_back({u, v});
        }
    return Graph::from_edges(n, std::move(edges));
}

Graph gen_barabasi_albert(uint32_t n, uint32_t m, uint64_t seed)
{
    if (m < 1 || m >= n)
        throw invalid_argument("attachment count must be in [1, n-1]");
    mt19937_64 rng(seed);
    vector<Edge> edges;
    edges.reserve(static_cast<size_t>(m) * n);
    // endpoint multiset: picking uniformly from it is degree-proportional
    vector<VertexId> endpoints;
    endpoints.reserve(2 * static_cast<size_t>(m) * n);

    for (VertexId t = 0; t < m; t++)
    {
        edges.push_back({t, m});
        endpoints.push_back(t);
        endpoints.push_back(m);
    }
    vector<VertexId> targets;
    for (VertexId t = m + 1; t < n; t++)
    {
        targets.clear();
        while (targets.size() < m)
        {
            VertexId cand = endpoints[rng() % endpoints.size()];
            if (find(targets.begin(), targets.end(), cand) == targets.end())
                targets.push_back(cand);
        }
        for (VertexId c : targets)
        {
            edges.push_back(make_edge(c, t));
            endpoints.push_back(c);
            endpoints.push_back(t);
        }
    }
    return Graph::from_edges(n, std::move(edges));
}

Graph gen_grid(uint32_t n)
{
    if (n == 0)
        return Graph::from_edges(0, {});
    uint32_t side = static_cast<uint32_t>(ceil(sqrt(static_cast<double>(n))));
    vector<Edge> edges;
    for (VertexId v = 0; v < n; v++)
    {
        uint32_t row = v / side, col = v % side;
        if (col + 1 < side && v + 1 < n)
            edges.push_back({v, v + 1});
        if ((row + 1) * side + col < n)
            edges.push_back({v, v + side});
    }
    return Graph::from_edges(n, std::move(edges));
}

} // namespace spgq
