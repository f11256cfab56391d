#include "spgq/bench.hpp"

#include <random>
#include <unordered_set>

using namespace std;

namespace spgq {

QuerySet sample_query_set(const Graph &g, size_t n, uint64_t seed)
{
    QuerySet qs;
    qs.seed = seed;
    const uint64_t v = g.vertex_count();
    if (v < 2)
        return qs;
    uint64_t available = v * (v - 1) / 2;
    n = static_cast<size_t>(min<uint64_t>(n, available));

    mt19937_64 rng(seed);
    unordered_set<uint64_t> taken;
    taken.reserve(n * 2);
    qs.pairs.reserve(n);
    while (qs.pairs.size() < n)
    {
        VertexId a = static_cast<VertexId>(rng() % v);
        VertexId b = static_cast<VertexId>(rng() % v);
        if (a == b)
            continue;
        uint64_t key = (static_cast<uint64_t>(min(a, b)) << 32) | max(a, b);
        if (taken.insert(key).second)
            qs.pairs.emplace_back(a, b);
    }
    return qs;
}

PairCoverage classify_pair(const QueryProbe &probe)
{
    if (probe.distance == kInfDistance)
        return PairCoverage::unreachable;
    // no landmark-free route at the pair distance: every shortest path is covered
    if (probe.bidir_status != BidirStatus::met || probe.sparsified_distance > probe.distance)
        return PairCoverage::all;
    return probe.d_top == probe.distance ? PairCoverage::some : PairCoverage::none;
}

void CoverageReport::count(PairCoverage c)
{
    switch (c)
    {
    case PairCoverage::all: n_all++; break;
    case PairCoverage::some: n_some++; break;
    case PairCoverage::none: n_none++; break;
    case PairCoverage::unreachable: n_unreachable++; break;
    }
}

} // namespace spgq
