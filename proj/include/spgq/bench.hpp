// Query sampling and pair coverage classification for the benchmark harness.
#pragma once

#include "spgq/search.hpp"

#include <cstdint>
#include <vector>

namespace spgq {

struct QuerySet
{
    std::uint64_t seed = 0;
    std::vector<std::pair<VertexId, VertexId>> pairs; // u != v
};

// n distinct-vertex pairs sampled uniformly without replacement; reproducible
// from (graph, n, seed). n is clamped to the number of available pairs.
QuerySet sample_query_set(const Graph &g, std::size_t n, std::uint64_t seed);

enum class PairCoverage
{
    all,         // every shortest path contains a landmark
    some,        // some but not all do
    none,        // no shortest path contains a landmark
    unreachable, // no path at all
};

PairCoverage classify_pair(const QueryProbe &probe);

struct CoverageReport
{
    std::uint64_t n_all = 0;
    std::uint64_t n_some = 0;
    std::uint64_t n_none = 0;
    std::uint64_t n_unreachable = 0;

    std::uint64_t total() const { return n_all + n_some + n_none + n_unreachable; }
    void count(PairCoverage c);
};

} // namespace spgq
