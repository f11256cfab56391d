#include "doctest.h"

#include "fixtures.hpp"
#include "spgq/bench.hpp"

#include <random>
#include <set>

using namespace spgq;
using namespace spgq::testing;
using namespace std;

TEST_CASE("sample_query_set: reproducible, distinct, clamped")
{
    Graph g = gen_erdos_renyi(40, 0.2, 12);
    QuerySet a = sample_query_set(g, 100, 424242);
    QuerySet b = sample_query_set(g, 100, 424242);
    CHECK(a.pairs == b.pairs);
    CHECK(a.pairs.size() == 100);
    set<pair<VertexId, VertexId>> seen;
    for (auto [u, v] : a.pairs)
    {
        CHECK(u != v);
        CHECK(seen.insert({min(u, v), max(u, v)}).second);
    }

    QuerySet c = sample_query_set(g, 50, 7);
    QuerySet d = sample_query_set(g, 50, 8);
    CHECK(c.pairs != d.pairs);

    // more pairs requested than exist
    Graph tiny = gen_grid(4);
    QuerySet e = sample_query_set(tiny, 100, 1);
    CHECK(e.pairs.size() == 6);
}

TEST_CASE("classify_pair: forced small cases")
{
    // path 0-1-2 with landmark 1: the only shortest path uses the landmark
    Graph path = Graph::from_edges(3, {{0, 1}, {1, 2}});
    LabellingScheme scheme = build_labelling(path, make_landmark_set(path, {1}));
    SpgQuerier querier(path, scheme);
    CHECK(classify_pair(querier.probe(0, 2)) == PairCoverage::all);

    // triangle, landmark 0: adjacent pair (1,2) has d_top = 2 > 1
    Graph tri = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
    LabellingScheme tri_scheme = build_labelling(tri, select_landmarks(tri, 1));
    SpgQuerier tq(tri, tri_scheme);
    QueryProbe probe = tq.probe(1, 2);
    CHECK(probe.d_top == 2);
    CHECK(probe.distance == 1);
    CHECK(classify_pair(probe) == PairCoverage::none);

    // disconnected pair
    Graph two = Graph::from_edges(4, {{0, 1}, {2, 3}});
    LabellingScheme two_scheme = build_labelling(two, make_landmark_set(two, {0}));
    SpgQuerier dq(two, two_scheme);
    CHECK(classify_pair(dq.probe(1, 2)) == PairCoverage::unreachable);
}

TEST_CASE("classify_pair: matches path enumeration on random graphs")
{
    mt19937_64 rng(515);
    for (const Graph &g : random_graph_suite(12, 40, 525))
    {
        uint32_t n = g.vertex_count();
        uint32_t k = min<uint32_t>(1 + static_cast<uint32_t>(rng() % 5), n);
        LabellingScheme scheme = build_labelling(g, select_landmarks(g, k));
        SpgQuerier querier(g, scheme);

        for (VertexId u = 0; u < n; u++)
            for (VertexId v = u + 1; v < n; v++)
            {
                uint64_t covered = 0, total = 0;
                enumerate_shortest_paths(g, u, v, 500000, [&](span<const VertexId> path) {
                    total++;
                    for (VertexId x : path)
                        if (scheme.landmark_set.is_landmark(x))
                        {
                            covered++;
                            return;
                        }
                });
                PairCoverage expected;
                if (total == 0)
                    expected = PairCoverage::unreachable;
                else if (covered == total)
                    expected = PairCoverage::all;
                else if (covered > 0)
                    expected = PairCoverage::some;
                else
                    expected = PairCoverage::none;
                CHECK(classify_pair(querier.probe(u, v)) == expected);
            }
    }
}

TEST_CASE("coverage report counters")
{
    CoverageReport report;
    report.count(PairCoverage::all);
    report.count(PairCoverage::some);
    report.count(PairCoverage::some);
    report.count(PairCoverage::none);
    report.count(PairCoverage::unreachable);
    CHECK(report.n_all == 1);
    CHECK(report.n_some == 2);
    CHECK(report.n_none == 1);
    CHECK(report.n_unreachable == 1);
    CHECK(report.total() == 5);
}
