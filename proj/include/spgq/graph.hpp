// Immutable undirected graph in CSR form with external-id mapping.
#pragma once

#include <cassert>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace spgq {

using VertexId = std::uint32_t;
using Distance = std::uint16_t;

// hop-count sentinel for "unreachable"
constexpr Distance kInfDistance = 0xFFFF;
// largest representable hop count; graphs of larger diameter are rejected
constexpr Distance kMaxDistance = kInfDistance - 1;

// undirected edge, normalized so that first < second
using Edge = std::pair<VertexId, VertexId>;

inline Edge make_edge(VertexId a, VertexId b)
{
    return a < b ? Edge{a, b} : Edge{b, a};
}

struct ParseError : std::runtime_error
{
    std::size_t line;
    ParseError(std::size_t line, const std::string &what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
};

// normalization counters from edge-list ingest
struct IngestReport
{
    std::uint64_t lines = 0;
    std::uint64_t comments = 0;
    std::uint64_t self_loops = 0;
    std::uint64_t duplicates = 0;
};

class Graph
{
public:
    Graph() = default;

    // Build from internal-id edges; external ids equal internal ids.
    // Self-loops and duplicates are dropped.
    static Graph from_edges(std::uint32_t vertex_count, std::vector<Edge> edges);

    std::uint32_t vertex_count() const { return static_cast<std::uint32_t>(offsets_.empty() ? 0 : offsets_.size() - 1); }
    std::uint64_t edge_count() const { return adjacency_.size() / 2; }

    // sorted, duplicate-free adjacency slice
    std::span<const VertexId> neighbors(VertexId v) const
    {
        assert(v < vertex_count());
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }

    std::uint32_t degree(VertexId v) const
    {
        return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
    }

    bool has_edge(VertexId u, VertexId v) const;

    std::uint64_t external_id(VertexId v) const { return external_ids_[v]; }
    std::optional<VertexId> find_external(std::uint64_t ext) const
    {
        auto it = id_map_.find(ext);
        if (it == id_map_.end())
            return std::nullopt;
        return it->second;
    }

private:
    std::vector<std::uint64_t> offsets_;     // |V|+1 cumulative degrees
    std::vector<VertexId> adjacency_;        // flat neighbor lists, 2|E| entries
    std::vector<std::uint64_t> external_ids_;
    std::unordered_map<std::uint64_t, VertexId> id_map_;

    friend Graph load_edge_list(std::istream &, IngestReport *);
    void build_csr(std::uint32_t vertex_count, std::vector<Edge> &edges);
};

// Parse whitespace-separated "u v" lines; '#'/'%' lines are comments.
// External ids are remapped to dense internal ids in first-appearance order;
// direction, self-loops and duplicates are collapsed.
Graph load_edge_list(std::istream &in, IngestReport *report = nullptr);

// One "u v" line per edge with u < v in external ids, ascending.
void write_canonical_edge_list(const Graph &g, std::ostream &out);

// BFS hop counts from source, with the given vertices removed from the graph.
// dist[source] = 0, unreachable = kInfDistance.
std::vector<Distance> bfs_distances(const Graph &g, VertexId source,
                                    std::span<const VertexId> excluded = {});

// Vertices sorted by degree descending, ties by ascending id.
std::vector<VertexId> degree_descending(const Graph &g);

} // namespace spgq
