// Deterministic synthetic graph generators for benchmarks and tests.
#pragma once

#include "spgq/graph.hpp"

#include <cstdint>

namespace spgq {

// Erdos-Renyi G(n, p). Per-pair coin flips from a seeded engine.
Graph gen_erdos_renyi(std::uint32_t n, double p, std::uint64_t seed);

// Barabasi-Albert preferential attachment: vertex m links all of 0..m-1, every
// later vertex attaches to m distinct targets drawn degree-proportionally.
Graph gen_barabasi_albert(std::uint32_t n, std::uint32_t m, std::uint64_t seed);

// Near-square 2D grid with n vertices in row-major order.
Graph gen_grid(std::uint32_t n);

} // namespace spgq
