#pragma once

#include <cstddef>
#include <vector>

#include "fracflow/errors.hpp"

namespace fracflow {

/// Non-uniform time partition 0 = t_0 < t_1 < ... < t_N = T.
/// Immutable after construction; safe to share read-only across threads.
struct Partition {
    std::vector<double> nodes;   // length N+1, nodes[0] == 0
    std::vector<double> tau;     // per-interval steps, length N
    double T = 0.0;
    std::size_t N = 0;
    double tau_max = 0.0;

    /// Index n such that t in (nodes[n-1], nodes[n]], plus floor/ceil values.
    struct Location {
        std::size_t n;
        double floor;
        double ceil;
    };

    [[nodiscard]] Location locate(double t) const;
};

/// Build a partition from explicit nodes. Rejects non-increasing node lists
/// and lists that do not start at 0.
[[nodiscard]] Partition make_partition(std::vector<double> nodes);

/// Uniform partition of [0, T] with N intervals, nodes[k] = k*T/N.
[[nodiscard]] Partition uniform_partition(double T, std::size_t N);

}  // namespace fracflow
