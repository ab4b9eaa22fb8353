#include "fracflow/partition.hpp"

#include <algorithm>
#include <cmath>

namespace fracflow {

Partition::Location Partition::locate(double t) const {
    if (!(t > 0.0) || t > T) {
        throw FlowError(ErrorCode::OutOfRange,
                        "locate requires t in (0, T], got t=" + std::to_string(t));
    }
    // first node >= t; intervals are left-open right-closed
    auto it = std::lower_bound(nodes.begin() + 1, nodes.end(), t);
    std::size_t n = static_cast<std::size_t>(it - nodes.begin());
    return Location{n, nodes[n - 1], nodes[n]};
}

Partition make_partition(std::vector<double> nodes) {
    if (nodes.size() < 2) {
        throw FlowError(ErrorCode::NonMonotone, "need at least two nodes");
    }
    if (nodes.front() != 0.0) {
        throw FlowError(ErrorCode::BadOrigin, "first node must be 0");
    }
    Partition p;
    p.N = nodes.size() - 1;
    p.tau.resize(p.N);
    for (std::size_t k = 0; k < p.N; ++k) {
        double step = nodes[k + 1] - nodes[k];
        if (!(step > 0.0) || !std::isfinite(step)) {
            throw FlowError(ErrorCode::NonMonotone,
                            "nodes must be strictly increasing (interval " + std::to_string(k) + ")");
        }
        p.tau[k] = step;
    }
    p.T = nodes.back();
    p.tau_max = *std::max_element(p.tau.begin(), p.tau.end());
    p.nodes = std::move(nodes);
    return p;
}

Partition uniform_partition(double T, std::size_t N) {
    if (N == 0) {
        throw FlowError(ErrorCode::BadCount, "N must be >= 1");
    }
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw FlowError(ErrorCode::BadHorizon, "T must be positive");
    }
    std::vector<double> nodes(N + 1);
    for (std::size_t k = 0; k <= N; ++k) {
        nodes[k] = static_cast<double>(k) * T / static_cast<double>(N);
    }
    nodes[N] = T;
    return make_partition(std::move(nodes));
}

}  // namespace fracflow
