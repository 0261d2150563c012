#include "dstrust/netsim/topology.hpp"

#include <cmath>
#include <stdexcept>

namespace dstrust::sim {

Topology Topology::grid(int rows, int cols, double spacing, double range) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("grid needs at least one node");
    if (!(spacing > 0.0) || !(range > 0.0))
        throw std::invalid_argument("spacing and range must be positive");
    std::vector<Position> pts;
    pts.reserve(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) pts.push_back({c * spacing, r * spacing});
    return from_points(std::move(pts), range);
}

Topology Topology::from_points(std::vector<Position> points, double range) {
    Topology t;
    t.positions_ = std::move(points);
    t.range_ = range;
    t.build_adjacency();
    return t;
}

bool Topology::are_neighbors(int a, int b) const {
    for (int n : neighbors(a))
        if (n == b) return true;
    return false;
}

double Topology::distance(int a, int b) const {
    const auto& pa = position(a);
    const auto& pb = position(b);
    return std::hypot(pa.x - pb.x, pa.y - pb.y);
}

void Topology::build_adjacency() {
    const int n = size();
    adjacency_.assign(static_cast<std::size_t>(n), {});
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (distance(a, b) <= range_) {
                adjacency_[static_cast<std::size_t>(a)].push_back(b);
                adjacency_[static_cast<std::size_t>(b)].push_back(a);
            }
}

}  // namespace dstrust::sim
