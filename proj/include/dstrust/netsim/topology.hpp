// Static node layout with unit-disk connectivity: two nodes are neighbors iff
// their distance is at most the transmission range.
#pragma once

#include <vector>

namespace dstrust::sim {

struct Position {
    double x = 0.0;
    double y = 0.0;
};

class Topology {
public:
    Topology() = default;

    // rows x cols lattice with the given spacing.
    static Topology grid(int rows, int cols, double spacing, double range);

    // Arbitrary layout, mostly for tests (lines, custom shapes).
    static Topology from_points(std::vector<Position> points, double range);

    int size() const { return static_cast<int>(positions_.size()); }
    double range() const { return range_; }
    const Position& position(int node) const { return positions_[static_cast<std::size_t>(node)]; }

    // Ascending node ids; symmetric, no self edges.
    const std::vector<int>& neighbors(int node) const {
        return adjacency_[static_cast<std::size_t>(node)];
    }
    bool are_neighbors(int a, int b) const;

    double distance(int a, int b) const;

private:
    void build_adjacency();

    std::vector<Position> positions_;
    std::vector<std::vector<int>> adjacency_;
    double range_ = 0.0;
};

}  // namespace dstrust::sim
