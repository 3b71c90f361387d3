#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace polytree {

/// Numerical degeneracy: singular conditioning blocks, collapsed variances,
/// correlations outside the representable range. Maps to CLI exit code 2.
class degenerate_error : public std::runtime_error {
public:
    explicit degenerate_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when v-structure detection demands both orientations of one edge.
class orientation_conflict_error : public std::runtime_error {
public:
    orientation_conflict_error(const std::string& what, std::pair<int, int> edge)
        : std::runtime_error(what), edge_(edge) {}

    std::pair<int, int> edge() const { return edge_; }

private:
    std::pair<int, int> edge_;
};

}  // namespace polytree
