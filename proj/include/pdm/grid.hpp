#ifndef PDM_GRID_HPP
#define PDM_GRID_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace pdm {

// Uniform grid on [r_min, r_max]; nodes are exactly r_min + i*h.
struct RadialGrid {
    double r_min;
    double r_max;
    std::size_t count;

    RadialGrid(double rmin, double rmax, std::size_t n)
        : r_min(rmin), r_max(rmax), count(n) {
        if (!(r_min < r_max))
            throw std::invalid_argument("RadialGrid: r_min must be < r_max");
        if (count < 16)
            throw std::invalid_argument("RadialGrid: need at least 16 nodes");
    }

    double spacing() const { return (r_max - r_min) / static_cast<double>(count - 1); }

    double node(std::size_t i) const { return r_min + static_cast<double>(i) * spacing(); }

    std::vector<double> nodes() const {
        std::vector<double> out(count);
        for (std::size_t i = 0; i < count; ++i) out[i] = node(i);
        return out;
    }
};

} // namespace pdm

#endif
