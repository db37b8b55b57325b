#pragma once

#include <complex>
#include <cstddef>

namespace resolvent_lab {

/// Polar sampling grid on a disk of radius max_radius.  Radii are
/// max_radius * (k+1)/radius_count for k = 0..radius_count-1 (the origin is
/// never a node), angles are 2 pi j / angle_count.
struct Grid {
    int radius_count = 64;
    int angle_count = 256;
    double max_radius = 0.999;

    double radius(int k) const {
        return max_radius * static_cast<double>(k + 1) / static_cast<double>(radius_count);
    }
    double angle(int j) const;
    std::complex<double> node(int k, int j) const;
    std::size_t size() const {
        return static_cast<std::size_t>(radius_count) * static_cast<std::size_t>(angle_count);
    }
};

} // namespace resolvent_lab
