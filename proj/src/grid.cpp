#include "resolvent_lab/grid.hpp"

#include <cmath>
#include <numbers>

namespace resolvent_lab {

double Grid::angle(int j) const {
    return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(angle_count);
}

std::complex<double> Grid::node(int k, int j) const {
    return std::polar(radius(k), angle(j));
}

} // namespace resolvent_lab
