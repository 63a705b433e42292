#include "mrsav/grid.hpp"

#include <cmath>
#include <string>

#include "mrsav/errors.hpp"

namespace mrsav {

Grid::Grid(int dim, std::array<double, 3> lengths, std::array<int, 3> modes)
    : dim_(dim), lengths_(lengths), modes_(modes) {
    if (dim != 2 && dim != 3) throw ConfigError("grid dimension must be 2 or 3");
    point_count_ = 1;
    volume_ = 1.0;
    for (int a = 0; a < dim_; ++a) {
        if (modes_[a] < 4 || modes_[a] % 2 != 0)
            throw ConfigError("grid modes must be even and >= 4 on axis " + std::to_string(a));
        if (!(lengths_[a] > 0.0))
            throw ConfigError("grid length must be positive on axis " + std::to_string(a));
        point_count_ *= static_cast<std::size_t>(modes_[a]);
        volume_ *= lengths_[a];
        wave_unit_[a] = 2.0 * M_PI / lengths_[a];
    }
    for (int a = dim_; a < 3; ++a) {
        lengths_[a] = 0.0;
        modes_[a] = 1;
        wave_unit_[a] = 0.0;
    }
}

bool Grid::operator==(const Grid& other) const {
    if (dim_ != other.dim_) return false;
    for (int a = 0; a < dim_; ++a)
        if (modes_[a] != other.modes_[a] || lengths_[a] != other.lengths_[a]) return false;
    return true;
}

}  // namespace mrsav
