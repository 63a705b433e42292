#include "mrsav/checkpoint.hpp"

#include <cstring>
#include <fstream>

#include "mrsav/errors.hpp"
#include "mrsav/field_io.hpp"

namespace mrsav {

namespace {
constexpr char kMagic[8] = {'M', 'R', 'S', 'A', 'V', 'G', 'F', 'D'};
constexpr std::uint32_t kVersion = 1;
}  // namespace

void write_checkpoint(const std::string& path, const TwoLevelState& state, double k,
                      double gamma) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open checkpoint for writing: " + path);
    const Grid& grid = state.u_curr.grid();

    os.write(kMagic, sizeof kMagic);
    binio::put_u32(os, kVersion);
    binio::put_u32(os, static_cast<std::uint32_t>(grid.dim()));
    for (int a = 0; a < grid.dim(); ++a)
        binio::put_u32(os, static_cast<std::uint32_t>(grid.modes(a)));
    for (int a = 0; a < grid.dim(); ++a) binio::put_f64(os, grid.length(a));
    binio::put_f64(os, state.time(k));
    binio::put_f64(os, k);
    binio::put_f64(os, gamma);
    binio::put_f64(os, state.q_curr);
    binio::put_f64(os, state.q_prev);
    binio::put_u64(os, static_cast<std::uint64_t>(state.step_index));
    binio::put_coeffs(os, state.u_curr);
    binio::put_coeffs(os, state.u_prev);
    if (!os) throw IoError("checkpoint write failed: " + path);
}

CheckpointData read_checkpoint(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open checkpoint: " + path);

    char magic[8];
    is.read(magic, sizeof magic);
    if (is.gcount() != sizeof magic || std::memcmp(magic, kMagic, sizeof magic) != 0)
        throw IoError("bad checkpoint magic in " + path);
    const auto version = binio::get_u32(is, path);
    if (version != kVersion)
        throw IoError("unsupported checkpoint version " + std::to_string(version) + " in " + path);

    const auto dim = binio::get_u32(is, path);
    if (dim != 2 && dim != 3) throw IoError("checkpoint grid dimension invalid in " + path);
    std::array<int, 3> modes{1, 1, 1};
    for (std::uint32_t a = 0; a < dim; ++a) {
        const auto m = binio::get_u32(is, path);
        if (m < 4 || m % 2 != 0 || m > (1u << 24))
            throw IoError("checkpoint mode count invalid in " + path);
        modes[a] = static_cast<int>(m);
    }
    std::array<double, 3> lengths{0.0, 0.0, 0.0};
    for (std::uint32_t a = 0; a < dim; ++a) lengths[a] = binio::get_f64(is, path);
    Grid grid(static_cast<int>(dim), lengths, modes);

    const double t = binio::get_f64(is, path);
    const double k = binio::get_f64(is, path);
    const double gamma = binio::get_f64(is, path);
    const double q_curr = binio::get_f64(is, path);
    const double q_prev = binio::get_f64(is, path);
    const auto n = binio::get_u64(is, path);

    SpectralField u_curr(grid, FieldRole::vorticity);
    SpectralField u_prev(grid, FieldRole::vorticity);
    binio::get_coeffs(is, u_curr, path);
    binio::get_coeffs(is, u_prev, path);

    TwoLevelState state(std::move(u_curr), std::move(u_prev), q_curr, q_prev,
                        static_cast<std::int64_t>(n));
    return CheckpointData{std::move(state), t, k, gamma};
}

}  // namespace mrsav
