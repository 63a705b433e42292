#include "mrsav/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <string>

#include "mrsav/errors.hpp"

namespace mrsav {
namespace detail {
namespace {

struct PlanKey {
    int rank;
    std::array<int, 3> n;
    int sign;
    bool aligned;
    auto operator<=>(const PlanKey&) const = default;
};

// Plans are created once per shape with FFTW_ESTIMATE, which keeps planning
// deterministic. The aligned variant serves the common case (glibc heap
// buffers are 16-byte aligned); an unaligned fallback covers everything else.
// The scratch buffers used at planning time stay alive with the plan.
struct CachedPlan {
    fftw_plan plan = nullptr;
    std::vector<std::complex<double>> scratch_in, scratch_out;
};

std::mutex plan_mutex;
std::map<PlanKey, CachedPlan>& plan_cache() {
    static std::map<PlanKey, CachedPlan> cache;
    return cache;
}

fftw_plan get_plan(const PlanKey& key) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto& cache = plan_cache();
    auto it = cache.find(key);
    if (it != cache.end()) return it->second.plan;

    CachedPlan entry;
    std::size_t total = 1;
    for (int a = 0; a < key.rank; ++a) total *= static_cast<std::size_t>(key.n[a]);
    entry.scratch_in.resize(total);
    entry.scratch_out.resize(total);
    auto* in = reinterpret_cast<fftw_complex*>(entry.scratch_in.data());
    auto* out = reinterpret_cast<fftw_complex*>(entry.scratch_out.data());
    if (key.aligned &&
        (fftw_alignment_of(reinterpret_cast<double*>(in)) != 0 ||
         fftw_alignment_of(reinterpret_cast<double*>(out)) != 0))
        throw NumericFault("fftw scratch buffers unexpectedly misaligned");
    const unsigned flags = FFTW_ESTIMATE | (key.aligned ? 0u : FFTW_UNALIGNED);
    entry.plan = fftw_plan_dft(key.rank, key.n.data(), in, out, key.sign, flags);
    if (!entry.plan) throw NumericFault("fftw plan creation failed");
    auto [pos, inserted] = cache.emplace(key, std::move(entry));
    return pos->second.plan;
}

void execute(PlanKey key, const std::complex<double>* in, std::complex<double>* out) {
    auto* in_raw = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in));
    auto* out_raw = reinterpret_cast<fftw_complex*>(out);
    key.aligned = fftw_alignment_of(reinterpret_cast<double*>(in_raw)) == 0 &&
                  fftw_alignment_of(reinterpret_cast<double*>(out_raw)) == 0;
    fftw_execute_dft(get_plan(key), in_raw, out_raw);
}

}  // namespace

void fft_c2c(const Grid& grid, const std::complex<double>* in, std::complex<double>* out, int sign) {
    PlanKey key{grid.dim(), {1, 1, 1}, sign, true};
    for (int a = 0; a < grid.dim(); ++a) key.n[a] = grid.modes(a);
    execute(key, in, out);
}

void fft_1d(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
    PlanKey key{1, {static_cast<int>(in.size()), 1, 1}, FFTW_FORWARD, true};
    execute(key, in.data(), out.data());
}

}  // namespace detail

SpectralField forward_transform(const Grid& grid, std::span<const double> values, FieldRole role) {
    if (values.size() != grid.point_count())
        throw ConfigError("forward_transform: value array shape does not match grid modes (" +
                          std::to_string(values.size()) + " vs " +
                          std::to_string(grid.point_count()) + " points)");
    std::vector<std::complex<double>> in(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) in[i] = values[i];
    SpectralField out(grid, role);
    detail::fft_c2c(grid, in.data(), out.coeffs().data(), FFTW_FORWARD);
    const double scale = 1.0 / static_cast<double>(grid.point_count());
    for (auto& c : out.coeffs()) c *= scale;
    return out;
}

std::vector<double> inverse_transform(const SpectralField& field) {
    const Grid& grid = field.grid();
    std::vector<std::complex<double>> out(grid.point_count());
    detail::fft_c2c(grid, field.coeffs().data(), out.data(), FFTW_BACKWARD);
    std::vector<double> values(grid.point_count());
    for (std::size_t i = 0; i < out.size(); ++i) values[i] = out[i].real();
    return values;
}

}  // namespace mrsav
