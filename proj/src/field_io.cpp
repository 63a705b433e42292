#include "mrsav/field_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "mrsav/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "binary file formats assume a little-endian host");

namespace mrsav {
namespace binio {

void put_u32(std::ostream& os, std::uint32_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}
void put_u64(std::ostream& os, std::uint64_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}
void put_f64(std::ostream& os, double v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

namespace {
void read_exact(std::istream& is, char* out, std::size_t n, const std::string& path) {
    is.read(out, static_cast<std::streamsize>(n));
    if (is.gcount() != static_cast<std::streamsize>(n))
        throw IoError("truncated file: " + path);
}
}  // namespace

std::uint32_t get_u32(std::istream& is, const std::string& path) {
    std::uint32_t v;
    read_exact(is, reinterpret_cast<char*>(&v), sizeof v, path);
    return v;
}
std::uint64_t get_u64(std::istream& is, const std::string& path) {
    std::uint64_t v;
    read_exact(is, reinterpret_cast<char*>(&v), sizeof v, path);
    return v;
}
double get_f64(std::istream& is, const std::string& path) {
    double v;
    read_exact(is, reinterpret_cast<char*>(&v), sizeof v, path);
    return v;
}

void put_coeffs(std::ostream& os, const SpectralField& field) {
    const Grid& g = field.grid();
    const int n0 = g.modes(0), n1 = g.modes(1), n2 = g.dim() == 3 ? g.modes(2) : 1;
    for (int si = -n0 / 2; si < n0 / 2; ++si) {
        const int i = g.storage_index(0, si);
        for (int sj = -n1 / 2; sj < n1 / 2; ++sj) {
            const int j = g.storage_index(1, sj);
            if (g.dim() == 2) {
                const auto& c = field.at(i, j);
                put_f64(os, c.real());
                put_f64(os, c.imag());
            } else {
                for (int sk = -n2 / 2; sk < n2 / 2; ++sk) {
                    const auto& c = field.at(i, j, g.storage_index(2, sk));
                    put_f64(os, c.real());
                    put_f64(os, c.imag());
                }
            }
        }
    }
}

void get_coeffs(std::istream& is, SpectralField& field, const std::string& path) {
    const Grid& g = field.grid();
    const int n0 = g.modes(0), n1 = g.modes(1), n2 = g.dim() == 3 ? g.modes(2) : 1;
    for (int si = -n0 / 2; si < n0 / 2; ++si) {
        const int i = g.storage_index(0, si);
        for (int sj = -n1 / 2; sj < n1 / 2; ++sj) {
            const int j = g.storage_index(1, sj);
            if (g.dim() == 2) {
                const double re = get_f64(is, path);
                const double im = get_f64(is, path);
                field.at(i, j) = {re, im};
            } else {
                for (int sk = -n2 / 2; sk < n2 / 2; ++sk) {
                    const double re = get_f64(is, path);
                    const double im = get_f64(is, path);
                    field.at(i, j, g.storage_index(2, sk)) = {re, im};
                }
            }
        }
    }
}

}  // namespace binio

namespace {
constexpr char kFieldMagic[8] = {'M', 'R', 'S', 'A', 'V', 'F', 'L', 'D'};
constexpr std::uint32_t kFieldVersion = 1;
}  // namespace

void write_field(const std::string& path, const SpectralField& field) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open for writing: " + path);
    os.write(kFieldMagic, sizeof kFieldMagic);
    binio::put_u32(os, kFieldVersion);
    const Grid& g = field.grid();
    binio::put_u32(os, static_cast<std::uint32_t>(g.dim()));
    for (int a = 0; a < g.dim(); ++a) binio::put_u32(os, static_cast<std::uint32_t>(g.modes(a)));
    for (int a = 0; a < g.dim(); ++a) binio::put_f64(os, g.length(a));
    binio::put_coeffs(os, field);
    if (!os) throw IoError("write failed: " + path);
}

SpectralField read_field(const std::string& path, const Grid& expected_grid) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open: " + path);
    char magic[8];
    is.read(magic, sizeof magic);
    if (is.gcount() != sizeof magic || std::memcmp(magic, kFieldMagic, sizeof magic) != 0)
        throw IoError("bad field-file magic: " + path);
    if (binio::get_u32(is, path) != kFieldVersion)
        throw IoError("unsupported field-file version: " + path);
    const auto dim = binio::get_u32(is, path);
    if (dim != static_cast<std::uint32_t>(expected_grid.dim()))
        throw IoError("field-file dimension mismatch: " + path);
    for (int a = 0; a < expected_grid.dim(); ++a)
        if (binio::get_u32(is, path) != static_cast<std::uint32_t>(expected_grid.modes(a)))
            throw IoError("field-file mode count mismatch: " + path);
    for (int a = 0; a < expected_grid.dim(); ++a)
        if (binio::get_f64(is, path) != expected_grid.length(a))
            throw IoError("field-file domain length mismatch: " + path);
    SpectralField field(expected_grid, FieldRole::forcing);
    binio::get_coeffs(is, field, path);
    return field;
}

}  // namespace mrsav
