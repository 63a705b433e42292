#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "mrsav/spectral_field.hpp"

namespace mrsav {

/// Standalone spectral-field file ("MRSAVFLD"): grid header plus coefficients
/// as little-endian f64 (re, im) pairs in row-major signed-index order. Used
/// for custom forcing fields.
void write_field(const std::string& path, const SpectralField& field);
SpectralField read_field(const std::string& path, const Grid& expected_grid);

namespace binio {

void put_u32(std::ostream& os, std::uint32_t v);
void put_u64(std::ostream& os, std::uint64_t v);
void put_f64(std::ostream& os, double v);
std::uint32_t get_u32(std::istream& is, const std::string& path);
std::uint64_t get_u64(std::istream& is, const std::string& path);
double get_f64(std::istream& is, const std::string& path);

/// Coefficients in row-major signed-index order (each axis running
/// -N/2 ... N/2-1), independent of the in-memory FFT layout.
void put_coeffs(std::ostream& os, const SpectralField& field);
void get_coeffs(std::istream& is, SpectralField& field, const std::string& path);

}  // namespace binio

}  // namespace mrsav
