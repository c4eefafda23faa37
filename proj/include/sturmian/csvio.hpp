#pragma once

#include <ostream>
#include <string>

#include "sturmian/spectrum.hpp"

namespace sturmian {

// Bit-stable real formatting: '.' decimal point, 17 significant digits.
std::string format_real(double v);

// Grid CSV: header row "alpha,<omega...>", then one row per alpha with 0/1 cells.
void write_grid_csv(std::ostream& os, const BulkGrid& grid);

// Compact raster: magic "SBSG", two little-endian u32 dims (rows = alpha,
// cols = omega), then row-major bit-packed rows (LSB first, zero padded to
// whole bytes).
void write_grid_raster(std::ostream& os, const BulkGrid& grid);

// columns alpha, band_index, omega_lo, omega_hi
void write_bands_csv(std::ostream& os, const BandList& bands);

// columns r, alpha_r, zeta_r, N, band_count
void write_selfsim_csv(std::ostream& os, const SelfSimReport& report);

} // namespace sturmian
