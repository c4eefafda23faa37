#include "sturmian/csvio.hpp"

#include <cstdint>
#include <cstdio>

namespace sturmian {

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_grid_csv(std::ostream& os, const BulkGrid& grid) {
    os << "alpha";
    for (double w : grid.omegas) os << ',' << format_real(w);
    os << '\n';
    for (std::size_t i = 0; i < grid.alphas.size(); ++i) {
        os << grid.alphas[i].str();
        const std::uint8_t* row = grid.admitted.data() + i * grid.omegas.size();
        for (std::size_t j = 0; j < grid.omegas.size(); ++j) os << ',' << (row[j] ? '1' : '0');
        os << '\n';
    }
}

namespace {

void put_u32_le(std::ostream& os, std::uint32_t v) {
    const char bytes[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                           static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
    os.write(bytes, 4);
}

} // namespace

void write_grid_raster(std::ostream& os, const BulkGrid& grid) {
    os.write("SBSG", 4);
    put_u32_le(os, static_cast<std::uint32_t>(grid.alphas.size()));
    put_u32_le(os, static_cast<std::uint32_t>(grid.omegas.size()));
    const std::size_t row_bytes = (grid.omegas.size() + 7) / 8;
    std::string row(row_bytes, '\0');
    for (std::size_t i = 0; i < grid.alphas.size(); ++i) {
        std::fill(row.begin(), row.end(), '\0');
        const std::uint8_t* src = grid.admitted.data() + i * grid.omegas.size();
        for (std::size_t j = 0; j < grid.omegas.size(); ++j)
            if (src[j]) row[j / 8] = static_cast<char>(row[j / 8] | (1 << (j % 8)));
        os.write(row.data(), static_cast<std::streamsize>(row_bytes));
    }
}

void write_bands_csv(std::ostream& os, const BandList& bands) {
    os << "alpha,band_index,omega_lo,omega_hi\n";
    for (std::size_t k = 0; k < bands.intervals.size(); ++k)
        os << bands.alpha.str() << ',' << k << ',' << format_real(bands.intervals[k].lo) << ','
           << format_real(bands.intervals[k].hi) << '\n';
}

void write_selfsim_csv(std::ostream& os, const SelfSimReport& report) {
    os << "r,alpha_r,zeta_r,N,band_count\n";
    for (const SelfSimRow& row : report.rows)
        os << row.r << ',' << row.alpha.str() << ',' << format_real(row.zeta) << ','
           << row.n_elements << ',' << row.bands.band_count() << '\n';
}

} // namespace sturmian
