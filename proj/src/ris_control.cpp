// SPDX-License-Identifier: Apache-2.0

#include "risdf/ris_control.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace risdf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phase(double phi) {
    double w = std::fmod(phi, kTwoPi);
    if (w < 0.0)
        w += kTwoPi;
    if (w >= kTwoPi)  // fmod rounding can land exactly on 2*pi
        w -= kTwoPi;
    return w;
}

void check_shape(const std::vector<double>& delays, int columns, int rows) {
    if (columns < 1 || rows < 1)
        throw std::invalid_argument("phase map needs at least one column and row");
    if (delays.size() != static_cast<std::size_t>(columns) * rows)
        throw std::invalid_argument("delay list does not match the panel shape");
}

}  // namespace

void GprisPartition::validate() const {
    if (active_columns_per_end < 0)
        throw std::invalid_argument("active columns per end must be non-negative");
    if (2 * active_columns_per_end > columns)
        throw std::invalid_argument("active end sections overlap: 2u exceeds the column count");
}

RisSection GprisPartition::section_of(int column) const {
    if (column <= active_columns_per_end)
        return RisSection::left_end;
    if (column > columns - active_columns_per_end)
        return RisSection::right_end;
    return RisSection::checkered_center;
}

PhaseMap program_snr_max(double carrier_frequency, const std::vector<double>& delays,
                         double tau0, int columns, int rows) {
    check_shape(delays, columns, rows);
    PhaseMap map{columns, rows, {}};
    map.phases.resize(delays.size());
    for (std::size_t k = 0; k < delays.size(); ++k)
        map.phases[k] = wrap_phase(kTwoPi * carrier_frequency * (tau0 - delays[k]));
    return map;
}

PhaseMap program_gpris(double carrier_frequency, const std::vector<double>& delays,
                       double tau0, int columns, int rows, int active_columns_per_end) {
    check_shape(delays, columns, rows);
    GprisPartition part{columns, active_columns_per_end};
    part.validate();

    PhaseMap map{columns, rows, {}};
    map.phases.resize(delays.size());
    std::size_t k = 0;
    for (int i = 1; i <= columns; ++i) {
        const bool aligned = part.section_of(i) != RisSection::checkered_center;
        for (int j = 1; j <= rows; ++j, ++k) {
            map.phases[k] = aligned
                                ? wrap_phase(kTwoPi * carrier_frequency * (tau0 - delays[k]))
                                : std::numbers::pi * ((i + j) % 2);
        }
    }
    return map;
}

void write_phase_csv(const std::string& path, const PhaseMap& map) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (f == nullptr)
        throw std::runtime_error("cannot open " + path);
    std::fprintf(f, "column,row,phase_rad\n");
    std::size_t k = 0;
    for (int i = 1; i <= map.columns; ++i)
        for (int j = 1; j <= map.rows; ++j, ++k)
            std::fprintf(f, "%d,%d,%.17g\n", i, j, map.phases[k]);
    std::fclose(f);
}

}  // namespace risdf
