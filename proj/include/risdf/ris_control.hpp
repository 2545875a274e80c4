// SPDX-License-Identifier: Apache-2.0
//
// RIS element phase programming: SNR-maximizing alignment toward the
// adversarial array, and the dual-reflection split that phases the panel
// center in a checkered (self-cancelling) pattern.

#pragma once

#include <string>
#include <vector>

namespace risdf {

/// Per-element phases in [0, 2*pi), stored like ris_element_positions:
/// element (i, j), 1-based, lives at index (i-1)*rows + (j-1).
struct PhaseMap {
    int columns = 0;
    int rows = 0;
    std::vector<double> phases;

    double at(int column, int row) const {  // 1-based indices
        return phases[static_cast<std::size_t>(column - 1) * rows + (row - 1)];
    }
};

enum class RisSection { left_end, checkered_center, right_end };

/// Dual-reflection partition: `active_columns_per_end` columns at each end
/// reflect coherently, everything between is checkered.
struct GprisPartition {
    int columns = 0;
    int active_columns_per_end = 0;  // u, 2u <= columns

    void validate() const;
    RisSection section_of(int column) const;  // 1-based
};

/// Phase that aligns every element's reflection with the direct path:
/// phi = 2*pi*f_c*(tau0 - tau_ij) mod 2*pi. `delays` holds tau_ij in
/// element order for a columns-by-rows panel.
PhaseMap program_snr_max(double carrier_frequency, const std::vector<double>& delays,
                         double tau0, int columns, int rows);

/// End columns aligned as in program_snr_max; center columns get the
/// checkered pattern phi = pi*((i + j) mod 2) so adjacent reflections pair
/// off destructively.
PhaseMap program_gpris(double carrier_frequency, const std::vector<double>& delays,
                       double tau0, int columns, int rows, int active_columns_per_end);

/// CSV export, one row per element: column, row, phase_rad.
void write_phase_csv(const std::string& path, const PhaseMap& map);

}  // namespace risdf
