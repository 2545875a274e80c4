// SPDX-License-Identifier: Apache-2.0
//
// MUSIC direction finding at the adversarial node: sample correlation,
// noise-subspace pseudo-spectrum on a fixed azimuth grid, peak extraction,
// windowed detection, and threshold calibration against a target false-alarm
// rate on noise-only trials.

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <ostream>
#include <vector>

#include "risdf/channel.hpp"
#include "risdf/geometry.hpp"

namespace risdf {

struct CorrelationMatrix {
    Eigen::MatrixXcd r;  // Hermitian, elements x elements
    int snapshots = 0;
};

/// R = (1/K) * sum_k x_k x_k^H over the snapshot columns.
CorrelationMatrix sample_correlation(const SnapshotMatrix& s);

/// Detection statistic over the scan grid: log10 of the MUSIC spectrum
/// normalized by its own (lower) median, so 0 is the background level.
struct PseudoSpectrum {
    static constexpr double kGridStart = -90.0;
    static constexpr double kGridStep = 0.5;
    static constexpr int kGridSize = 360;  // -90.0 .. +89.5

    std::vector<double> statistic;
    int assumed_sources = 0;

    static double azimuth_at(int i) { return kGridStart + kGridStep * i; }
};

/// Steering vectors for every grid azimuth, reusable across trials.
struct SteeringGrid {
    ArrayManifold manifold;
    Eigen::MatrixXcd vectors;  // elements x kGridSize
};

SteeringGrid make_steering_grid(const ArrayManifold& m);

/// Eigendecompose R, take the `elements - assumed_sources` weakest
/// eigenvectors as the noise subspace E_n, and scan
/// P(az) = 1 / ||E_n^H a(az)||^2.
PseudoSpectrum music_spectrum(const CorrelationMatrix& r, int assumed_sources,
                              const SteeringGrid& grid);
PseudoSpectrum music_spectrum(const CorrelationMatrix& r, int assumed_sources,
                              const ArrayManifold& m);

struct Peak {
    double azimuth = 0.0;
    double magnitude = 0.0;
};

/// Strict interior local maxima above threshold, strongest first.
struct PeakSet {
    std::vector<Peak> peaks;
    double threshold = 0.0;
};

inline constexpr std::size_t kUnlimitedPeaks = std::numeric_limits<std::size_t>::max();
inline constexpr double kNoThreshold = -std::numeric_limits<double>::infinity();

PeakSet find_peaks(const PseudoSpectrum& ps, double threshold,
                   std::size_t max_peaks = kUnlimitedPeaks);

/// True iff one of the `use_peaks` strongest retained peaks lies within
/// +-tolerance of the true azimuth.
bool detect(const PeakSet& peaks, double truth_azimuth, double tolerance = 2.5,
            std::size_t use_peaks = kUnlimitedPeaks);

/// Noise-only trial settings for calibration and ROC backgrounds.
struct NoiseTrialConfig {
    int elements = 16;
    int snapshots = 548;
    int assumed_sources = 2;
    double spacing_wavelengths = 0.5;
};

/// Strongest-peak statistic of one noise-only snapshot trial.
double strongest_noise_peak(const NoiseTrialConfig& cfg, const SteeringGrid& grid,
                            std::uint64_t seed);

/// Per-trial strongest-peak statistics over `trials` seeded noise-only runs.
std::vector<double> noise_peak_statistics(const NoiseTrialConfig& cfg, int trials,
                                          std::uint64_t seed, int workers = 1);

/// Threshold whose exceedance rate on noise-only trials is target_pfa:
/// the (1 - target_pfa) quantile of the strongest-peak statistic.
/// Requires at least 1000 trials.
double calibrate_threshold(const NoiseTrialConfig& cfg, int trials, double target_pfa,
                           std::uint64_t seed, int workers = 1);

/// Fraction of fresh noise-only trials whose strongest peak exceeds the
/// threshold.
double measured_pfa(const NoiseTrialConfig& cfg, double threshold, int trials,
                    std::uint64_t seed, int workers = 1);

/// Two-column CSV: azimuth_deg, statistic.
void write_spectrum_csv(std::ostream& os, const PseudoSpectrum& ps);

}  // namespace risdf
