// SPDX-License-Identifier: Apache-2.0

#include "risdf/doa.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "risdf/parallel.hpp"
#include "risdf/rng.hpp"

namespace risdf {

CorrelationMatrix sample_correlation(const SnapshotMatrix& s) {
    const Eigen::Index n = s.samples.rows();
    const Eigen::Index k = s.samples.cols();
    if (k == 0)
        throw std::invalid_argument("sample_correlation: no snapshots");
    if (k < n)
        std::fprintf(stderr,
                     "sample_correlation: only %lld snapshots for %lld elements; "
                     "estimate will be rank deficient\n",
                     static_cast<long long>(k), static_cast<long long>(n));
    Eigen::MatrixXcd r = (s.samples * s.samples.adjoint()) / static_cast<double>(k);
    r = 0.5 * (r + r.adjoint()).eval();  // force exact Hermitian symmetry
    return {std::move(r), static_cast<int>(k)};
}

SteeringGrid make_steering_grid(const ArrayManifold& m) {
    SteeringGrid grid;
    grid.manifold = m;
    grid.vectors.resize(m.elements, PseudoSpectrum::kGridSize);
    for (int i = 0; i < PseudoSpectrum::kGridSize; ++i) {
        const auto a = steering_vector(m, PseudoSpectrum::azimuth_at(i));
        for (int n = 0; n < m.elements; ++n)
            grid.vectors(n, i) = a[static_cast<std::size_t>(n)];
    }
    return grid;
}

PseudoSpectrum music_spectrum(const CorrelationMatrix& r, int assumed_sources,
                              const SteeringGrid& grid) {
    const int n = static_cast<int>(r.r.rows());
    if (r.r.cols() != n)
        throw std::invalid_argument("music_spectrum: correlation matrix must be square");
    if (assumed_sources < 1 || assumed_sources >= n)
        throw std::invalid_argument("music_spectrum: assumed sources must be in [1, N)");
    if (grid.manifold.elements != n)
        throw std::invalid_argument("music_spectrum: steering grid does not match R");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(r.r);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("music_spectrum: eigendecomposition failed");

    // Signal subspace = the assumed_sources strongest eigenvectors
    // (eigenvalues come out ascending). ||E_n^H a||^2 = N - ||E_s^H a||^2
    // because the full eigenbasis is unitary and ||a||^2 = N.
    const Eigen::MatrixXcd signal =
        eig.eigenvectors().rightCols(assumed_sources);
    const Eigen::MatrixXcd projected = signal.adjoint() * grid.vectors;

    PseudoSpectrum ps;
    ps.assumed_sources = assumed_sources;
    ps.statistic.resize(PseudoSpectrum::kGridSize);
    const double floor_denominator = 1e-15 * n;
    std::vector<double> raw(PseudoSpectrum::kGridSize);
    for (int i = 0; i < PseudoSpectrum::kGridSize; ++i) {
        const double denom =
            std::max(static_cast<double>(n) - projected.col(i).squaredNorm(),
                     floor_denominator);
        raw[static_cast<std::size_t>(i)] = 1.0 / denom;
    }

    // Lower median, so one grid point sits exactly at statistic 0.
    std::vector<double> sorted(raw);
    const std::size_t mid = (sorted.size() - 1) / 2;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid),
                     sorted.end());
    const double median = sorted[mid];
    for (int i = 0; i < PseudoSpectrum::kGridSize; ++i)
        ps.statistic[static_cast<std::size_t>(i)] =
            std::log10(raw[static_cast<std::size_t>(i)] / median);
    return ps;
}

PseudoSpectrum music_spectrum(const CorrelationMatrix& r, int assumed_sources,
                              const ArrayManifold& m) {
    return music_spectrum(r, assumed_sources, make_steering_grid(m));
}

PeakSet find_peaks(const PseudoSpectrum& ps, double threshold, std::size_t max_peaks) {
    if (std::isnan(threshold))
        throw std::invalid_argument("find_peaks: threshold must not be NaN");
    PeakSet out;
    out.threshold = threshold;
    const auto& v = ps.statistic;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        if (v[i] > threshold && v[i] > v[i - 1] && v[i] > v[i + 1])
            out.peaks.push_back({PseudoSpectrum::azimuth_at(static_cast<int>(i)), v[i]});
    }
    std::sort(out.peaks.begin(), out.peaks.end(), [](const Peak& a, const Peak& b) {
        if (a.magnitude != b.magnitude)
            return a.magnitude > b.magnitude;
        return a.azimuth < b.azimuth;
    });
    if (out.peaks.size() > max_peaks)
        out.peaks.resize(max_peaks);
    return out;
}

bool detect(const PeakSet& peaks, double truth_azimuth, double tolerance,
            std::size_t use_peaks) {
    const std::size_t count = std::min(use_peaks, peaks.peaks.size());
    for (std::size_t i = 0; i < count; ++i)
        if (std::abs(peaks.peaks[i].azimuth - truth_azimuth) <= tolerance)
            return true;
    return false;
}

double strongest_noise_peak(const NoiseTrialConfig& cfg, const SteeringGrid& grid,
                            std::uint64_t seed) {
    Rng rng(seed);
    SnapshotMatrix s;
    s.sample_rate = 0.0;
    s.samples.resize(cfg.elements, cfg.snapshots);
    for (int n = 0; n < cfg.elements; ++n)
        for (int k = 0; k < cfg.snapshots; ++k)
            s.samples(n, k) = rng.complex_normal();
    const auto spectrum = music_spectrum(sample_correlation(s), cfg.assumed_sources, grid);
    const auto peaks = find_peaks(spectrum, kNoThreshold, 1);
    return peaks.peaks.empty() ? kNoThreshold : peaks.peaks.front().magnitude;
}

std::vector<double> noise_peak_statistics(const NoiseTrialConfig& cfg, int trials,
                                          std::uint64_t seed, int workers) {
    if (trials < 1)
        throw std::invalid_argument("noise_peak_statistics: need at least one trial");
    const SteeringGrid grid =
        make_steering_grid({cfg.elements, cfg.spacing_wavelengths});
    std::vector<double> stats(static_cast<std::size_t>(trials));
    parallel_for(stats.size(), workers, [&](std::size_t i) {
        stats[i] = strongest_noise_peak(cfg, grid, derive_seed(seed, i));
    });
    return stats;
}

double calibrate_threshold(const NoiseTrialConfig& cfg, int trials, double target_pfa,
                           std::uint64_t seed, int workers) {
    if (trials < 1000)
        throw std::invalid_argument("calibrate_threshold: need at least 1000 trials");
    if (target_pfa <= 0.0 || target_pfa > 1.0)
        throw std::invalid_argument("calibrate_threshold: target_pfa must be in (0, 1]");
    auto stats = noise_peak_statistics(cfg, trials, seed, workers);
    std::sort(stats.begin(), stats.end());
    const auto idx = static_cast<std::size_t>(
        std::floor((1.0 - target_pfa) * static_cast<double>(stats.size() - 1)));
    return stats[idx];
}

double measured_pfa(const NoiseTrialConfig& cfg, double threshold, int trials,
                    std::uint64_t seed, int workers) {
    const auto stats = noise_peak_statistics(cfg, trials, seed, workers);
    std::size_t fired = 0;
    for (double s : stats)
        if (s > threshold)
            ++fired;
    return static_cast<double>(fired) / static_cast<double>(stats.size());
}

void write_spectrum_csv(std::ostream& os, const PseudoSpectrum& ps) {
    os << "azimuth_deg,statistic\n";
    char line[64];
    for (int i = 0; i < PseudoSpectrum::kGridSize; ++i) {
        std::snprintf(line, sizeof(line), "%.1f,%.9g\n", PseudoSpectrum::azimuth_at(i),
                      ps.statistic[static_cast<std::size_t>(i)]);
        os << line;
    }
}

}  // namespace risdf
