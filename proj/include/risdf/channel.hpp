// SPDX-License-Identifier: Apache-2.0
//
// Propagation and receive-side synthesis. Free-space amplitudes and delays
// per path, band-limited fractional delays, aggregation of per-element RIS
// paths into delay/azimuth taps, and the ULA snapshot matrix (signal paths +
// steering + complex white noise).

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "risdf/geometry.hpp"
#include "risdf/ris_control.hpp"
#include "risdf/waveform.hpp"

namespace risdf {

struct AntennaGains {
    // Linear power gains; 1.0 is 0 dBi.
    double tx_to_adv = 1.0;
    double adv_to_tx = 1.0;
    double tx_to_ris = 1.0;
    double ris_to_tx = 1.0;
    double ris_to_adv = 1.0;
    double adv_to_ris = 1.0;
};

struct ChannelConfig {
    double scatter_fraction = 1.0;     // mu, share of incident energy re-radiated
    double delay_bin_width = 0.5e-9;   // seconds
    double azimuth_bin_width = 0.1;    // degrees
    AntennaGains gains;

    void validate() const;
};

/// One propagation path as seen by the ULA reference element.
struct PathDescriptor {
    double amplitude = 0.0;        // A, dimensionless field ratio
    double delay = 0.0;            // seconds
    double carrier_phase = 0.0;    // 2*pi*f_c*delay mod 2*pi
    double arrival_azimuth = 0.0;  // degrees, ULA convention
};

struct SnapshotMatrix {
    Eigen::MatrixXcd samples;  // elements x snapshots
    double sample_rate = 0.0;
};

/// A resolved arrival: everything the synthesizer needs per term of the
/// received-signal sum.
struct Tap {
    double delay = 0.0;               // baseband delay, seconds
    std::complex<double> gain;        // amplitude and carrier phase combined
    double azimuth = 0.0;             // degrees
};

/// Direct transmitter-to-ULA path: A = lambda*sqrt(G*G)/(4*pi*d), tau = d/c.
PathDescriptor los_path(const ScenarioGeometry& geom, const ChannelConfig& cfg);

/// One path per RIS element: A = sqrt(mu)*lambda^2/(16*pi^2) * sqrt(G...)/(d1*d2),
/// tau = (d1+d2)/c, azimuth evaluated per element. Ordered like
/// ris_element_positions.
std::vector<PathDescriptor> ris_paths(const ScenarioGeometry& geom,
                                      const ChannelConfig& cfg);

/// Band-limited circular delay via a spectral phase ramp; exact for integer
/// sample shifts and energy preserving for any tau.
BasebandSignal fractional_delay(const BasebandSignal& x, double delay_seconds);

/// Collapses per-element paths into taps. Paths are grouped into
/// (delay x azimuth) cells; within a cell the complex gains
/// A*exp(-j*(2*pi*f_c*tau + phi)) add, and the tap takes the power-weighted
/// mean effective delay tau + phi/(2*pi*f_c) and azimuth. Grouping these
/// cells keeps the angular spread while shrinking millions of element paths
/// to a few thousand terms.
std::vector<Tap> bin_paths(const std::vector<PathDescriptor>& paths,
                           const PhaseMap& phases, double carrier_frequency,
                           double delay_bin_width, double azimuth_bin_deg);

/// A path (no programmable phase) as a single tap.
Tap tap_from(const PathDescriptor& path);

/// Frequency response of a tap set across the burst: elements x length
/// matrix H(n, k) = sum_taps gain * steer_n(azimuth) * exp(-j*2*pi*f_k*delay).
Eigen::MatrixXcd tap_transfer(const std::vector<Tap>& taps, const ArrayManifold& ula,
                              int length, double sample_rate);

/// Noise power per element for an SNR defined against a reference signal
/// power (the LOS per-element power in the full model).
double noise_variance(double reference_power, double snr_db);

/// y_n = ifft(fft(x) .* H_n) + noise, noise ~ CN(0, noise_var) i.i.d.
SnapshotMatrix apply_transfer(const BasebandSignal& x, const Eigen::MatrixXcd& transfer,
                              double noise_var, std::uint64_t noise_seed);

/// Full receive model: LOS plus RIS taps, noise power set `snr_db` below the
/// LOS per-element power.
SnapshotMatrix synthesize(const BasebandSignal& x, const PathDescriptor& los,
                          const std::vector<Tap>& ris_taps, const ArrayManifold& ula,
                          double snr_db, std::uint64_t seed);

enum class PayloadMode { shared, independent };

/// Arrival built directly at the ULA (no propagation model): used by the
/// controlled direction-finding studies. Amplitudes are relative to the
/// first arrival, which also sets the SNR reference. Arrivals are kept
/// carrier-phase coherent; only the baseband delay is applied.
struct ArrivalSpec {
    double azimuth_deg = 0.0;
    double delay = 0.0;               // seconds
    double relative_amplitude = 1.0;
    PayloadMode payload = PayloadMode::shared;
};

SnapshotMatrix synthetic_arrivals(const std::vector<ArrivalSpec>& specs,
                                  const OfdmConfig& ofdm, const ArrayManifold& ula,
                                  double snr_db, std::uint64_t seed);

// Seed streams shared by synthesize/synthetic_arrivals so the two agree on
// single-arrival scenes.
inline constexpr std::uint64_t kSharedPayloadStream = 0;
inline constexpr std::uint64_t kArrivalPayloadStream = 1;  // + arrival index
inline constexpr std::uint64_t kNoiseStream = 0x8000000000000000ull;

/// Binary snapshot dump: one JSON header line (elements, snapshots,
/// sample_rate, seed), then row-major interleaved little-endian float32 I/Q.
void write_snapshot(const std::string& path, const SnapshotMatrix& s, std::uint64_t seed);
SnapshotMatrix read_snapshot(const std::string& path, std::uint64_t* seed = nullptr);

}  // namespace risdf
