// SPDX-License-Identifier: Apache-2.0
//
// OFDM baseband bursts: QPSK on centered subcarriers, cyclic prefix,
// unit mean power. LTE-numerology defaults.

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace risdf {

struct OfdmConfig {
    double sample_rate = 7.68e6;         // samples/s
    double subcarrier_spacing = 15e3;    // Hz
    int fft_size = 512;
    int cyclic_prefix = 36;              // samples
    int active_subcarriers = 300;        // split evenly around DC, DC unused
    int symbols_per_burst = 1;

    int symbol_length() const { return fft_size + cyclic_prefix; }
    int burst_length() const { return symbol_length() * symbols_per_burst; }
    int payload_bits() const { return 2 * active_subcarriers * symbols_per_burst; }

    void validate() const;
};

struct BasebandSignal {
    std::vector<std::complex<double>> samples;
    double sample_rate = 0.0;
};

/// Gray-coded QPSK, unit magnitude: (0,0) -> (1+j)/sqrt(2), each bit flips
/// the sign of one rail.
std::complex<double> qpsk_map(int bit_i, int bit_q);

/// Fair bits for one burst payload, deterministic in the seed.
std::vector<std::uint8_t> random_payload(const OfdmConfig& cfg, std::uint64_t seed);

/// Bits to burst. Per symbol: map bit pairs to QPSK, fill the active
/// subcarriers in increasing frequency order (DC skipped), inverse transform,
/// prepend the cyclic prefix. The concatenated burst is normalized to unit
/// mean power.
BasebandSignal generate_ofdm(const OfdmConfig& cfg, std::span<const std::uint8_t> bits);

/// Convenience: random payload drawn from `payload_seed`, then generate.
BasebandSignal generate_ofdm(const OfdmConfig& cfg, std::uint64_t payload_seed);

/// Debug dump: little-endian float64 pairs, interleaved I/Q.
void write_signal(const std::string& path, const BasebandSignal& s);

}  // namespace risdf
