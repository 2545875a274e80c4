// SPDX-License-Identifier: Apache-2.0

#include "risdf/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "risdf/fft.hpp"
#include "risdf/rng.hpp"

namespace risdf {

void OfdmConfig::validate() const {
    if (fft_size < 2)
        throw std::invalid_argument("OFDM fft_size must be at least 2");
    if (active_subcarriers < 2 || active_subcarriers % 2 != 0)
        throw std::invalid_argument("active_subcarriers must be even and >= 2");
    if (active_subcarriers >= fft_size)
        throw std::invalid_argument("active_subcarriers must leave room for DC and guards");
    if (cyclic_prefix < 0 || cyclic_prefix > fft_size)
        throw std::invalid_argument("cyclic_prefix must be in [0, fft_size]");
    if (symbols_per_burst < 1)
        throw std::invalid_argument("symbols_per_burst must be at least 1");
    if (!(sample_rate > 0.0) || !(subcarrier_spacing > 0.0))
        throw std::invalid_argument("sample_rate and subcarrier_spacing must be positive");
    if (std::abs(sample_rate - fft_size * subcarrier_spacing) > 1e-6 * sample_rate)
        throw std::invalid_argument("sample_rate must equal fft_size * subcarrier_spacing");
}

std::complex<double> qpsk_map(int bit_i, int bit_q) {
    const double s = 1.0 / std::sqrt(2.0);
    return {bit_i ? -s : s, bit_q ? -s : s};
}

std::vector<std::uint8_t> random_payload(const OfdmConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    Rng rng(seed);
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(cfg.payload_bits()));
    for (auto& b : bits)
        b = static_cast<std::uint8_t>(rng.next_bit());
    return bits;
}

BasebandSignal generate_ofdm(const OfdmConfig& cfg, std::span<const std::uint8_t> bits) {
    cfg.validate();
    if (static_cast<int>(bits.size()) != cfg.payload_bits())
        throw std::invalid_argument("payload must be exactly 2 bits per active subcarrier per symbol");

    const int nfft = cfg.fft_size;
    const int half = cfg.active_subcarriers / 2;

    BasebandSignal out;
    out.sample_rate = cfg.sample_rate;
    out.samples.reserve(static_cast<std::size_t>(cfg.burst_length()));

    std::vector<std::complex<double>> bins(static_cast<std::size_t>(nfft));
    std::size_t bit_pos = 0;
    for (int sym = 0; sym < cfg.symbols_per_burst; ++sym) {
        std::fill(bins.begin(), bins.end(), std::complex<double>{});
        for (int m = 0; m < cfg.active_subcarriers; ++m) {
            // Subcarrier order -half..-1, +1..+half (DC skipped).
            const int offset = m - half;
            const int sc = offset < 0 ? offset : offset + 1;
            const int bin = sc < 0 ? sc + nfft : sc;
            const int b0 = bits[bit_pos++];
            const int b1 = bits[bit_pos++];
            bins[static_cast<std::size_t>(bin)] = qpsk_map(b0, b1);
        }
        const auto body = ifft(bins);
        for (int k = nfft - cfg.cyclic_prefix; k < nfft; ++k)
            out.samples.push_back(body[static_cast<std::size_t>(k)]);
        out.samples.insert(out.samples.end(), body.begin(), body.end());
    }

    double power = 0.0;
    for (const auto& v : out.samples)
        power += std::norm(v);
    power /= static_cast<double>(out.samples.size());
    const double scale = 1.0 / std::sqrt(power);
    for (auto& v : out.samples)
        v *= scale;
    return out;
}

BasebandSignal generate_ofdm(const OfdmConfig& cfg, std::uint64_t payload_seed) {
    const auto bits = random_payload(cfg, payload_seed);
    return generate_ofdm(cfg, std::span<const std::uint8_t>(bits));
}

void write_signal(const std::string& path, const BasebandSignal& s) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (f == nullptr)
        throw std::runtime_error("cannot open " + path);
    for (const auto& v : s.samples) {
        const double iq[2] = {v.real(), v.imag()};
        if (std::fwrite(iq, sizeof(double), 2, f) != 2) {
            std::fclose(f);
            throw std::runtime_error("short write to " + path);
        }
    }
    std::fclose(f);
}

}  // namespace risdf
