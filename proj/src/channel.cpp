// SPDX-License-Identifier: Apache-2.0

#include "risdf/channel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <stdexcept>

#include "risdf/fft.hpp"
#include "risdf/rng.hpp"

namespace risdf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phase(double phi) {
    double w = std::fmod(phi, kTwoPi);
    if (w < 0.0)
        w += kTwoPi;
    if (w >= kTwoPi)
        w -= kTwoPi;
    return w;
}

/// Signed DFT frequency of bin k in cycles per sample.
double bin_frequency(int k, int n) {
    return (k <= n / 2 ? k : k - n) / static_cast<double>(n);
}

}  // namespace

void ChannelConfig::validate() const {
    if (scatter_fraction < 0.0 || scatter_fraction > 1.0)
        throw std::invalid_argument("scatter fraction must lie in [0, 1]");
    if (!(delay_bin_width > 0.0))
        throw std::invalid_argument("delay bin width must be positive");
    if (!(azimuth_bin_width > 0.0))
        throw std::invalid_argument("azimuth bin width must be positive");
}

PathDescriptor los_path(const ScenarioGeometry& geom, const ChannelConfig& cfg) {
    geom.validate();
    cfg.validate();
    const double d = distance(geom.tx, geom.ula.position);
    if (d == 0.0)
        throw std::invalid_argument("los_path: transmitter coincides with the ULA");
    const double lambda = geom.wavelength();
    PathDescriptor p;
    p.amplitude = lambda * std::sqrt(cfg.gains.tx_to_adv * cfg.gains.adv_to_tx) /
                  (4.0 * std::numbers::pi * d);
    p.delay = d / kSpeedOfLight;
    p.carrier_phase = wrap_phase(kTwoPi * geom.carrier_frequency * p.delay);
    p.arrival_azimuth = azimuth_of(geom.tx, geom.ula);
    return p;
}

std::vector<PathDescriptor> ris_paths(const ScenarioGeometry& geom,
                                      const ChannelConfig& cfg) {
    geom.validate();
    cfg.validate();
    const double lambda = geom.wavelength();
    const double gain_product = cfg.gains.ris_to_adv * cfg.gains.adv_to_ris *
                                cfg.gains.tx_to_ris * cfg.gains.ris_to_tx;
    const double front = std::sqrt(cfg.scatter_fraction) * lambda * lambda /
                         (16.0 * std::numbers::pi * std::numbers::pi) *
                         std::sqrt(gain_product);

    const auto elements = ris_element_positions(geom.ris);
    std::vector<PathDescriptor> paths(elements.size());
    for (std::size_t k = 0; k < elements.size(); ++k) {
        const double d_tx = distance(elements[k], geom.tx);
        const double d_adv = distance(geom.ula.position, elements[k]);
        if (d_tx == 0.0 || d_adv == 0.0)
            throw std::invalid_argument("ris_paths: element coincides with a node");
        PathDescriptor& p = paths[k];
        p.amplitude = front / (d_adv * d_tx);
        p.delay = (d_tx + d_adv) / kSpeedOfLight;
        p.carrier_phase = wrap_phase(kTwoPi * geom.carrier_frequency * p.delay);
        p.arrival_azimuth = azimuth_of(elements[k], geom.ula);
    }
    return paths;
}

BasebandSignal fractional_delay(const BasebandSignal& x, double delay_seconds) {
    if (x.samples.empty())
        throw std::invalid_argument("fractional_delay: empty signal");
    const int n = static_cast<int>(x.samples.size());
    const double shift = delay_seconds * x.sample_rate;  // samples
    if (std::abs(shift) >= static_cast<double>(n))
        throw std::invalid_argument("fractional_delay: delay exceeds the burst");

    auto spectrum = fft(x.samples);
    for (int k = 0; k < n; ++k) {
        const double phase = -kTwoPi * bin_frequency(k, n) * shift;
        spectrum[static_cast<std::size_t>(k)] *= std::polar(1.0, phase);
    }
    BasebandSignal out;
    out.sample_rate = x.sample_rate;
    out.samples = ifft(spectrum);
    return out;
}

std::vector<Tap> bin_paths(const std::vector<PathDescriptor>& paths,
                           const PhaseMap& phases, double carrier_frequency,
                           double delay_bin_width, double azimuth_bin_deg) {
    if (paths.size() != phases.phases.size())
        throw std::invalid_argument("bin_paths: phase map does not match the path list");
    if (!(delay_bin_width > 0.0) || !(azimuth_bin_deg > 0.0))
        throw std::invalid_argument("bin_paths: bin widths must be positive");
    if (!(carrier_frequency > 0.0))
        throw std::invalid_argument("bin_paths: carrier frequency must be positive");

    struct Accum {
        std::complex<double> gain;
        double weight = 0.0;       // sum of A^2
        double delay_sum = 0.0;    // A^2-weighted
        double azimuth_sum = 0.0;  // A^2-weighted
    };
    std::map<std::pair<long long, long long>, Accum> cells;

    for (std::size_t k = 0; k < paths.size(); ++k) {
        const PathDescriptor& p = paths[k];
        if (p.amplitude == 0.0)
            continue;
        const double phi = phases.phases[k];
        const double effective_delay = p.delay + phi / (kTwoPi * carrier_frequency);
        const long long db = static_cast<long long>(std::floor(effective_delay / delay_bin_width));
        const long long ab = static_cast<long long>(std::floor(p.arrival_azimuth / azimuth_bin_deg));
        Accum& cell = cells[{db, ab}];
        const double total_phase = kTwoPi * carrier_frequency * p.delay + phi;
        cell.gain += p.amplitude * std::polar(1.0, -total_phase);
        const double w = p.amplitude * p.amplitude;
        cell.weight += w;
        cell.delay_sum += w * effective_delay;
        cell.azimuth_sum += w * p.arrival_azimuth;
    }

    std::vector<Tap> taps;
    taps.reserve(cells.size());
    for (const auto& [key, cell] : cells) {
        Tap t;
        t.delay = cell.delay_sum / cell.weight;
        t.gain = cell.gain;
        t.azimuth = cell.azimuth_sum / cell.weight;
        taps.push_back(t);
    }
    return taps;
}

Tap tap_from(const PathDescriptor& path) {
    return {path.delay, path.amplitude * std::polar(1.0, -path.carrier_phase),
            path.arrival_azimuth};
}

Eigen::MatrixXcd tap_transfer(const std::vector<Tap>& taps, const ArrayManifold& ula,
                              int length, double sample_rate) {
    if (taps.empty())
        throw std::invalid_argument("tap_transfer: empty tap set");
    if (length < 1 || !(sample_rate > 0.0))
        throw std::invalid_argument("tap_transfer: bad length or sample rate");

    Eigen::MatrixXcd transfer = Eigen::MatrixXcd::Zero(ula.elements, length);
    std::vector<std::complex<double>> ramp(static_cast<std::size_t>(length));
    for (const Tap& tap : taps) {
        const double shift = tap.delay * sample_rate;
        for (int k = 0; k < length; ++k)
            ramp[static_cast<std::size_t>(k)] =
                std::polar(1.0, -kTwoPi * bin_frequency(k, length) * shift);
        const auto steer = steering_vector(ula, tap.azimuth);
        for (int n = 0; n < ula.elements; ++n) {
            const std::complex<double> g = tap.gain * steer[static_cast<std::size_t>(n)];
            for (int k = 0; k < length; ++k)
                transfer(n, k) += g * ramp[static_cast<std::size_t>(k)];
        }
    }
    return transfer;
}

double noise_variance(double reference_power, double snr_db) {
    if (!(reference_power > 0.0))
        throw std::invalid_argument("noise_variance: reference power must be positive");
    if (std::isinf(snr_db) && snr_db > 0.0)
        return 0.0;
    return reference_power / std::pow(10.0, snr_db / 10.0);
}

SnapshotMatrix apply_transfer(const BasebandSignal& x, const Eigen::MatrixXcd& transfer,
                              double noise_var, std::uint64_t noise_seed) {
    if (x.samples.empty())
        throw std::invalid_argument("apply_transfer: empty signal");
    if (transfer.cols() != static_cast<Eigen::Index>(x.samples.size()))
        throw std::invalid_argument("apply_transfer: transfer length != burst length");

    const int n_elem = static_cast<int>(transfer.rows());
    const int length = static_cast<int>(transfer.cols());
    const auto spectrum = fft(x.samples);

    SnapshotMatrix out;
    out.sample_rate = x.sample_rate;
    out.samples.resize(n_elem, length);

    std::vector<std::complex<double>> shaped(static_cast<std::size_t>(length));
    for (int n = 0; n < n_elem; ++n) {
        for (int k = 0; k < length; ++k)
            shaped[static_cast<std::size_t>(k)] = spectrum[static_cast<std::size_t>(k)] * transfer(n, k);
        const auto row = ifft(shaped);
        for (int k = 0; k < length; ++k)
            out.samples(n, k) = row[static_cast<std::size_t>(k)];
    }

    if (noise_var > 0.0) {
        Rng rng(noise_seed);
        const double sigma = std::sqrt(noise_var);
        for (int n = 0; n < n_elem; ++n)
            for (int k = 0; k < length; ++k)
                out.samples(n, k) += sigma * rng.complex_normal();
    }
    return out;
}

SnapshotMatrix synthesize(const BasebandSignal& x, const PathDescriptor& los,
                          const std::vector<Tap>& ris_taps, const ArrayManifold& ula,
                          double snr_db, std::uint64_t seed) {
    std::vector<Tap> taps;
    taps.reserve(ris_taps.size() + 1);
    taps.push_back(tap_from(los));
    taps.insert(taps.end(), ris_taps.begin(), ris_taps.end());

    const Eigen::MatrixXcd transfer =
        tap_transfer(taps, ula, static_cast<int>(x.samples.size()), x.sample_rate);
    const double var = noise_variance(los.amplitude * los.amplitude, snr_db);
    return apply_transfer(x, transfer, var, derive_seed(seed, kNoiseStream));
}

SnapshotMatrix synthetic_arrivals(const std::vector<ArrivalSpec>& specs,
                                  const OfdmConfig& ofdm, const ArrayManifold& ula,
                                  double snr_db, std::uint64_t seed) {
    if (specs.empty())
        throw std::invalid_argument("synthetic_arrivals: empty arrival list");
    ofdm.validate();

    BasebandSignal shared;
    bool have_shared = false;

    SnapshotMatrix out;
    out.sample_rate = ofdm.sample_rate;
    out.samples = Eigen::MatrixXcd::Zero(ula.elements, ofdm.burst_length());

    for (std::size_t a = 0; a < specs.size(); ++a) {
        const ArrivalSpec& spec = specs[a];
        const BasebandSignal* source = nullptr;
        BasebandSignal own;
        if (spec.payload == PayloadMode::shared) {
            if (!have_shared) {
                shared = generate_ofdm(ofdm, derive_seed(seed, kSharedPayloadStream));
                have_shared = true;
            }
            source = &shared;
        } else {
            own = generate_ofdm(ofdm, derive_seed(seed, kArrivalPayloadStream + a));
            source = &own;
        }
        const BasebandSignal delayed =
            spec.delay != 0.0 ? fractional_delay(*source, spec.delay) : *source;
        const auto steer = steering_vector(ula, spec.azimuth_deg);
        for (int n = 0; n < ula.elements; ++n) {
            const std::complex<double> g = spec.relative_amplitude * steer[static_cast<std::size_t>(n)];
            for (int k = 0; k < out.samples.cols(); ++k)
                out.samples(n, k) += g * delayed.samples[static_cast<std::size_t>(k)];
        }
    }

    const double ref = specs.front().relative_amplitude;
    const double var = noise_variance(ref * ref, snr_db);
    if (var > 0.0) {
        Rng rng(derive_seed(seed, kNoiseStream));
        const double sigma = std::sqrt(var);
        for (int n = 0; n < out.samples.rows(); ++n)
            for (int k = 0; k < out.samples.cols(); ++k)
                out.samples(n, k) += sigma * rng.complex_normal();
    }
    return out;
}

void write_snapshot(const std::string& path, const SnapshotMatrix& s, std::uint64_t seed) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (f == nullptr)
        throw std::runtime_error("cannot open " + path);
    std::fprintf(f, "{\"elements\": %d, \"snapshots\": %d, \"sample_rate\": %.17g, \"seed\": %llu}\n",
                 static_cast<int>(s.samples.rows()), static_cast<int>(s.samples.cols()),
                 s.sample_rate, static_cast<unsigned long long>(seed));
    for (int n = 0; n < s.samples.rows(); ++n) {
        for (int k = 0; k < s.samples.cols(); ++k) {
            const float iq[2] = {static_cast<float>(s.samples(n, k).real()),
                                 static_cast<float>(s.samples(n, k).imag())};
            if (std::fwrite(iq, sizeof(float), 2, f) != 2) {
                std::fclose(f);
                throw std::runtime_error("short write to " + path);
            }
        }
    }
    std::fclose(f);
}

SnapshotMatrix read_snapshot(const std::string& path, std::uint64_t* seed) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (f == nullptr)
        throw std::runtime_error("cannot open " + path);
    int elements = 0;
    int snapshots = 0;
    double rate = 0.0;
    unsigned long long stored_seed = 0;
    char header[256];
    if (std::fgets(header, sizeof(header), f) == nullptr ||
        std::sscanf(header,
                    "{\"elements\": %d, \"snapshots\": %d, \"sample_rate\": %lg, \"seed\": %llu}",
                    &elements, &snapshots, &rate, &stored_seed) != 4) {
        std::fclose(f);
        throw std::runtime_error("bad snapshot header in " + path);
    }
    SnapshotMatrix s;
    s.sample_rate = rate;
    s.samples.resize(elements, snapshots);
    for (int n = 0; n < elements; ++n) {
        for (int k = 0; k < snapshots; ++k) {
            float iq[2];
            if (std::fread(iq, sizeof(float), 2, f) != 2) {
                std::fclose(f);
                throw std::runtime_error("truncated snapshot file " + path);
            }
            s.samples(n, k) = {static_cast<double>(iq[0]), static_cast<double>(iq[1])};
        }
    }
    std::fclose(f);
    if (seed != nullptr)
        *seed = stored_seed;
    return s;
}

}  // namespace risdf
