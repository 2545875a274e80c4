// SPDX-License-Identifier: Apache-2.0

#include "risdf/ris_control.hpp"

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "doctest.h"
#include "risdf/channel.hpp"
#include "risdf/geometry.hpp"
#include "risdf/rng.hpp"

using namespace risdf;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ScenarioGeometry small_geometry(int columns, int rows, double fc = 26e9) {
    ScenarioGeometry g;
    g.carrier_frequency = fc;
    g.ris.columns = columns;
    g.ris.rows = rows;
    g.ris.spacing_y = g.wavelength() / 5.0;
    g.ris.spacing_z = g.wavelength() / 5.0;
    const double zc = ris_center(g.ris).z;
    g.tx = {20.0, 3.0, zc};
    g.ula.elements = 16;
    g.ula.element_spacing = g.wavelength() / 2.0;
    g.ula.position = {15.0, -10.0, zc};
    g.ula.boresight_azimuth = 90.0 + 30.0;  // roughly facing the panel
    return g;
}

// Aggregate reflected field with the programmed phases applied.
std::complex<double> aggregate_gain(const std::vector<PathDescriptor>& paths,
                                    const PhaseMap& map, double fc) {
    std::complex<double> sum{};
    for (std::size_t k = 0; k < paths.size(); ++k)
        sum += paths[k].amplitude *
               std::polar(1.0, -(kTwoPi * fc * paths[k].delay + map.phases[k]));
    return sum;
}

double amplitude_sum(const std::vector<PathDescriptor>& paths) {
    double s = 0.0;
    for (const auto& p : paths)
        s += p.amplitude;
    return s;
}

}  // namespace

TEST_CASE("snr-max phase formula") {
    // tau == tau0 gives zero phase
    const auto zero = program_snr_max(1e9, {2e-6}, 2e-6, 1, 1);
    CHECK(zero.phases[0] == doctest::Approx(0.0));

    // f_c = 1 GHz, tau0 - tau = -2.25 ns: 2*pi*(-2.25) wraps to 2*pi*0.75
    const auto wrapped = program_snr_max(1e9, {2.25e-9}, 0.0, 1, 1);
    CHECK(wrapped.phases[0] == doctest::Approx(kTwoPi * 0.75).epsilon(1e-9));
}

TEST_CASE("snr-max aligns every element to the direct path") {
    const auto geom = small_geometry(5, 4);
    ChannelConfig chan;
    const auto paths = ris_paths(geom, chan);
    const double tau0 = los_path(geom, chan).delay;

    std::vector<double> delays(paths.size());
    for (std::size_t k = 0; k < paths.size(); ++k)
        delays[k] = paths[k].delay;
    const auto map = program_snr_max(geom.carrier_frequency, delays, tau0,
                                     geom.ris.columns, geom.ris.rows);

    const double target =
        std::fmod(kTwoPi * geom.carrier_frequency * tau0, kTwoPi);
    for (std::size_t k = 0; k < paths.size(); ++k) {
        CHECK(map.phases[k] >= 0.0);
        CHECK(map.phases[k] < kTwoPi);
        double total = std::fmod(kTwoPi * geom.carrier_frequency * paths[k].delay +
                                     map.phases[k],
                                 kTwoPi);
        double diff = std::abs(total - target);
        diff = std::min(diff, kTwoPi - diff);
        CHECK(diff < 1e-6);
    }
}

TEST_CASE("coherent addition after programming") {
    const auto geom = small_geometry(6, 4);
    ChannelConfig chan;
    const auto paths = ris_paths(geom, chan);
    const double tau0 = los_path(geom, chan).delay;
    std::vector<double> delays(paths.size());
    for (std::size_t k = 0; k < paths.size(); ++k)
        delays[k] = paths[k].delay;

    const auto map = program_snr_max(geom.carrier_frequency, delays, tau0,
                                     geom.ris.columns, geom.ris.rows);
    const double coherent = std::abs(aggregate_gain(paths, map, geom.carrier_frequency));
    CHECK(coherent == doctest::Approx(amplitude_sum(paths)).epsilon(1e-9));

    // unprogrammed (phi = 0) reflections add incoherently and fall short
    PhaseMap flat{geom.ris.columns, geom.ris.rows,
                  std::vector<double>(paths.size(), 0.0)};
    const double incoherent = std::abs(aggregate_gain(paths, flat, geom.carrier_frequency));
    CHECK(coherent > incoherent);
}

TEST_CASE("gpris partition layout") {
    GprisPartition part{5000, 300};
    part.validate();
    CHECK(part.section_of(1) == RisSection::left_end);
    CHECK(part.section_of(300) == RisSection::left_end);
    CHECK(part.section_of(301) == RisSection::checkered_center);
    CHECK(part.section_of(4700) == RisSection::checkered_center);
    CHECK(part.section_of(4701) == RisSection::right_end);
    CHECK(part.section_of(5000) == RisSection::right_end);

    GprisPartition bad{5, 3};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("gpris phases: ends aligned, center checkered") {
    const auto geom = small_geometry(8, 4);
    ChannelConfig chan;
    const auto paths = ris_paths(geom, chan);
    const double tau0 = los_path(geom, chan).delay;
    std::vector<double> delays(paths.size());
    for (std::size_t k = 0; k < paths.size(); ++k)
        delays[k] = paths[k].delay;

    const int u = 2;
    const auto gpris = program_gpris(geom.carrier_frequency, delays, tau0,
                                     geom.ris.columns, geom.ris.rows, u);
    const auto aligned = program_snr_max(geom.carrier_frequency, delays, tau0,
                                         geom.ris.columns, geom.ris.rows);

    for (int i = 1; i <= geom.ris.columns; ++i) {
        for (int j = 1; j <= geom.ris.rows; ++j) {
            const double phi = gpris.at(i, j);
            CHECK(phi >= 0.0);
            CHECK(phi < kTwoPi);
            if (i <= u || i > geom.ris.columns - u) {
                CHECK(phi == doctest::Approx(aligned.at(i, j)));
            } else {
                CHECK(phi == doctest::Approx(std::numbers::pi * ((i + j) % 2)));
            }
        }
    }

    // neighboring center elements sit exactly pi apart
    for (int i = u + 1; i < geom.ris.columns - u; ++i)
        for (int j = 1; j <= geom.ris.rows; ++j)
            CHECK(std::abs(gpris.at(i, j) - gpris.at(i + 1, j)) ==
                  doctest::Approx(std::numbers::pi));

    CHECK_THROWS_AS(
        program_gpris(geom.carrier_frequency, delays, tau0, geom.ris.columns,
                      geom.ris.rows, 5),
        std::invalid_argument);
}

TEST_CASE("fully checkered surface cancels on a symmetric geometry") {
    // Even row count and nodes at the panel's vertical center: rows pair off
    // mirror-exact, so carrier phases match while checkered signs flip.
    const auto geom = small_geometry(8, 10);
    ChannelConfig chan;
    const auto paths = ris_paths(geom, chan);
    std::vector<double> delays(paths.size());
    for (std::size_t k = 0; k < paths.size(); ++k)
        delays[k] = paths[k].delay;

    const auto map = program_gpris(geom.carrier_frequency, delays, 0.0,
                                   geom.ris.columns, geom.ris.rows, 0);
    const double residual = std::abs(aggregate_gain(paths, map, geom.carrier_frequency));
    CHECK(residual <= 0.01 * amplitude_sum(paths));
}

TEST_CASE("phase csv export") {
    const auto map = program_snr_max(1e9, {1e-9, 2e-9, 3e-9, 4e-9}, 0.0, 2, 2);
    const auto path = std::filesystem::temp_directory_path() / "risdf_phases.csv";
    write_phase_csv(path.string(), map);
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "column,row,phase_rad");
    int rows = 0;
    while (std::getline(in, line))
        ++rows;
    CHECK(rows == 4);
    std::filesystem::remove(path);
}
