// SPDX-License-Identifier: Apache-2.0

#include "risdf/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace risdf {

namespace {
constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;
}  // namespace

double distance(const Position3D& a, const Position3D& b) {
    return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
}

void RisConfig::validate() const {
    if (columns < 1 || rows < 1)
        throw std::invalid_argument("RIS needs at least one column and one row");
    if (!(spacing_y > 0.0) || !(spacing_z > 0.0))
        throw std::invalid_argument("RIS element spacing must be positive");
}

void UlaConfig::validate() const {
    if (elements < 2)
        throw std::invalid_argument("ULA needs at least two elements");
    if (!(element_spacing > 0.0))
        throw std::invalid_argument("ULA element spacing must be positive");
}

void ScenarioGeometry::validate() const {
    ris.validate();
    ula.validate();
    if (!(carrier_frequency > 0.0))
        throw std::invalid_argument("carrier frequency must be positive");
    const Position3D center = ris_center(ris);
    if (distance(tx, ula.position) == 0.0 || distance(tx, center) == 0.0 ||
        distance(ula.position, center) == 0.0)
        throw std::invalid_argument("tx, ULA and RIS positions must be distinct");
}

std::vector<Position3D> ris_element_positions(const RisConfig& cfg) {
    cfg.validate();
    const int q = cfg.columns;
    const int p = cfg.rows;
    const double y_off = 0.5 * cfg.spacing_y * ((q + 1) % 2);
    const double z_off = 0.5 * cfg.spacing_z * ((p + 1) % 2);

    std::vector<Position3D> out;
    out.reserve(static_cast<std::size_t>(q) * p);
    for (int i = 1; i <= q; ++i) {
        const double y = cfg.centering == RisCentering::centered
                             ? (i - 0.5 * (q + 1)) * cfg.spacing_y
                             : i * cfg.spacing_y - y_off;
        for (int j = 1; j <= p; ++j) {
            const double z = j * cfg.spacing_z - z_off;
            out.push_back({0.0, y, z});
        }
    }
    return out;
}

Position3D ris_center(const RisConfig& cfg) {
    cfg.validate();
    const double mean_y =
        cfg.centering == RisCentering::centered
            ? 0.0
            : cfg.spacing_y * (0.5 * (cfg.columns + 1) - 0.5 * ((cfg.columns + 1) % 2));
    const double mean_z =
        cfg.spacing_z * (0.5 * (cfg.rows + 1) - 0.5 * ((cfg.rows + 1) % 2));
    return {0.0, mean_y, mean_z};
}

double azimuth_of(const Position3D& target, const UlaConfig& ula) {
    const double dx = target.x - ula.position.x;
    const double dy = target.y - ula.position.y;
    const double range = std::hypot(dx, dy);
    if (range == 0.0)
        throw std::invalid_argument("azimuth_of: target coincides with the ULA");

    const double az0 = ula.boresight_azimuth * kDegToRad;
    const double bx = std::cos(az0);
    const double by = std::sin(az0);

    const double along = dx * bx + dy * by;      // component along boresight
    const double right = dx * by - dy * bx;      // component to starboard
    if (along < 0.0)
        throw std::domain_error("azimuth_of: target behind the array plane");
    return std::atan2(right, along) * kRadToDeg;
}

ArrayManifold manifold_for(const UlaConfig& ula, double carrier_frequency) {
    ula.validate();
    if (!(carrier_frequency > 0.0))
        throw std::invalid_argument("carrier frequency must be positive");
    return {ula.elements, ula.element_spacing * carrier_frequency / kSpeedOfLight};
}

std::vector<std::complex<double>> steering_vector(const ArrayManifold& m,
                                                  double azimuth_deg) {
    const double phase_step =
        -2.0 * std::numbers::pi * m.spacing_wavelengths * std::sin(azimuth_deg * kDegToRad);
    std::vector<std::complex<double>> a(static_cast<std::size_t>(m.elements));
    for (int n = 0; n < m.elements; ++n)
        a[static_cast<std::size_t>(n)] = std::polar(1.0, phase_step * n);
    return a;
}

}  // namespace risdf
