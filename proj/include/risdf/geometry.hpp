// SPDX-License-Identifier: Apache-2.0
//
// risdf: simulator for RIS-generated multipath against array direction finding.
// Scene geometry: node positions, the RIS element lattice, and the angle and
// distance helpers every other module builds on.

#pragma once

#include <complex>
#include <vector>

namespace risdf {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

struct Position3D {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// Euclidean distance between two points, meters.
double distance(const Position3D& a, const Position3D& b);

enum class RisCentering {
    verbatim,  // lattice exactly as configured: column 1 starts near y = 0
    centered,  // columns shifted so the surface is centered on y = 0
};

/// Rectangular RIS panel in the x = 0 plane. Columns run along +y, rows
/// along +z; the panel sits above z = 0 ("raised" mounting).
struct RisConfig {
    int columns = 0;           // Q
    int rows = 0;              // P
    double spacing_y = 0.0;    // d_y, meters
    double spacing_z = 0.0;    // d_z, meters
    RisCentering centering = RisCentering::centered;

    void validate() const;
};

struct UlaConfig {
    int elements = 16;
    double element_spacing = 0.0;       // meters
    Position3D position;                // array reference point
    double boresight_azimuth = 90.0;    // world azimuth, degrees CCW from +x

    void validate() const;
};

struct ScenarioGeometry {
    Position3D tx;
    UlaConfig ula;
    RisConfig ris;
    double carrier_frequency = 0.0;  // Hz

    double wavelength() const { return kSpeedOfLight / carrier_frequency; }
    void validate() const;
};

/// Element center positions, ordered column-major in (i, j): all rows of
/// column 1, then column 2, ... Element (i, j) is at index (i-1)*rows + (j-1).
///
/// verbatim: x = 0, y = i*d_y - 0.5*d_y*((Q+1) mod 2), z = j*d_z - 0.5*d_z*((P+1) mod 2).
/// centered: same z, but y = (i - (Q+1)/2)*d_y so the panel straddles y = 0.
std::vector<Position3D> ris_element_positions(const RisConfig& cfg);

/// Mean element position of the panel (closed form, no enumeration).
Position3D ris_center(const RisConfig& cfg);

/// Signed azimuth of `target` as seen from the ULA, degrees in [-90, +90].
/// Measured from boresight in the horizontal (XY) plane, positive clockwise
/// when viewed from +z (i.e. to the right when facing along boresight).
/// Throws if the target lies behind the array plane.
double azimuth_of(const Position3D& target, const UlaConfig& ula);

/// ULA manifold in carrier-wavelength units; all narrowband array math
/// (steering vectors in both channel synthesis and MUSIC) keys off this.
struct ArrayManifold {
    int elements = 0;
    double spacing_wavelengths = 0.0;  // d / lambda_c
};

ArrayManifold manifold_for(const UlaConfig& ula, double carrier_frequency);

/// Plane-wave response: element n responds exp(-j*2*pi*(d/lambda)*n*sin(az)).
std::vector<std::complex<double>> steering_vector(const ArrayManifold& m,
                                                  double azimuth_deg);

}  // namespace risdf
