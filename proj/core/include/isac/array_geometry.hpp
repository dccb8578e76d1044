#pragma once

#include "isac/types.hpp"

namespace isac {

// Uniform planar array mounted face-down under the UAV.
struct ArrayConfig {
  int mx = 4;
  int my = 4;
  double wavelength = constants::kSpeedOfLight / 2.0e9;
  double spacing_x = wavelength / 2.0;
  double spacing_y = wavelength / 2.0;
  double elem_gain = 1.9952623149688795;  // 3 dBi

  int element_count() const { return mx * my; }

  // Half-wavelength array at carrier frequency `carrier_hz`.
  static ArrayConfig half_wavelength(int mx, int my, double carrier_hz, double elem_gain);

  void validate() const;
};

// Angle of departure. Elevation is measured from nadir, so 0 points straight down.
struct AoD {
  double azimuth = 0.0;    // [-pi, pi]
  double elevation = 0.0;  // [0, pi/2]
};

// azimuth = atan2(dy, dx); elevation = acos(H / distance). The overhead case
// returns (0, 0).
AoD compute_aod(const Vec3& uav_pos, const Vec3& ground_pos);

// Steering vector a_y (x) a_x, flattened y-major: entry iy*mx + ix.
CVector steering_vector(const ArrayConfig& cfg, const AoD& aod);

}  // namespace isac
