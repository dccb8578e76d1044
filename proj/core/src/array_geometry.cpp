#include "isac/array_geometry.hpp"

#include <algorithm>
#include <cmath>

namespace isac {

ArrayConfig ArrayConfig::half_wavelength(int mx, int my, double carrier_hz, double elem_gain) {
  ArrayConfig cfg;
  cfg.mx = mx;
  cfg.my = my;
  cfg.wavelength = constants::kSpeedOfLight / carrier_hz;
  cfg.spacing_x = cfg.wavelength / 2.0;
  cfg.spacing_y = cfg.wavelength / 2.0;
  cfg.elem_gain = elem_gain;
  cfg.validate();
  return cfg;
}

void ArrayConfig::validate() const {
  if (mx < 1 || my < 1) throw ContractError("array dimensions must be >= 1");
  if (!(wavelength > 0.0) || !(spacing_x > 0.0) || !(spacing_y > 0.0) || !(elem_gain > 0.0)) {
    throw ContractError("array wavelength, spacing and element gain must be positive");
  }
}

AoD compute_aod(const Vec3& uav_pos, const Vec3& ground_pos) {
  const double dx = ground_pos.x() - uav_pos.x();
  const double dy = ground_pos.y() - uav_pos.y();
  const double altitude = uav_pos.z() - ground_pos.z();
  const double distance = (uav_pos - ground_pos).norm();
  AoD aod;
  aod.azimuth = std::atan2(dy, dx);
  if (distance > 0.0) {
    aod.elevation = std::acos(std::clamp(altitude / distance, -1.0, 1.0));
  }
  return aod;
}

CVector steering_vector(const ArrayConfig& cfg, const AoD& aod) {
  const double k = 2.0 * constants::kPi / cfg.wavelength;
  const double sin_el = std::sin(aod.elevation);
  const double phase_x = -k * cfg.spacing_x * sin_el * std::cos(aod.azimuth);
  const double phase_y = -k * cfg.spacing_y * sin_el * std::sin(aod.azimuth);

  CVector a(cfg.element_count());
  for (int iy = 0; iy < cfg.my; ++iy) {
    for (int ix = 0; ix < cfg.mx; ++ix) {
      a(iy * cfg.mx + ix) = std::polar(1.0, phase_x * ix + phase_y * iy);
    }
  }
  return a;
}

}  // namespace isac
