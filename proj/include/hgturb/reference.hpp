#pragma once

#include <array>

namespace hgturb::reference {

/// Published 10x10 matrices over default_mode_ordering(), row-major,
/// row = signal, column = idler. Geometry: z = 5 km, wavelength 0.8 um,
/// W0 = 10 cm.
using Matrix10 = std::array<double, 100>;

/// Vacuum matrix, 5 decimals.
const Matrix10& vacuum_matrix();

/// Weak-turbulence matrix at sigma_R^2 = 0.02, 4 decimals except the two
/// 3e-6 entries.
const Matrix10& turbulence_matrix();

inline constexpr double kTurbulenceRytov = 0.02;

}  // namespace hgturb::reference
