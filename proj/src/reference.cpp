#include "hgturb/reference.hpp"

namespace hgturb::reference {

const Matrix10& vacuum_matrix() {
  static const Matrix10 m = {
      0.31307, 0,       0,       0.03986, 0,       0.03986, 0,       0,       0,       0,
      0,       0.07697, 0,       0,       0,       0,       0.02940, 0,       0.00980, 0,
      0,       0,       0.07697, 0,       0,       0,       0,       0.00980, 0,       0.02940,
      0.03986, 0,       0,       0.04345, 0,       0.00508, 0,       0,       0,       0,
      0,       0,       0,       0,       0.01892, 0,       0,       0,       0,       0,
      0.03986, 0,       0,       0.00508, 0,       0.04345, 0,       0,       0,       0,
      0,       0.02940, 0,       0,       0,       0,       0.03023, 0,       0.00374, 0,
      0,       0,       0.00980, 0,       0,       0,       0,       0.01068, 0,       0.00374,
      0,       0.00980, 0,       0,       0,       0,       0.00374, 0,       0.01068, 0,
      0,       0,       0.02940, 0,       0,       0,       0,       0.00374, 0,       0.03023,
  };
  return m;
}

const Matrix10& turbulence_matrix() {
  static const Matrix10 m = {
      0.2262, 0.0157, 0.0157, 0.0379, 0.0011, 0.0379, 0.0077, 0.0026, 0.0026, 0.0077,
      0.0157, 0.0439, 0.0011, 0.0009, 0.0030, 0.0026, 0.0204, 0.0001, 0.0073, 0.0005,
      0.0157, 0.0011, 0.0439, 0.0026, 0.0030, 0.0009, 0.0005, 0.0073, 0.0001, 0.0204,
      0.0379, 0.0009, 0.0026, 0.0275, 0.0001, 0.0063, 0.0005, 0.0019, 0.0001, 0.0013,
      0.0011, 0.0030, 0.0030, 0.0001, 0.0085, 0.0001, 0.0014, 0.0002, 0.0002, 0.0014,
      0.0379, 0.0026, 0.0009, 0.0063, 0.0001, 0.0275, 0.0013, 0.0001, 0.0019, 0.0005,
      0.0077, 0.0204, 0.0005, 0.0005, 0.0014, 0.0013, 0.0191, 0.0001, 0.0034, 0.0003,
      0.0026, 0.0001, 0.0073, 0.0019, 0.0002, 0.0001, 0.0001, 0.0053, 3e-6,   0.0034,
      0.0026, 0.0073, 0.0001, 0.0001, 0.0002, 0.0019, 0.0034, 3e-6,   0.0053, 0.0001,
      0.0077, 0.0005, 0.0204, 0.0013, 0.0014, 0.0005, 0.0003, 0.0034, 0.0001, 0.0191,
  };
  return m;
}

}  // namespace hgturb::reference
