#include "gwdecoh/constants.hpp"

#include <cmath>

#include "gwdecoh/error.hpp"

namespace gwdecoh::constants {

Quantity G() { return {kG, Dim{3, -1, -2, 0}}; }
Quantity c() { return {kC, dim::velocity}; }
Quantity hbar() { return {kHbar, dim::action}; }
Quantity k_B() { return {kBoltzmann, dim::energy - dim::temperature}; }

Quantity planck_mass() { return sqrt(hbar() * c() / G()); }

Quantity planck_length() { return sqrt(hbar() * G() / pow(c(), 3)); }

Quantity planck_time() { return sqrt(hbar() * G() / pow(c(), 5)); }

Quantity planck_energy() { return sqrt(hbar() * pow(c(), 5) / G()); }

Quantity compton_length(const Quantity& m) {
  const double kg = m.in(dim::mass);
  if (!(kg > 0.0) || !std::isfinite(kg)) throw DomainError("compton_length: mass must be positive and finite");
  return hbar() / (m * c());
}

Quantity strain_coupling() { return Quantity(16.0) * G() / (Quantity(5.0) * pow(c(), 5)); }

}  // namespace gwdecoh::constants
