#pragma once

// Runtime-checked physical quantities over the four base dimensions this
// library needs: length, mass, time and temperature.

#include <array>
#include <compare>
#include <cstdint>
#include <string>

namespace gwdecoh {

/// Integer exponent vector over (m, kg, s, K).
struct Dim {
  std::array<int, 4> exp{0, 0, 0, 0};

  constexpr Dim() = default;
  constexpr Dim(int m, int kg, int s, int K) : exp{m, kg, s, K} {}

  constexpr bool dimensionless() const { return exp[0] == 0 && exp[1] == 0 && exp[2] == 0 && exp[3] == 0; }

  friend constexpr Dim operator+(Dim a, Dim b) {
    return {a.exp[0] + b.exp[0], a.exp[1] + b.exp[1], a.exp[2] + b.exp[2], a.exp[3] + b.exp[3]};
  }
  friend constexpr Dim operator-(Dim a, Dim b) {
    return {a.exp[0] - b.exp[0], a.exp[1] - b.exp[1], a.exp[2] - b.exp[2], a.exp[3] - b.exp[3]};
  }
  friend constexpr Dim operator*(int k, Dim a) { return {k * a.exp[0], k * a.exp[1], k * a.exp[2], k * a.exp[3]}; }
  friend constexpr bool operator==(Dim, Dim) = default;

  /// e.g. "kg^2 m^2 s^-3"; "1" when dimensionless.
  std::string to_string() const;
};

namespace dim {
inline constexpr Dim none{0, 0, 0, 0};
inline constexpr Dim length{1, 0, 0, 0};
inline constexpr Dim mass{0, 1, 0, 0};
inline constexpr Dim time{0, 0, 1, 0};
inline constexpr Dim temperature{0, 0, 0, 1};
inline constexpr Dim frequency{0, 0, -1, 0};
inline constexpr Dim velocity{1, 0, -1, 0};
inline constexpr Dim acceleration{1, 0, -2, 0};
/// Strain spectral density, Hz^-1 == s.
inline constexpr Dim strain_psd{0, 0, 1, 0};
inline constexpr Dim energy{2, 1, -2, 0};
inline constexpr Dim action{2, 1, -1, 0};
inline constexpr Dim momentum{1, 1, -1, 0};
inline constexpr Dim momentum_squared{2, 2, -2, 0};
/// Momentum diffusion coefficient, kg^2 m^2 s^-3.
inline constexpr Dim momentum_diffusion{2, 2, -3, 0};
/// Displacement spectral density, m^2 / Hz.
inline constexpr Dim displacement_psd{2, 0, 1, 0};
}  // namespace dim

class Quantity {
 public:
  constexpr Quantity() = default;
  constexpr Quantity(double value, Dim d) : value_(value), dim_(d) {}
  /// Plain reals are dimensionless quantities.
  constexpr Quantity(double value) : value_(value), dim_(dim::none) {}  // NOLINT(google-explicit-constructor)

  constexpr double value() const { return value_; }
  constexpr Dim dim() const { return dim_; }

  /// Numeric value, after checking the dimension is `expected`.
  double in(Dim expected) const;
  /// Numeric value of a dimensionless quantity.
  double scalar() const { return in(dim::none); }

  Quantity& operator+=(const Quantity& o);
  Quantity& operator-=(const Quantity& o);

  friend Quantity operator+(Quantity a, const Quantity& b) { return a += b; }
  friend Quantity operator-(Quantity a, const Quantity& b) { return a -= b; }
  friend constexpr Quantity operator-(const Quantity& a) { return {-a.value_, a.dim_}; }
  friend constexpr Quantity operator*(const Quantity& a, const Quantity& b) {
    return {a.value_ * b.value_, a.dim_ + b.dim_};
  }
  friend constexpr Quantity operator/(const Quantity& a, const Quantity& b) {
    return {a.value_ / b.value_, a.dim_ - b.dim_};
  }

  /// Ordering is only defined between quantities of equal dimension.
  friend std::partial_ordering operator<=>(const Quantity& a, const Quantity& b);
  friend bool operator==(const Quantity& a, const Quantity& b);

  std::string to_string() const;

 private:
  double value_ = 0.0;
  Dim dim_{};
};

Quantity pow(const Quantity& q, int n);
/// Square root; every exponent must be even.
Quantity sqrt(const Quantity& q);
Quantity abs(const Quantity& q);

namespace units {
inline Quantity meters(double v) { return {v, dim::length}; }
inline Quantity kilograms(double v) { return {v, dim::mass}; }
inline Quantity seconds(double v) { return {v, dim::time}; }
inline Quantity kelvin(double v) { return {v, dim::temperature}; }
inline Quantity per_second(double v) { return {v, dim::frequency}; }
inline Quantity meters_per_second(double v) { return {v, dim::velocity}; }
inline Quantity per_hertz(double v) { return {v, dim::strain_psd}; }
}  // namespace units

}  // namespace gwdecoh
