#include "gwdecoh/quantity.hpp"

#include <cmath>
#include <sstream>

#include "gwdecoh/error.hpp"

namespace gwdecoh {

std::string Dim::to_string() const {
  static constexpr const char* kNames[4] = {"m", "kg", "s", "K"};
  std::string out;
  for (int i = 0; i < 4; ++i) {
    if (exp[i] == 0) continue;
    if (!out.empty()) out += ' ';
    out += kNames[i];
    if (exp[i] != 1) out += '^' + std::to_string(exp[i]);
  }
  return out.empty() ? "1" : out;
}

namespace {

void require_same(const Quantity& a, const Quantity& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string("dimension mismatch in ") + op + ": [" + a.dim().to_string() + "] vs [" +
                         b.dim().to_string() + "]");
  }
}

}  // namespace

double Quantity::in(Dim expected) const {
  if (dim_ != expected) {
    throw DimensionError("expected [" + expected.to_string() + "], got [" + dim_.to_string() + "]");
  }
  return value_;
}

Quantity& Quantity::operator+=(const Quantity& o) {
  require_same(*this, o, "+");
  value_ += o.value_;
  return *this;
}

Quantity& Quantity::operator-=(const Quantity& o) {
  require_same(*this, o, "-");
  value_ -= o.value_;
  return *this;
}

std::partial_ordering operator<=>(const Quantity& a, const Quantity& b) {
  require_same(a, b, "comparison");
  return a.value_ <=> b.value_;
}

bool operator==(const Quantity& a, const Quantity& b) {
  require_same(a, b, "==");
  return a.value_ == b.value_;
}

std::string Quantity::to_string() const {
  std::ostringstream os;
  os.precision(6);
  os << value_;
  if (!dim_.dimensionless()) os << ' ' << dim_.to_string();
  return os.str();
}

Quantity pow(const Quantity& q, int n) { return {std::pow(q.value(), n), n * q.dim()}; }

Quantity sqrt(const Quantity& q) {
  Dim half;
  for (int i = 0; i < 4; ++i) {
    if (q.dim().exp[i] % 2 != 0) {
      throw DimensionError("sqrt of quantity with odd exponent: [" + q.dim().to_string() + "]");
    }
    half.exp[i] = q.dim().exp[i] / 2;
  }
  return {std::sqrt(q.value()), half};
}

Quantity abs(const Quantity& q) { return {std::fabs(q.value()), q.dim()}; }

}  // namespace gwdecoh
