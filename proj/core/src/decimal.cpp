#include "rotortree/decimal.hpp"

#include <sstream>

namespace rotortree {

Decimal to_decimal(const BigInt& v) { return Decimal(v.get_str(10)); }

Decimal to_decimal(const ExactAmount& v) {
  Decimal num = to_decimal(v.numerator());
  if (v.kpow() == 0) return num;
  return num / boost::multiprecision::pow(Decimal(v.k()), static_cast<int>(v.kpow()));
}

std::string format_decimal(const Decimal& v) {
  std::ostringstream os;
  Decimal mag = boost::multiprecision::abs(v);
  if (v == 0 || (mag >= Decimal("1e-4") && mag < Decimal("1e15"))) {
    os << std::fixed;
  } else {
    os << std::scientific;
  }
  os.precision(12);
  os << v;
  return os.str();
}

double to_double(const Decimal& v) { return v.convert_to<double>(); }

}  // namespace rotortree
