#pragma once

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <string>

#include "rotortree/bigint.hpp"
#include "rotortree/exact.hpp"

namespace rotortree {

/// 50 significant decimal digits. Used for analytic comparators and for
/// display only; no identity check is ever decided in this type.
using Decimal = boost::multiprecision::cpp_dec_float_50;

Decimal to_decimal(const BigInt& v);
Decimal to_decimal(const ExactAmount& v);

/// Twelve digits after the point for moderate magnitudes, scientific
/// notation with twelve significant digits otherwise.
std::string format_decimal(const Decimal& v);

/// Plain double, for CSV columns where a compact value is convenient.
double to_double(const Decimal& v);

}  // namespace rotortree
