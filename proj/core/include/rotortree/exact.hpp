#pragma once

#include <compare>
#include <string>

#include "rotortree/bigint.hpp"

namespace rotortree {

/// An exact rational whose denominator is a power of the tree degree:
/// value = numerator / k^kpow. Chip masses of the linear machine, hitting
/// probabilities and influences all live in this ring.
///
/// Canonical form: k does not divide the numerator unless kpow is 0, and zero
/// is stored as 0/k^0. Arithmetic between amounts of different k throws.
class ExactAmount {
 public:
  explicit ExactAmount(unsigned k) : k_(k) {}
  ExactAmount(unsigned k, BigInt numerator, unsigned long kpow = 0);

  static ExactAmount zero(unsigned k) { return ExactAmount(k); }

  unsigned k() const noexcept { return k_; }
  const BigInt& numerator() const noexcept { return num_; }
  unsigned long kpow() const noexcept { return kpow_; }

  bool is_zero() const noexcept { return sgn(num_) == 0; }
  int sign() const noexcept { return sgn(num_); }
  bool is_integer() const noexcept { return kpow_ == 0; }

  /// Numerator scaled to denominator k^target (target >= kpow()).
  BigInt numerator_at(unsigned long target) const;

  /// Divides by k^n exactly (no rounding).
  ExactAmount scaled_down(unsigned long n) const;

  ExactAmount& operator+=(const ExactAmount& rhs);
  ExactAmount& operator-=(const ExactAmount& rhs);
  ExactAmount& operator*=(const BigInt& factor);

  friend ExactAmount operator+(ExactAmount a, const ExactAmount& b) { return a += b; }
  friend ExactAmount operator-(ExactAmount a, const ExactAmount& b) { return a -= b; }
  friend ExactAmount operator*(ExactAmount a, const BigInt& f) { return a *= f; }
  friend ExactAmount operator*(const BigInt& f, ExactAmount a) { return a *= f; }
  ExactAmount operator-() const;

  friend bool operator==(const ExactAmount& a, const ExactAmount& b);
  friend std::strong_ordering operator<=>(const ExactAmount& a, const ExactAmount& b);

  /// "p/k^q", e.g. "188/3^5"; integers print as "p/k^0".
  std::string to_string() const;

  /// Ordinary reduced fraction "a/b" (or "a" for integers).
  std::string to_fraction_string() const;

  /// Parses "p/k^q" or a plain integer "p".
  static ExactAmount parse(const std::string& text, unsigned k);

 private:
  void canonicalize();
  void require_same_k(const ExactAmount& other) const;

  unsigned k_;
  BigInt num_ = 0;
  unsigned long kpow_ = 0;
};

}  // namespace rotortree
