#include "rotortree/exact.hpp"

#include "rotortree/errors.hpp"

namespace rotortree {

ExactAmount::ExactAmount(unsigned k, BigInt numerator, unsigned long kpow)
    : k_(k), num_(std::move(numerator)), kpow_(kpow) {
  canonicalize();
}

void ExactAmount::canonicalize() {
  if (sgn(num_) == 0) {
    kpow_ = 0;
    return;
  }
  while (kpow_ > 0 && mpz_divisible_ui_p(num_.get_mpz_t(), k_)) {
    mpz_divexact_ui(num_.get_mpz_t(), num_.get_mpz_t(), k_);
    --kpow_;
  }
}

void ExactAmount::require_same_k(const ExactAmount& other) const {
  if (other.k_ != k_) {
    throw Error(ErrorCode::InvalidArgument, "mixing amounts over k=" + std::to_string(k_) +
                                                " and k=" + std::to_string(other.k_));
  }
}

BigInt ExactAmount::numerator_at(unsigned long target) const {
  if (target < kpow_) {
    throw Error(ErrorCode::InvalidArgument, "cannot express k^-" + std::to_string(kpow_) +
                                                " over k^" + std::to_string(target));
  }
  if (target == kpow_) return num_;
  return num_ * pow_ui(k_, target - kpow_);
}

ExactAmount ExactAmount::scaled_down(unsigned long n) const {
  ExactAmount out(k_);
  out.num_ = num_;
  out.kpow_ = kpow_ + n;
  out.canonicalize();
  return out;
}

ExactAmount& ExactAmount::operator+=(const ExactAmount& rhs) {
  require_same_k(rhs);
  if (rhs.kpow_ == kpow_) {
    num_ += rhs.num_;
  } else if (rhs.kpow_ > kpow_) {
    num_ = numerator_at(rhs.kpow_) + rhs.num_;
    kpow_ = rhs.kpow_;
  } else {
    num_ += rhs.numerator_at(kpow_);
  }
  canonicalize();
  return *this;
}

ExactAmount& ExactAmount::operator-=(const ExactAmount& rhs) { return *this += -rhs; }

ExactAmount& ExactAmount::operator*=(const BigInt& factor) {
  num_ *= factor;
  canonicalize();
  return *this;
}

ExactAmount ExactAmount::operator-() const {
  ExactAmount out = *this;
  out.num_ = -out.num_;
  return out;
}

bool operator==(const ExactAmount& a, const ExactAmount& b) {
  a.require_same_k(b);
  return a.kpow_ == b.kpow_ && a.num_ == b.num_;
}

std::strong_ordering operator<=>(const ExactAmount& a, const ExactAmount& b) {
  a.require_same_k(b);
  unsigned long common = std::max(a.kpow_, b.kpow_);
  int c = cmp(a.numerator_at(common), b.numerator_at(common));
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string ExactAmount::to_string() const {
  return num_.get_str(10) + "/" + std::to_string(k_) + "^" + std::to_string(kpow_);
}

std::string ExactAmount::to_fraction_string() const {
  if (kpow_ == 0) return num_.get_str(10);
  mpq_class q(num_, pow_ui(k_, kpow_));
  q.canonicalize();
  return q.get_str(10);
}

ExactAmount ExactAmount::parse(const std::string& text, unsigned k) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return ExactAmount(k, parse_bigint(text));
  auto caret = text.find('^', slash);
  if (caret == std::string::npos) throw Error(ErrorCode::ParseError, "expected p/k^q, got '" + text + "'");
  BigInt base = parse_bigint(text.substr(slash + 1, caret - slash - 1));
  if (base != k) {
    throw Error(ErrorCode::ParseError, "denominator base " + base.get_str() + " differs from k=" +
                                           std::to_string(k));
  }
  BigInt q = parse_bigint(text.substr(caret + 1));
  if (sgn(q) < 0 || !q.fits_ulong_p()) throw Error(ErrorCode::ParseError, "bad exponent in '" + text + "'");
  return ExactAmount(k, parse_bigint(text.substr(0, slash)), q.get_ui());
}

}  // namespace rotortree
