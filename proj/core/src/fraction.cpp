#include "apfree/fraction.hpp"

#include <numeric>
#include <stdexcept>

namespace apfree {

namespace {
using u128 = unsigned __int128;

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) throw std::overflow_error("Fraction overflow");
  return a * b;
}
}  // namespace

Fraction::Fraction(std::uint64_t num, std::uint64_t den) : num_(num), den_(den) {
  if (den_ == 0) throw std::invalid_argument("Fraction: zero denominator");
  const std::uint64_t g = std::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

std::string Fraction::str() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Fraction Fraction::operator*(const Fraction& o) const {
  // cross-reduce before multiplying to delay overflow
  const std::uint64_t g1 = std::gcd(num_, o.den_);
  const std::uint64_t g2 = std::gcd(o.num_, den_);
  return Fraction(checked_mul(num_ / g1, o.num_ / g2), checked_mul(den_ / g2, o.den_ / g1));
}

Fraction Fraction::pow(unsigned e) const {
  Fraction r(1, 1);
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

Fraction Fraction::complement() const {
  if (num_ > den_) throw std::domain_error("Fraction::complement: value exceeds 1");
  return Fraction(den_ - num_, den_);
}

bool Fraction::operator<(const Fraction& o) const {
  return static_cast<u128>(num_) * o.den_ < static_cast<u128>(o.num_) * den_;
}

bool Fraction::operator<=(const Fraction& o) const {
  return static_cast<u128>(num_) * o.den_ <= static_cast<u128>(o.num_) * den_;
}

std::ostream& operator<<(std::ostream& os, const Fraction& f) { return os << f.str(); }

}  // namespace apfree
