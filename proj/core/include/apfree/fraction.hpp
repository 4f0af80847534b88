#pragma once

#include <cstdint>
#include <ostream>
#include <string>

namespace apfree {

/// Exact nonnegative rational on 64-bit words, always stored reduced.
/// Desk-scale arithmetic: operations that would overflow throw instead of
/// losing exactness.
class Fraction {
 public:
  Fraction() : num_(0), den_(1) {}
  Fraction(std::uint64_t num, std::uint64_t den);

  static Fraction from_count(std::uint64_t count, std::uint64_t total) {
    return Fraction(count, total);
  }

  std::uint64_t num() const { return num_; }
  std::uint64_t den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  Fraction operator*(const Fraction& o) const;
  Fraction pow(unsigned e) const;
  /// 1 - this; requires this <= 1.
  Fraction complement() const;

  bool operator==(const Fraction& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Fraction& o) const { return !(*this == o); }
  bool operator<(const Fraction& o) const;
  bool operator<=(const Fraction& o) const;
  bool operator>(const Fraction& o) const { return o < *this; }
  bool operator>=(const Fraction& o) const { return o <= *this; }

 private:
  std::uint64_t num_;
  std::uint64_t den_;
};

std::ostream& operator<<(std::ostream& os, const Fraction& f);

}  // namespace apfree
