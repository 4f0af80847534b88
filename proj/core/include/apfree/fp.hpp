#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace apfree {

// Moduli are small primes by design; residues and products fit machine words.
inline constexpr std::uint32_t kMaxModulus = 1u << 16;

bool is_prime(std::uint32_t p);
/// Throws std::invalid_argument unless p is prime and <= kMaxModulus.
void require_prime(std::uint32_t p);

/// a^{-1} mod p; throws std::domain_error("non-invertible") on a == 0.
std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p);
std::uint32_t mod_pow(std::uint32_t a, std::uint64_t e, std::uint32_t p);

/// Residue in [0, p). Every value carries its modulus; arithmetic across
/// different moduli throws.
class Fp {
 public:
  Fp(std::uint64_t value, std::uint32_t p);

  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  Fp operator+(Fp o) const;
  Fp operator-(Fp o) const;
  Fp operator*(Fp o) const;
  Fp neg() const;
  Fp inv() const;

  bool operator==(Fp o) const { return v_ == o.v_ && p_ == o.p_; }
  bool operator!=(Fp o) const { return !(*this == o); }

 private:
  std::uint32_t v_;
  std::uint32_t p_;
};

/// Fixed-length coordinate vector over F_p.
class FpVector {
 public:
  FpVector(std::size_t n, std::uint32_t p);  // zero vector
  FpVector(std::initializer_list<std::uint32_t> residues, std::uint32_t p);
  static FpVector from_residues(std::vector<std::uint32_t> residues, std::uint32_t p);

  std::size_t size() const { return v_.size(); }
  std::uint32_t modulus() const { return p_; }
  std::span<const std::uint32_t> raw() const { return v_; }

  Fp at(std::size_t i) const;
  void set(std::size_t i, std::uint32_t residue);
  bool is_zero() const;

  FpVector operator+(const FpVector& o) const;
  FpVector scaled(std::uint64_t c) const;

  bool operator==(const FpVector& o) const { return p_ == o.p_ && v_ == o.v_; }
  bool operator!=(const FpVector& o) const { return !(*this == o); }

  /// Packed index with coordinate 0 as the least significant base-p digit.
  std::uint64_t pack() const;
  static FpVector unpack(std::uint64_t id, std::size_t n, std::uint32_t p);

 private:
  std::vector<std::uint32_t> v_;
  std::uint32_t p_;
};

Fp dot(const FpVector& a, const FpVector& b);

/// Additive character chi(a) = exp(2*pi*i*g*a/p), nontrivial for g in [1, p).
class Character {
 public:
  explicit Character(std::uint32_t p, std::uint32_t generator = 1);

  std::uint32_t modulus() const { return p_; }
  std::uint32_t generator() const { return g_; }

  std::complex<double> operator()(std::uint32_t residue) const;
  std::complex<double> operator()(Fp a) const;

 private:
  std::uint32_t p_;
  std::uint32_t g_;
};

}  // namespace apfree
