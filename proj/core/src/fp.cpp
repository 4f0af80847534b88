#include "apfree/fp.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace apfree {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t q = 2; q * q <= p; ++q) {
    if (p % q == 0) return false;
  }
  return true;
}

namespace {
// Trial division is cheap at this scale, but Fp values are constructed in
// inner loops; memoize the last modulus that passed.
thread_local std::uint32_t last_checked_prime = 0;
}  // namespace

void require_prime(std::uint32_t p) {
  if (p == last_checked_prime) return;
  if (p > kMaxModulus) {
    throw std::invalid_argument("modulus too large: " + std::to_string(p));
  }
  if (!is_prime(p)) {
    throw std::invalid_argument("modulus not prime: " + std::to_string(p));
  }
  last_checked_prime = p;
}

std::uint32_t mod_pow(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
  std::uint64_t base = a % p;
  std::uint64_t r = 1 % p;
  while (e > 0) {
    if (e & 1) r = r * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
  require_prime(p);
  a %= p;
  if (a == 0) throw std::domain_error("non-invertible: zero has no inverse mod " + std::to_string(p));
  return mod_pow(a, p - 2, p);  // Fermat
}

Fp::Fp(std::uint64_t value, std::uint32_t p) {
  require_prime(p);
  p_ = p;
  v_ = static_cast<std::uint32_t>(value % p);
}

namespace {
void check_same_modulus(std::uint32_t a, std::uint32_t b) {
  if (a != b) {
    throw std::invalid_argument("modulus mismatch: " + std::to_string(a) + " vs " +
                                std::to_string(b));
  }
}
}  // namespace

Fp Fp::operator+(Fp o) const {
  check_same_modulus(p_, o.p_);
  std::uint32_t s = v_ + o.v_;
  if (s >= p_) s -= p_;
  return Fp(s, p_);
}

Fp Fp::operator-(Fp o) const {
  check_same_modulus(p_, o.p_);
  std::uint32_t s = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_;
  return Fp(s, p_);
}

Fp Fp::operator*(Fp o) const {
  check_same_modulus(p_, o.p_);
  return Fp(static_cast<std::uint64_t>(v_) * o.v_ % p_, p_);
}

Fp Fp::neg() const { return Fp(v_ == 0 ? 0 : p_ - v_, p_); }

Fp Fp::inv() const { return Fp(mod_inverse(v_, p_), p_); }

FpVector::FpVector(std::size_t n, std::uint32_t p) : v_(n, 0), p_(p) { require_prime(p); }

FpVector::FpVector(std::initializer_list<std::uint32_t> residues, std::uint32_t p)
    : v_(residues), p_(p) {
  require_prime(p);
  for (auto& x : v_) x %= p_;
}

FpVector FpVector::from_residues(std::vector<std::uint32_t> residues, std::uint32_t p) {
  require_prime(p);
  FpVector out(residues.size(), p);
  for (std::size_t i = 0; i < residues.size(); ++i) out.v_[i] = residues[i] % p;
  return out;
}

Fp FpVector::at(std::size_t i) const { return Fp(v_.at(i), p_); }

void FpVector::set(std::size_t i, std::uint32_t residue) { v_.at(i) = residue % p_; }

bool FpVector::is_zero() const {
  for (auto x : v_) {
    if (x != 0) return false;
  }
  return true;
}

FpVector FpVector::operator+(const FpVector& o) const {
  check_same_modulus(p_, o.p_);
  if (size() != o.size()) throw std::invalid_argument("length mismatch");
  FpVector out(size(), p_);
  for (std::size_t i = 0; i < size(); ++i) {
    std::uint32_t s = v_[i] + o.v_[i];
    if (s >= p_) s -= p_;
    out.v_[i] = s;
  }
  return out;
}

FpVector FpVector::scaled(std::uint64_t c) const {
  std::uint64_t cc = c % p_;
  FpVector out(size(), p_);
  for (std::size_t i = 0; i < size(); ++i) {
    out.v_[i] = static_cast<std::uint32_t>(cc * v_[i] % p_);
  }
  return out;
}

std::uint64_t FpVector::pack() const {
  std::uint64_t id = 0;
  for (std::size_t i = size(); i-- > 0;) id = id * p_ + v_[i];
  return id;
}

FpVector FpVector::unpack(std::uint64_t id, std::size_t n, std::uint32_t p) {
  FpVector out(n, p);
  for (std::size_t i = 0; i < n; ++i) {
    out.v_[i] = static_cast<std::uint32_t>(id % p);
    id /= p;
  }
  return out;
}

Fp dot(const FpVector& a, const FpVector& b) {
  check_same_modulus(a.modulus(), b.modulus());
  if (a.size() != b.size()) throw std::invalid_argument("length mismatch");
  std::uint64_t acc = 0;
  const std::uint32_t p = a.modulus();
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc = (acc + static_cast<std::uint64_t>(a.raw()[i]) * b.raw()[i]) % p;
  }
  return Fp(acc, p);
}

Character::Character(std::uint32_t p, std::uint32_t generator) : p_(p), g_(generator) {
  require_prime(p);
  if (g_ == 0 || g_ >= p_) {
    throw std::invalid_argument("character generator must lie in [1, p)");
  }
}

std::complex<double> Character::operator()(std::uint32_t residue) const {
  const double angle = 2.0 * std::numbers::pi *
                       static_cast<double>(static_cast<std::uint64_t>(g_) * (residue % p_) % p_) /
                       static_cast<double>(p_);
  return std::polar(1.0, angle);
}

std::complex<double> Character::operator()(Fp a) const {
  if (a.modulus() != p_) throw std::invalid_argument("modulus mismatch");
  return (*this)(a.value());
}

}  // namespace apfree
