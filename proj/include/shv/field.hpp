#pragma once
// Exact field scalars: rationals (default) or a prime field F_p.
// No floating point anywhere.

#include <boost/multiprecision/cpp_int.hpp>
#include <cassert>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

namespace shv {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

struct FieldConfig {
  // p == 0 means exact rationals; otherwise arithmetic mod the prime p.
  std::uint32_t p = 0;

  bool operator==(const FieldConfig&) const = default;
};

inline bool isPrime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline FieldConfig rationals() { return FieldConfig{0}; }

inline FieldConfig primeField(std::uint32_t p) {
  if (!isPrime(p)) throw std::invalid_argument("primeField: p must be prime");
  return FieldConfig{p};
}

class Scalar {
 public:
  Scalar() : v_(0), p_(0) {}
  Scalar(FieldConfig f, long n) : v_(n), p_(f.p) { normalize(); }
  Scalar(FieldConfig f, const BigRat& v) : v_(v), p_(f.p) { normalize(); }

  FieldConfig field() const { return FieldConfig{p_}; }
  const BigRat& value() const { return v_; }
  bool isZero() const { return v_ == 0; }

  Scalar operator-() const { return Scalar(field(), -v_); }
  Scalar operator+(const Scalar& o) const { chk(o); return Scalar(field(), v_ + o.v_); }
  Scalar operator-(const Scalar& o) const { chk(o); return Scalar(field(), v_ - o.v_); }
  Scalar operator*(const Scalar& o) const { chk(o); return Scalar(field(), v_ * o.v_); }
  Scalar operator/(const Scalar& o) const { chk(o); return *this * o.inverse(); }
  Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
  Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
  Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }

  Scalar inverse() const {
    if (isZero()) throw std::domain_error("Scalar: division by zero");
    if (p_ == 0) return Scalar(field(), BigRat(1) / v_);
    // Fermat: v^(p-2) mod p
    BigInt base = numerator(v_), acc = 1;
    std::uint32_t e = p_ - 2;
    while (e) {
      if (e & 1) acc = acc * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return Scalar(field(), BigRat(acc));
  }

  bool operator==(const Scalar& o) const { return p_ == o.p_ && v_ == o.v_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  std::string str() const {
    std::ostringstream os;
    os << v_;
    return os.str();
  }

 private:
  void normalize() {
    if (p_ == 0) return;
    // Rational input over F_p: reduce numerator and denominator mod p.
    BigInt num = numerator(v_) % p_, den = denominator(v_) % p_;
    if (num < 0) num += p_;
    if (den == 0) throw std::domain_error("Scalar: denominator divisible by p");
    v_ = BigRat(num);
    if (den != 1) {
      Scalar d(FieldConfig{p_}, BigRat(den));
      v_ = (*this * d.inverse()).v_;
    }
  }
  void chk(const Scalar& o) const {
    if (p_ != o.p_) throw std::logic_error("Scalar: field mismatch");
  }

  BigRat v_;
  std::uint32_t p_;
};

}  // namespace shv
