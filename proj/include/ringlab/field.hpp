#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace ringlab {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Base coefficient field: the rationals or a prime field F_p.
struct FieldDesc {
  enum class Kind { Rationals, PrimeField };

  Kind kind = Kind::Rationals;
  std::int64_t p = 0;  // prime modulus when kind == PrimeField

  static FieldDesc rationals();
  static FieldDesc prime_field(std::int64_t p);
  static FieldDesc parse(const std::string& tag);  // "QQ" or "GF(p)"

  std::int64_t characteristic() const {
    return kind == Kind::PrimeField ? p : 0;
  }
  std::string tag() const;
  bool operator==(const FieldDesc&) const = default;
};

bool is_prime(std::int64_t n);

/// Exact field element. Rationals use arbitrary precision; F_p elements are
/// kept as canonical residues in [0, p).
class Scalar {
 public:
  Scalar() = default;  // zero over QQ

  static Scalar zero(const FieldDesc& f);
  static Scalar one(const FieldDesc& f);
  static Scalar from_int(const FieldDesc& f, std::int64_t v);
  static Scalar from_big(const FieldDesc& f, const BigInt& v);
  static Scalar from_rational(const FieldDesc& f, const BigRat& q);
  static Scalar parse(const FieldDesc& f, const std::string& text);

  const FieldDesc& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  Scalar inverse() const;
  Scalar pow(std::int64_t e) const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  const BigRat& rat() const;       // rationals only
  std::int64_t residue() const;    // prime field only
  std::string str() const;

 private:
  FieldDesc field_{};
  BigRat q_{};
  std::int64_t r_ = 0;

  void check_same(const Scalar& o) const;
};

}  // namespace ringlab
