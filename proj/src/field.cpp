#include "ringlab/field.hpp"

#include <sstream>

namespace ringlab {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldDesc FieldDesc::rationals() { return FieldDesc{Kind::Rationals, 0}; }

FieldDesc FieldDesc::prime_field(std::int64_t p) {
  if (!is_prime(p)) {
    throw validation_error("GF(" + std::to_string(p) + "): modulus is not prime");
  }
  return FieldDesc{Kind::PrimeField, p};
}

FieldDesc FieldDesc::parse(const std::string& tag) {
  if (tag == "QQ") return rationals();
  if (tag.size() > 4 && tag.substr(0, 3) == "GF(" && tag.back() == ')') {
    std::int64_t p = 0;
    try {
      p = std::stoll(tag.substr(3, tag.size() - 4));
    } catch (const std::exception&) {
      throw parse_error("bad field tag: " + tag);
    }
    return prime_field(p);
  }
  throw parse_error("bad field tag: " + tag + " (expected QQ or GF(p))");
}

std::string FieldDesc::tag() const {
  if (kind == Kind::Rationals) return "QQ";
  return "GF(" + std::to_string(p) + ")";
}

namespace {

std::int64_t mod_reduce(std::int64_t v, std::int64_t p) {
  std::int64_t r = v % p;
  return r < 0 ? r + p : r;
}

std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t p) {
  return static_cast<std::int64_t>(
      static_cast<__int128>(a) * static_cast<__int128>(b) % p);
}

std::int64_t mod_inv(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw validation_error("division by zero in GF(p)");
  return mod_reduce(t, p);
}

}  // namespace

Scalar Scalar::zero(const FieldDesc& f) {
  Scalar s;
  s.field_ = f;
  return s;
}

Scalar Scalar::one(const FieldDesc& f) { return from_int(f, 1); }

Scalar Scalar::from_int(const FieldDesc& f, std::int64_t v) {
  Scalar s;
  s.field_ = f;
  if (f.kind == FieldDesc::Kind::Rationals) {
    s.q_ = BigRat(v);
  } else {
    s.r_ = mod_reduce(v, f.p);
  }
  return s;
}

Scalar Scalar::from_big(const FieldDesc& f, const BigInt& v) {
  Scalar s;
  s.field_ = f;
  if (f.kind == FieldDesc::Kind::Rationals) {
    s.q_ = BigRat(v);
  } else {
    BigInt r = v % f.p;
    if (r < 0) r += f.p;
    s.r_ = static_cast<std::int64_t>(r);
  }
  return s;
}

Scalar Scalar::from_rational(const FieldDesc& f, const BigRat& q) {
  Scalar s;
  s.field_ = f;
  if (f.kind == FieldDesc::Kind::Rationals) {
    s.q_ = q;
  } else {
    Scalar num = from_big(f, numerator(q));
    Scalar den = from_big(f, denominator(q));
    return num / den;
  }
  return s;
}

Scalar Scalar::parse(const FieldDesc& f, const std::string& text) {
  std::string t;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  }
  if (t.empty()) throw parse_error("empty scalar literal");
  auto slash = t.find('/');
  try {
    if (slash == std::string::npos) {
      return from_big(f, BigInt(t));
    }
    BigInt num(t.substr(0, slash));
    BigInt den(t.substr(slash + 1));
    if (den == 0) throw parse_error("zero denominator in scalar literal");
    return from_rational(f, BigRat(num, den));
  } catch (const std::runtime_error&) {
    throw;
  } catch (const std::exception&) {
    throw parse_error("bad scalar literal: " + text);
  }
}

bool Scalar::is_zero() const {
  return field_.kind == FieldDesc::Kind::Rationals ? q_.is_zero() : r_ == 0;
}

bool Scalar::is_one() const {
  return field_.kind == FieldDesc::Kind::Rationals ? q_ == 1 : r_ == 1;
}

void Scalar::check_same(const Scalar& o) const {
  if (!(field_ == o.field_)) {
    throw validation_error("scalar field mismatch: " + field_.tag() + " vs " +
                           o.field_.tag());
  }
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same(o);
  Scalar s;
  s.field_ = field_;
  if (field_.kind == FieldDesc::Kind::Rationals) {
    s.q_ = q_ + o.q_;
  } else {
    s.r_ = mod_reduce(r_ + o.r_, field_.p);
  }
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const {
  check_same(o);
  Scalar s;
  s.field_ = field_;
  if (field_.kind == FieldDesc::Kind::Rationals) {
    s.q_ = q_ - o.q_;
  } else {
    s.r_ = mod_reduce(r_ - o.r_, field_.p);
  }
  return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same(o);
  Scalar s;
  s.field_ = field_;
  if (field_.kind == FieldDesc::Kind::Rationals) {
    s.q_ = q_ * o.q_;
  } else {
    s.r_ = mod_mul(r_, o.r_, field_.p);
  }
  return s;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::operator-() const {
  Scalar s;
  s.field_ = field_;
  if (field_.kind == FieldDesc::Kind::Rationals) {
    s.q_ = -q_;
  } else {
    s.r_ = mod_reduce(-r_, field_.p);
  }
  return s;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw validation_error("inverse of zero");
  Scalar s;
  s.field_ = field_;
  if (field_.kind == FieldDesc::Kind::Rationals) {
    s.q_ = BigRat(1) / q_;
  } else {
    s.r_ = mod_inv(r_, field_.p);
  }
  return s;
}

Scalar Scalar::pow(std::int64_t e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar acc = one(field_);
  Scalar base = *this;
  std::int64_t k = e;
  while (k > 0) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

bool Scalar::operator==(const Scalar& o) const {
  if (!(field_ == o.field_)) return false;
  return field_.kind == FieldDesc::Kind::Rationals ? q_ == o.q_ : r_ == o.r_;
}

const BigRat& Scalar::rat() const {
  if (field_.kind != FieldDesc::Kind::Rationals) {
    throw validation_error("rat() on a prime-field scalar");
  }
  return q_;
}

std::int64_t Scalar::residue() const {
  if (field_.kind != FieldDesc::Kind::PrimeField) {
    throw validation_error("residue() on a rational scalar");
  }
  return r_;
}

std::string Scalar::str() const {
  if (field_.kind == FieldDesc::Kind::PrimeField) return std::to_string(r_);
  std::ostringstream os;
  os << q_;
  return os.str();
}

}  // namespace ringlab
