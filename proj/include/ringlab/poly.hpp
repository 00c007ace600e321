#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ringlab/field.hpp"

namespace ringlab {

struct VarSpec {
  std::string name;
  bool laurent = false;
  bool operator==(const VarSpec&) const = default;
};

/// Coefficient ring k[x1,...,xn], with per-variable Laurent flags.
struct PolyRing {
  FieldDesc field;
  std::vector<VarSpec> vars;

  static PolyRing constants(const FieldDesc& f) { return PolyRing{f, {}}; }
  static PolyRing univariate(const FieldDesc& f, const std::string& var,
                             bool laurent = false) {
    return PolyRing{f, {VarSpec{var, laurent}}};
  }

  int index_of(const std::string& name) const;
  std::size_t nvars() const { return vars.size(); }
  bool operator==(const PolyRing&) const = default;
  std::string describe() const;  // e.g. "QQ[x,y]", "QQ[x^-1..]" marks Laurent
};

/// Union of two rings over the same field; Laurent flags must agree on
/// shared names. Variable order: a's variables, then the new ones from b.
PolyRing ring_union(const PolyRing& a, const PolyRing& b);

using Mono = std::vector<std::int32_t>;

struct GradedLexLess {
  bool operator()(const Mono& a, const Mono& b) const;
};

/// Exact multivariate polynomial with canonical graded-lex term order.
/// Zero is the empty term map. Laurent variables may carry negative
/// exponents.
class Poly {
 public:
  Poly() : ring_(PolyRing::constants(FieldDesc::rationals())) {}
  explicit Poly(PolyRing ring) : ring_(std::move(ring)) {}

  static Poly zero(const PolyRing& r) { return Poly(r); }
  static Poly constant(const PolyRing& r, const Scalar& c);
  static Poly from_int(const PolyRing& r, std::int64_t v);
  static Poly one(const PolyRing& r) { return from_int(r, 1); }
  static Poly variable(const PolyRing& r, int idx);
  static Poly variable(const PolyRing& r, const std::string& name);
  static Poly monomial(const PolyRing& r, const Mono& m, const Scalar& c);
  static Poly parse(const PolyRing& r, const std::string& text);

  const PolyRing& ring() const { return ring_; }
  const std::map<Mono, Scalar, GradedLexLess>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Scalar constant_value() const;  // zero scalar for the zero polynomial
  std::optional<int> total_degree() const;
  std::optional<int> degree_in(int var) const;
  std::optional<int> min_degree_in(int var) const;
  Scalar leading_coeff() const;  // graded-lex leading term; zero -> 0
  Scalar coeff(const Mono& m) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly scaled(const Scalar& c) const;
  Poly pow(unsigned e) const;
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly derivative(int var) const;

  /// Substitution homomorphism for a subset of variables; remaining
  /// variables stay symbolic in a shrunken ring. Laurent variables must
  /// receive nonzero values.
  Poly eval_partial(const std::map<std::string, Scalar>& assign) const;

  /// Reinterpret in a ring whose variable set contains this one's (matched
  /// by name; Laurent flags must agree).
  Poly lift_to(const PolyRing& bigger) const;

  void add_term(const Mono& m, const Scalar& c);

  std::string str() const;

 private:
  PolyRing ring_;
  std::map<Mono, Scalar, GradedLexLess> terms_;

  void check_same_ring(const Poly& o) const;
};

// Univariate helpers. All throw validation_error on misuse.
bool is_univariate_poly(const Poly& f);       // one non-Laurent variable
Poly poly_monic(const Poly& f);
std::pair<Poly, Poly> poly_divmod(const Poly& f, const Poly& g);
Poly poly_gcd(const Poly& f, const Poly& g);  // monic gcd
Scalar poly_eval_univariate(const Poly& f, const Scalar& a);

/// Exact division in any number of variables; throws if g does not divide f.
Poly poly_exact_div(const Poly& f, const Poly& g);

}  // namespace ringlab
