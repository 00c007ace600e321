#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ringlab/linalg.hpp"

namespace ringlab {

/// Finite-dimensional associative unital algebra given by structure
/// constants on a labeled basis. Associativity and the unit laws are
/// checked exhaustively at construction.
struct StructAlgebra {
  FieldDesc field;
  std::string name;
  std::vector<std::string> basis;
  std::vector<std::vector<SVec>> table;  // table[i][j] = coords of b_i * b_j
  SVec identity;

  std::size_t dim() const { return basis.size(); }
  int basis_index(const std::string& label) const;
  void validate() const;

  SVec mul_coords(const SVec& a, const SVec& b) const;
  SMat left_mult_matrix(const SVec& a) const;
  SMat right_mult_matrix(const SVec& a) const;
  Scalar trace_left_mult(const SVec& a) const;
  bool is_commutative() const;
  bool operator==(const StructAlgebra& o) const;
};

using AlgebraPtr = std::shared_ptr<const StructAlgebra>;

AlgebraPtr make_structure_algebra(const FieldDesc& field,
                                  std::vector<std::string> basis,
                                  std::vector<std::vector<SVec>> table,
                                  SVec identity, std::string name = "");
AlgebraPtr make_matrix_algebra(const FieldDesc& field, int n);
AlgebraPtr make_upper_triangular(const FieldDesc& field, int n);
AlgebraPtr make_field_algebra(const FieldDesc& field);
AlgebraPtr make_direct_sum(const std::vector<AlgebraPtr>& parts);

/// Commutative monomial quotient k[vars]/(monomial relations); the quotient
/// must be finite-dimensional, otherwise the unbounded variable is reported.
AlgebraPtr make_monomial_quotient(const FieldDesc& field,
                                  const std::vector<std::string>& vars,
                                  const std::vector<std::string>& relations);

// ---------------------------------------------------------------------------
// elements of A[t1..tn]

/// Extension context: the algebra together with central polynomial
/// variables t1..tn (n = 0 is A itself).
struct ExtContext {
  AlgebraPtr algebra;
  PolyRing ring;

  static ExtContext plain(AlgebraPtr a);
  static ExtContext extend(AlgebraPtr a, const std::vector<std::string>& vars);
  std::size_t nvars() const { return ring.nvars(); }
  bool operator==(const ExtContext& o) const;
};

class AlgElement {
 public:
  explicit AlgElement(ExtContext ctx);

  static AlgElement zero(const ExtContext& ctx) { return AlgElement(ctx); }
  static AlgElement one(const ExtContext& ctx);
  static AlgElement basis_element(const ExtContext& ctx, int i);
  static AlgElement variable(const ExtContext& ctx, const std::string& name);
  static AlgElement from_coords(ExtContext ctx, std::vector<Poly> coords);
  static AlgElement from_scalar_coords(const ExtContext& ctx, const SVec& coords);

  const ExtContext& ctx() const { return ctx_; }
  const std::vector<Poly>& coords() const { return coords_; }

  bool is_zero() const;
  bool is_one() const;
  int t_degree() const;  // max total degree in the extension variables; -1 for 0
  SVec constant_coords() const;  // requires t_degree <= 0

  AlgElement operator+(const AlgElement& o) const;
  AlgElement operator-(const AlgElement& o) const;
  AlgElement operator*(const AlgElement& o) const;
  AlgElement operator-() const;
  AlgElement scaled(const Scalar& c) const;
  AlgElement scaled(const Poly& f) const;
  AlgElement pow(unsigned e) const;
  bool operator==(const AlgElement& o) const;
  bool operator!=(const AlgElement& o) const { return !(*this == o); }

  /// Reinterpret in a context over the same algebra with more variables.
  AlgElement lift_to(const ExtContext& bigger) const;

  SparseVec flatten() const;  // (t-monomial, basis slot) -> coefficient
  std::string str() const;

 private:
  ExtContext ctx_;
  std::vector<Poly> coords_;
};

/// Extension context for A[t1..tn] with fresh variable names t1, t2, ...
ExtContext poly_extension(const AlgebraPtr& a, int n);

// ---------------------------------------------------------------------------
// centers, radicals, idempotents

std::vector<SVec> center_coords(const StructAlgebra& a);
std::vector<AlgElement> center_basis(const AlgebraPtr& a);

/// The center as a standalone commutative algebra, with the inclusion
/// (rows = coordinates of the center basis inside A).
struct SubalgebraView {
  AlgebraPtr algebra;          // the subalgebra with its own basis
  std::vector<SVec> inclusion; // row i = coords of subalgebra basis i in A
};
SubalgebraView center_subalgebra(const AlgebraPtr& a);

/// Basis of the Jacobson radical. Char 0 uses the trace-form kernel; char p
/// uses the characteristic-polynomial-coefficient chain. The result is
/// post-verified: two-sided ideal, nilpotent, semisimple quotient.
std::vector<SVec> jacobson_radical_coords(const StructAlgebra& a);
std::vector<AlgElement> jacobson_radical(const AlgebraPtr& a);

/// Smallest m with J^m = 0 for the span of the given ideal basis.
int ideal_nilpotency_index(const StructAlgebra& a, const std::vector<SVec>& ideal);

struct QuotientAlgebra {
  AlgebraPtr algebra;
  SMat projection;  // dim(A/I) x dim(A)
  SMat lift;        // dim(A) x dim(A/I)
};
QuotientAlgebra quotient_by_ideal(const AlgebraPtr& a,
                                  const std::vector<SVec>& ideal_basis);

/// The full finite set CI(A), computed inside Z(A) by radical splitting and
/// idempotent lifting; contains 0 and 1; |CI(A)| = 2^r. Throws when
/// r > cap_log2.
std::vector<AlgElement> central_idempotents(const AlgebraPtr& a, int cap_log2 = 10,
                                            std::uint64_t seed = 12345);

// ---------------------------------------------------------------------------
// units and membership

struct UnitCertificate {
  bool unit = false;
  Poly det;
  std::optional<AlgElement> inverse;
};

/// Exact unit test through the determinant of the left regular
/// representation over k[t..]; returns the inverse when it exists.
UnitCertificate is_unit(const AlgElement& a);

struct MembershipWitness {
  struct Term {
    Scalar coeff;
    std::vector<int> word;  // indices into the alphabet; empty word = 1
  };
  std::vector<Term> terms;
};

struct MembershipResult {
  bool found = false;
  int explored_length = 0;       // word length actually explored
  bool stabilized = false;       // span stopped growing before the bound
  std::vector<AlgElement> alphabet;
  std::vector<std::string> alphabet_names;
  std::optional<MembershipWitness> witness;

  AlgElement reevaluate(const ExtContext& ctx) const;
  std::string witness_str() const;
};

/// Membership of `target` in the subring generated by the ambient algebra
/// and `generators` (word-length bounded, exact for Yes).
MembershipResult subalgebra_membership(const AlgElement& target,
                                       const std::vector<AlgElement>& generators,
                                       int L,
                                       const std::vector<std::string>& names = {});

/// Same search, but over exactly the listed elements (plus 1).
MembershipResult span_membership(const AlgElement& target,
                                 const std::vector<AlgElement>& generators,
                                 int L,
                                 const std::vector<std::string>& names = {});

}  // namespace ringlab
