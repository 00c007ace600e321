#pragma once

#include <map>
#include <optional>
#include <vector>

#include "ringlab/poly.hpp"

namespace ringlab {

using SVec = std::vector<Scalar>;
using SMat = std::vector<SVec>;

SMat smat_identity(const FieldDesc& f, std::size_t n);
SMat smat_zero(const FieldDesc& f, std::size_t rows, std::size_t cols);
SMat smat_mul(const SMat& a, const SMat& b);
SVec smat_apply(const SMat& a, const SVec& v);
SMat smat_transpose(const SMat& a);
bool smat_is_zero(const SMat& a);

/// In-place reduced row echelon form; returns rank.
int smat_rref(SMat& m);

/// Canonical (RREF) basis of the right nullspace {x : m x = 0}.
std::vector<SVec> smat_nullspace(SMat m, const FieldDesc& f, std::size_t ncols);

/// Solve m x = b; nullopt when inconsistent.
std::optional<SVec> smat_solve(SMat m, SVec b, const FieldDesc& f);

Scalar smat_det(SMat m, const FieldDesc& f);
std::optional<SMat> smat_inverse(const SMat& m, const FieldDesc& f);
int smat_rank(SMat m);

/// Row-reduce a list of vectors to a canonical (RREF) spanning set.
std::vector<SVec> canonical_span(std::vector<SVec> rows);

/// Is v in the row span of `rows`? Optionally returns coordinates.
std::optional<SVec> span_coordinates(const std::vector<SVec>& rows, const SVec& v,
                                     const FieldDesc& f);

// ---------------------------------------------------------------------------
// Incremental echelon span with expression tracking, over sparse vectors
// whose coordinates are indexed by (polynomial monomial, slot). Used for
// subalgebra membership searches inside A[t1..tn].

struct SparseKey {
  Mono mono;
  int slot = 0;
  bool operator==(const SparseKey&) const = default;
};

struct SparseKeyLess {
  bool operator()(const SparseKey& a, const SparseKey& b) const {
    GradedLexLess lt;
    if (lt(a.mono, b.mono)) return true;
    if (lt(b.mono, a.mono)) return false;
    return a.slot < b.slot;
  }
};

using SparseVec = std::map<SparseKey, Scalar, SparseKeyLess>;

/// Maintains an echelonized spanning set; each inserted vector is tracked as
/// a linear combination of the original inserts, so membership queries can
/// report certificates in terms of the inserted generators.
class EchelonSpan {
 public:
  explicit EchelonSpan(const FieldDesc& f) : field_(f) {}

  /// Insert vector; returns true when it enlarged the span. `tag` is the
  /// caller's identifier for this insert (used in combinations).
  bool insert(SparseVec v, int tag);

  std::size_t dim() const { return rows_.size(); }

  /// Express v over the inserted tags; nullopt when v is outside the span.
  std::optional<std::map<int, Scalar>> express(SparseVec v) const;

 private:
  struct Row {
    SparseVec vec;                 // normalized: leading coefficient 1
    std::map<int, Scalar> combo;   // tag -> coefficient
  };
  FieldDesc field_;
  std::map<SparseKey, Row, SparseKeyLess> rows_;  // keyed by pivot

  void reduce(SparseVec& v, std::map<int, Scalar>& combo) const;
};

// ---------------------------------------------------------------------------
// Fraction-free (Bareiss) routines for matrices over a polynomial ring.

using PMat = std::vector<std::vector<Poly>>;

Poly pmat_det(PMat m);
int pmat_rank(PMat m);

/// Cramer solve for A x = b over the fraction field; entries of the result
/// are returned as (numerator, common denominator = det A). Throws when
/// det A = 0.
std::pair<std::vector<Poly>, Poly> pmat_solve_cramer(const PMat& a,
                                                     const std::vector<Poly>& b);

}  // namespace ringlab
