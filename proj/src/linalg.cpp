#include "ringlab/linalg.hpp"

#include <algorithm>

namespace ringlab {

SMat smat_identity(const FieldDesc& f, std::size_t n) {
  SMat m(n, SVec(n, Scalar::zero(f)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = Scalar::one(f);
  return m;
}

SMat smat_zero(const FieldDesc& f, std::size_t rows, std::size_t cols) {
  return SMat(rows, SVec(cols, Scalar::zero(f)));
}

SMat smat_mul(const SMat& a, const SMat& b) {
  if (a.empty() || b.empty()) return {};
  std::size_t n = a.size(), k = b.size(), m = b[0].size();
  const FieldDesc& f = a[0][0].field();
  SMat out = smat_zero(f, n, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j) {
        out[i][j] += a[i][t] * b[t][j];
      }
    }
  }
  return out;
}

SVec smat_apply(const SMat& a, const SVec& v) {
  SVec out;
  out.reserve(a.size());
  for (const auto& row : a) {
    Scalar acc = Scalar::zero(v.empty() ? FieldDesc::rationals() : v[0].field());
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (!row[j].is_zero()) acc += row[j] * v[j];
    }
    out.push_back(acc);
  }
  return out;
}

SMat smat_transpose(const SMat& a) {
  if (a.empty()) return {};
  SMat out(a[0].size(), SVec(a.size(), Scalar::zero(a[0][0].field())));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) out[j][i] = a[i][j];
  }
  return out;
}

bool smat_is_zero(const SMat& a) {
  for (const auto& row : a) {
    for (const auto& x : row) {
      if (!x.is_zero()) return false;
    }
  }
  return true;
}

int smat_rref(SMat& m) {
  if (m.empty()) return 0;
  std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    Scalar inv = m[r][c].inverse();
    for (std::size_t j = c; j < cols; ++j) m[r][j] = m[r][j] * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Scalar factor = m[i][c];
      for (std::size_t j = c; j < cols; ++j) {
        m[i][j] -= factor * m[r][j];
      }
    }
    ++r;
  }
  return static_cast<int>(r);
}

std::vector<SVec> smat_nullspace(SMat m, const FieldDesc& f, std::size_t ncols) {
  if (m.empty()) {
    // whole space
    std::vector<SVec> basis;
    for (std::size_t i = 0; i < ncols; ++i) {
      SVec v(ncols, Scalar::zero(f));
      v[i] = Scalar::one(f);
      basis.push_back(v);
    }
    return basis;
  }
  int rank = smat_rref(m);
  std::size_t rows = m.size();
  (void)rows;
  std::vector<int> pivot_col_of_row(rank, -1);
  std::vector<bool> is_pivot(ncols, false);
  {
    int r = 0;
    for (std::size_t c = 0; c < ncols && r < rank; ++c) {
      if (!m[r][c].is_zero()) {
        pivot_col_of_row[r] = static_cast<int>(c);
        is_pivot[c] = true;
        ++r;
      }
    }
  }
  std::vector<SVec> basis;
  for (std::size_t free_c = 0; free_c < ncols; ++free_c) {
    if (is_pivot[free_c]) continue;
    SVec v(ncols, Scalar::zero(f));
    v[free_c] = Scalar::one(f);
    for (int r = 0; r < rank; ++r) {
      int pc = pivot_col_of_row[r];
      v[pc] = -m[r][free_c];
    }
    basis.push_back(v);
  }
  return canonical_span(std::move(basis));
}

std::optional<SVec> smat_solve(SMat m, SVec b, const FieldDesc& f) {
  std::size_t rows = m.size();
  std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t i = 0; i < rows; ++i) m[i].push_back(b[i]);
  int rank = smat_rref(m);
  SVec x(cols, Scalar::zero(f));
  for (int r = 0; r < rank; ++r) {
    std::size_t c = 0;
    while (c <= cols && m[r][c].is_zero()) ++c;
    if (c == cols) return std::nullopt;  // 0 = nonzero
    if (c > cols) continue;
    x[c] = m[r][cols];
  }
  return x;
}

Scalar smat_det(SMat m, const FieldDesc& f) {
  std::size_t n = m.size();
  Scalar det = Scalar::one(f);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c].is_zero()) ++piv;
    if (piv == n) return Scalar::zero(f);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    Scalar inv = m[c][c].inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c].is_zero()) continue;
      Scalar factor = m[i][c] * inv;
      for (std::size_t j = c; j < n; ++j) m[i][j] -= factor * m[c][j];
    }
  }
  return det;
}

std::optional<SMat> smat_inverse(const SMat& m, const FieldDesc& f) {
  std::size_t n = m.size();
  SMat aug = m;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      aug[i].push_back(i == j ? Scalar::one(f) : Scalar::zero(f));
    }
  }
  int rank = smat_rref(aug);
  if (rank < static_cast<int>(n)) return std::nullopt;
  SMat inv(n, SVec(n, Scalar::zero(f)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  }
  return inv;
}

int smat_rank(SMat m) { return smat_rref(m); }

std::vector<SVec> canonical_span(std::vector<SVec> rows) {
  if (rows.empty()) return rows;
  SMat m = std::move(rows);
  int rank = smat_rref(m);
  m.resize(rank);
  return m;
}

std::optional<SVec> span_coordinates(const std::vector<SVec>& rows, const SVec& v,
                                     const FieldDesc& f) {
  // solve rows^T x = v
  if (rows.empty()) {
    for (const auto& c : v) {
      if (!c.is_zero()) return std::nullopt;
    }
    return SVec{};
  }
  SMat at = smat_transpose(rows);
  return smat_solve(std::move(at), v, f);
}

// ---------------------------------------------------------------------------
// EchelonSpan

void EchelonSpan::reduce(SparseVec& v, std::map<int, Scalar>& combo) const {
  bool changed = true;
  while (changed && !v.empty()) {
    changed = false;
    const SparseKey& lead = v.begin()->first;
    auto it = rows_.find(lead);
    if (it != rows_.end()) {
      Scalar c = v.begin()->second;
      // v -= c * row
      for (const auto& [k, x] : it->second.vec) {
        auto vit = v.find(k);
        Scalar nv = (vit == v.end() ? Scalar::zero(field_) : vit->second) - c * x;
        if (nv.is_zero()) {
          if (vit != v.end()) v.erase(vit);
        } else {
          v[k] = nv;
        }
      }
      for (const auto& [tag, x] : it->second.combo) {
        Scalar nc = (combo.count(tag) ? combo[tag] : Scalar::zero(field_)) - c * x;
        if (nc.is_zero()) {
          combo.erase(tag);
        } else {
          combo[tag] = nc;
        }
      }
      changed = true;
    }
  }
}

bool EchelonSpan::insert(SparseVec v, int tag) {
  std::map<int, Scalar> combo;
  combo[tag] = Scalar::one(field_);
  reduce(v, combo);
  if (v.empty()) return false;
  Scalar lead = v.begin()->second;
  Scalar inv = lead.inverse();
  for (auto& [k, x] : v) x = x * inv;
  for (auto& [t, x] : combo) x = x * inv;
  SparseKey pivot = v.begin()->first;
  rows_.emplace(pivot, Row{std::move(v), std::move(combo)});
  return true;
}

std::optional<std::map<int, Scalar>> EchelonSpan::express(SparseVec v) const {
  std::map<int, Scalar> combo;
  reduce(v, combo);
  if (!v.empty()) return std::nullopt;
  // v = sum(combo) was subtracted; flip signs to express v over tags
  for (auto& [t, x] : combo) x = -x;
  return combo;
}

// ---------------------------------------------------------------------------
// Bareiss

namespace {

// Returns (echelon matrix, sign, effective row count). Fraction-free
// one-pass forward elimination; divisions are exact over the ring.
struct BareissResult {
  PMat m;
  int sign = 1;
  int rank = 0;
};

BareissResult bareiss_forward(PMat m) {
  BareissResult res;
  if (m.empty() || m[0].empty()) {
    res.m = std::move(m);
    return res;
  }
  std::size_t rows = m.size(), cols = m[0].size();
  const PolyRing ring = m[0][0].ring();
  Poly prev = Poly::one(ring);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      std::swap(m[piv], m[r]);
      res.sign = -res.sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Poly num = m[i][j] * m[r][c] - m[i][c] * m[r][j];
        m[i][j] = num.is_zero() ? num : poly_exact_div(num, prev);
      }
      m[i][c] = Poly::zero(ring);
    }
    prev = m[r][c];
    ++r;
  }
  res.rank = static_cast<int>(r);
  res.m = std::move(m);
  return res;
}

}  // namespace

Poly pmat_det(PMat m) {
  if (m.empty()) throw validation_error("det of empty matrix");
  std::size_t n = m.size();
  const PolyRing ring = m[0][0].ring();
  BareissResult res = bareiss_forward(std::move(m));
  if (res.rank < static_cast<int>(n)) return Poly::zero(ring);
  Poly d = res.m[n - 1][n - 1];
  return res.sign == 1 ? d : -d;
}

int pmat_rank(PMat m) {
  if (m.empty()) return 0;
  return bareiss_forward(std::move(m)).rank;
}

std::pair<std::vector<Poly>, Poly> pmat_solve_cramer(const PMat& a,
                                                     const std::vector<Poly>& b) {
  std::size_t n = a.size();
  Poly det = pmat_det(a);
  if (det.is_zero()) throw validation_error("cramer: singular matrix");
  std::vector<Poly> xs;
  xs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    PMat ai = a;
    for (std::size_t r = 0; r < n; ++r) ai[r][i] = b[r];
    xs.push_back(pmat_det(std::move(ai)));
  }
  return {xs, det};
}

}  // namespace ringlab
