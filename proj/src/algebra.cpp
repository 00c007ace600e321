#include "ringlab/algebra.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "ringlab/factor.hpp"

namespace ringlab {

// ---------------------------------------------------------------------------
// StructAlgebra

int StructAlgebra::basis_index(const std::string& label) const {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i] == label) return static_cast<int>(i);
  }
  return -1;
}

SVec StructAlgebra::mul_coords(const SVec& a, const SVec& b) const {
  SVec out(dim(), Scalar::zero(field));
  for (std::size_t i = 0; i < dim(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (b[j].is_zero()) continue;
      Scalar cij = a[i] * b[j];
      const SVec& prod = table[i][j];
      for (std::size_t k = 0; k < dim(); ++k) {
        if (!prod[k].is_zero()) out[k] += cij * prod[k];
      }
    }
  }
  return out;
}

SMat StructAlgebra::left_mult_matrix(const SVec& a) const {
  SMat m = smat_zero(field, dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    SVec ej(dim(), Scalar::zero(field));
    ej[j] = Scalar::one(field);
    SVec col = mul_coords(a, ej);
    for (std::size_t k = 0; k < dim(); ++k) m[k][j] = col[k];
  }
  return m;
}

SMat StructAlgebra::right_mult_matrix(const SVec& a) const {
  SMat m = smat_zero(field, dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    SVec ej(dim(), Scalar::zero(field));
    ej[j] = Scalar::one(field);
    SVec col = mul_coords(ej, a);
    for (std::size_t k = 0; k < dim(); ++k) m[k][j] = col[k];
  }
  return m;
}

Scalar StructAlgebra::trace_left_mult(const SVec& a) const {
  Scalar tr = Scalar::zero(field);
  for (std::size_t j = 0; j < dim(); ++j) {
    SVec ej(dim(), Scalar::zero(field));
    ej[j] = Scalar::one(field);
    tr += mul_coords(a, ej)[j];
  }
  return tr;
}

bool StructAlgebra::is_commutative() const {
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = i + 1; j < dim(); ++j) {
      if (table[i][j] != table[j][i]) return false;
    }
  }
  return true;
}

bool StructAlgebra::operator==(const StructAlgebra& o) const {
  return field == o.field && basis == o.basis && table == o.table &&
         identity == o.identity;
}

void StructAlgebra::validate() const {
  std::size_t m = dim();
  if (table.size() != m) throw validation_error("structure table has wrong shape");
  for (const auto& row : table) {
    if (row.size() != m) throw validation_error("structure table has wrong shape");
    for (const auto& c : row) {
      if (c.size() != m) throw validation_error("structure table has wrong shape");
    }
  }
  if (identity.size() != m) throw validation_error("identity has wrong length");
  std::set<std::string> labels(basis.begin(), basis.end());
  if (labels.size() != m) throw validation_error("duplicate basis label");

  // unit laws on every basis element
  for (std::size_t i = 0; i < m; ++i) {
    SVec ei(m, Scalar::zero(field));
    ei[i] = Scalar::one(field);
    if (mul_coords(identity, ei) != ei || mul_coords(ei, identity) != ei) {
      throw validation_error("identity fails on basis element " + basis[i]);
    }
  }
  // associativity on all basis triples
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < m; ++k) {
        SVec ek(m, Scalar::zero(field));
        ek[k] = Scalar::one(field);
        SVec ei(m, Scalar::zero(field));
        ei[i] = Scalar::one(field);
        SVec left = mul_coords(table[i][j], ek);
        SVec right = mul_coords(ei, table[j][k]);
        if (left != right) {
          throw validation_error("associativity fails on triple (" + basis[i] +
                                 "," + basis[j] + "," + basis[k] + ")");
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// constructors

AlgebraPtr make_structure_algebra(const FieldDesc& field,
                                  std::vector<std::string> basis,
                                  std::vector<std::vector<SVec>> table,
                                  SVec identity, std::string name) {
  auto alg = std::make_shared<StructAlgebra>();
  alg->field = field;
  alg->name = name.empty() ? "algebra" : std::move(name);
  alg->basis = std::move(basis);
  alg->table = std::move(table);
  alg->identity = std::move(identity);
  alg->validate();
  return alg;
}

AlgebraPtr make_matrix_algebra(const FieldDesc& field, int n) {
  if (n < 1) throw validation_error("matrix algebra needs n >= 1");
  std::size_t m = static_cast<std::size_t>(n) * n;
  std::vector<std::string> basis;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      basis.push_back("e" + std::to_string(i) + std::to_string(j));
    }
  }
  auto at = [&](int i, int j) { return static_cast<std::size_t>(i) * n + j; };
  std::vector<std::vector<SVec>> table(
      m, std::vector<SVec>(m, SVec(m, Scalar::zero(field))));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          if (j == k) table[at(i, j)][at(k, l)][at(i, l)] = Scalar::one(field);
        }
      }
    }
  }
  SVec identity(m, Scalar::zero(field));
  for (int i = 0; i < n; ++i) identity[at(i, i)] = Scalar::one(field);
  return make_structure_algebra(field, std::move(basis), std::move(table),
                                std::move(identity),
                                "M_" + std::to_string(n) + "(" + field.tag() + ")");
}

AlgebraPtr make_upper_triangular(const FieldDesc& field, int n) {
  if (n < 1) throw validation_error("triangular algebra needs n >= 1");
  std::vector<std::pair<int, int>> cells;
  std::vector<std::string> basis;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      cells.emplace_back(i, j);
      basis.push_back("e" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  }
  std::size_t m = cells.size();
  auto find_cell = [&](int i, int j) -> int {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (cells[k] == std::make_pair(i, j)) return static_cast<int>(k);
    }
    return -1;
  };
  std::vector<std::vector<SVec>> table(
      m, std::vector<SVec>(m, SVec(m, Scalar::zero(field))));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (cells[a].second == cells[b].first) {
        int k = find_cell(cells[a].first, cells[b].second);
        table[a][b][k] = Scalar::one(field);
      }
    }
  }
  SVec identity(m, Scalar::zero(field));
  for (int i = 0; i < n; ++i) identity[find_cell(i, i)] = Scalar::one(field);
  return make_structure_algebra(field, std::move(basis), std::move(table),
                                std::move(identity),
                                "T_" + std::to_string(n) + "(" + field.tag() + ")");
}

AlgebraPtr make_field_algebra(const FieldDesc& field) {
  std::vector<std::vector<SVec>> table(1, std::vector<SVec>(1, SVec{Scalar::one(field)}));
  return make_structure_algebra(field, {"1"}, std::move(table),
                                SVec{Scalar::one(field)}, field.tag());
}

AlgebraPtr make_direct_sum(const std::vector<AlgebraPtr>& parts) {
  if (parts.empty()) throw validation_error("direct sum of nothing");
  const FieldDesc& field = parts[0]->field;
  std::vector<std::string> basis;
  std::size_t total = 0;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    if (!(parts[p]->field == field)) {
      throw validation_error("direct sum: field mismatch");
    }
    for (const auto& label : parts[p]->basis) {
      basis.push_back("b" + std::to_string(p + 1) + "." + label);
    }
    total += parts[p]->dim();
  }
  std::vector<std::vector<SVec>> table(
      total, std::vector<SVec>(total, SVec(total, Scalar::zero(field))));
  SVec identity(total, Scalar::zero(field));
  std::size_t offset = 0;
  std::string name;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    const auto& part = *parts[p];
    for (std::size_t i = 0; i < part.dim(); ++i) {
      for (std::size_t j = 0; j < part.dim(); ++j) {
        for (std::size_t k = 0; k < part.dim(); ++k) {
          table[offset + i][offset + j][offset + k] = part.table[i][j][k];
        }
      }
      identity[offset + i] = part.identity[i];
    }
    offset += part.dim();
    if (p) name += " + ";
    name += part.name;
  }
  return make_structure_algebra(field, std::move(basis), std::move(table),
                                std::move(identity), name);
}

AlgebraPtr make_monomial_quotient(const FieldDesc& field,
                                  const std::vector<std::string>& vars,
                                  const std::vector<std::string>& relations) {
  if (vars.empty()) throw validation_error("monomial quotient needs variables");
  PolyRing ring{field, {}};
  for (const auto& v : vars) ring.vars.push_back({v, false});
  std::vector<Mono> gens;
  for (const auto& r : relations) {
    Poly p = Poly::parse(ring, r);
    if (p.terms().size() != 1 || !p.leading_coeff().is_one()) {
      throw validation_error("relation is not a monomial: " + r);
    }
    gens.push_back(p.terms().begin()->first);
  }
  auto divisible = [](const Mono& m, const Mono& g) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] < g[i]) return false;
    }
    return true;
  };
  auto in_ideal = [&](const Mono& m) {
    for (const auto& g : gens) {
      if (divisible(m, g)) return true;
    }
    return false;
  };
  // finiteness: every variable needs a pure power inside the ideal
  for (std::size_t v = 0; v < vars.size(); ++v) {
    bool bounded = false;
    for (const auto& g : gens) {
      bool pure = true;
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (i != v && g[i] > 0) pure = false;
      }
      if (pure && g[v] > 0) bounded = true;
    }
    if (!bounded) {
      throw validation_error("monomial quotient is infinite-dimensional: variable " +
                             vars[v] + " is unbounded");
    }
  }
  // standard monomials, graded-lex order
  std::vector<int> caps(vars.size(), 0);
  for (std::size_t v = 0; v < vars.size(); ++v) {
    for (const auto& g : gens) {
      bool pure = true;
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (i != v && g[i] > 0) pure = false;
      }
      if (pure && g[v] > 0 && (caps[v] == 0 || g[v] < caps[v])) caps[v] = g[v];
    }
  }
  std::vector<Mono> standard;
  Mono cur(vars.size(), 0);
  std::function<void(std::size_t)> walk = [&](std::size_t v) {
    if (v == vars.size()) {
      if (!in_ideal(cur)) standard.push_back(cur);
      return;
    }
    for (int e = 0; e < caps[v]; ++e) {
      cur[v] = e;
      walk(v + 1);
    }
    cur[v] = 0;
  };
  walk(0);
  std::sort(standard.begin(), standard.end(), GradedLexLess{});
  std::map<Mono, int, GradedLexLess> index;
  std::vector<std::string> basis;
  for (std::size_t i = 0; i < standard.size(); ++i) {
    index[standard[i]] = static_cast<int>(i);
    basis.push_back(Poly::monomial(ring, standard[i], Scalar::one(field)).str());
  }
  std::size_t m = standard.size();
  std::vector<std::vector<SVec>> table(
      m, std::vector<SVec>(m, SVec(m, Scalar::zero(field))));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      Mono prod(vars.size());
      for (std::size_t v = 0; v < vars.size(); ++v) {
        prod[v] = standard[i][v] + standard[j][v];
      }
      if (!in_ideal(prod)) {
        auto it = index.find(prod);
        if (it == index.end()) {
          throw validation_error("monomial quotient: non-standard product survived");
        }
        table[i][j][it->second] = Scalar::one(field);
      }
    }
  }
  SVec identity(m, Scalar::zero(field));
  identity[index.at(Mono(vars.size(), 0))] = Scalar::one(field);
  std::string name = field.tag() + "[";
  for (std::size_t v = 0; v < vars.size(); ++v) {
    if (v) name += ",";
    name += vars[v];
  }
  name += "]/(monomials)";
  return make_structure_algebra(field, std::move(basis), std::move(table),
                                std::move(identity), std::move(name));
}

// ---------------------------------------------------------------------------
// ExtContext and AlgElement

ExtContext ExtContext::plain(AlgebraPtr a) {
  FieldDesc f = a->field;
  return ExtContext{std::move(a), PolyRing::constants(f)};
}

ExtContext ExtContext::extend(AlgebraPtr a, const std::vector<std::string>& vars) {
  PolyRing ring = PolyRing::constants(a->field);
  for (const auto& v : vars) {
    if (ring.index_of(v) >= 0) throw validation_error("duplicate variable " + v);
    ring.vars.push_back({v, false});
  }
  return ExtContext{std::move(a), std::move(ring)};
}

bool ExtContext::operator==(const ExtContext& o) const {
  return ring == o.ring &&
         (algebra.get() == o.algebra.get() || *algebra == *o.algebra);
}

ExtContext poly_extension(const AlgebraPtr& a, int n) {
  if (n < 0) throw validation_error("poly_extension: negative variable count");
  std::vector<std::string> vars;
  if (n == 1) {
    vars.push_back("t");
  } else {
    for (int i = 1; i <= n; ++i) vars.push_back("t" + std::to_string(i));
  }
  return ExtContext::extend(a, vars);
}

AlgElement::AlgElement(ExtContext ctx)
    : ctx_(std::move(ctx)),
      coords_(ctx_.algebra->dim(), Poly::zero(ctx_.ring)) {}

AlgElement AlgElement::one(const ExtContext& ctx) {
  return from_scalar_coords(ctx, ctx.algebra->identity);
}

AlgElement AlgElement::basis_element(const ExtContext& ctx, int i) {
  AlgElement e(ctx);
  e.coords_[i] = Poly::one(ctx.ring);
  return e;
}

AlgElement AlgElement::variable(const ExtContext& ctx, const std::string& name) {
  AlgElement e = one(ctx);
  Poly v = Poly::variable(ctx.ring, name);
  for (auto& c : e.coords_) c = c * v;
  return e;
}

AlgElement AlgElement::from_coords(ExtContext ctx, std::vector<Poly> coords) {
  if (coords.size() != ctx.algebra->dim()) {
    throw validation_error("coordinate count does not match basis size");
  }
  AlgElement e(std::move(ctx));
  for (std::size_t i = 0; i < coords.size(); ++i) {
    e.coords_[i] = coords[i].lift_to(e.ctx_.ring);
  }
  return e;
}

AlgElement AlgElement::from_scalar_coords(const ExtContext& ctx, const SVec& coords) {
  if (coords.size() != ctx.algebra->dim()) {
    throw validation_error("coordinate count does not match basis size");
  }
  AlgElement e(ctx);
  for (std::size_t i = 0; i < coords.size(); ++i) {
    e.coords_[i] = Poly::constant(ctx.ring, coords[i]);
  }
  return e;
}

bool AlgElement::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(),
                     [](const Poly& p) { return p.is_zero(); });
}

bool AlgElement::is_one() const { return *this == one(ctx_); }

int AlgElement::t_degree() const {
  int d = -1;
  for (const auto& c : coords_) {
    if (auto deg = c.total_degree()) d = std::max(d, *deg);
  }
  return d;
}

SVec AlgElement::constant_coords() const {
  if (t_degree() > 0) {
    throw validation_error("element has positive degree in the extension variables");
  }
  SVec out;
  out.reserve(coords_.size());
  for (const auto& c : coords_) out.push_back(c.constant_value());
  return out;
}

namespace {

ExtContext merge_contexts(const ExtContext& a, const ExtContext& b) {
  if (a.algebra.get() != b.algebra.get() && !(*a.algebra == *b.algebra)) {
    throw validation_error("algebra mismatch between elements");
  }
  return ExtContext{a.algebra, ring_union(a.ring, b.ring)};
}

}  // namespace

AlgElement AlgElement::lift_to(const ExtContext& bigger) const {
  AlgElement out(bigger);
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    out.coords_[i] = coords_[i].lift_to(bigger.ring);
  }
  return out;
}

AlgElement AlgElement::operator+(const AlgElement& o) const {
  ExtContext ctx = merge_contexts(ctx_, o.ctx_);
  AlgElement a = lift_to(ctx), b = o.lift_to(ctx), out(ctx);
  for (std::size_t i = 0; i < out.coords_.size(); ++i) {
    out.coords_[i] = a.coords_[i] + b.coords_[i];
  }
  return out;
}

AlgElement AlgElement::operator-(const AlgElement& o) const {
  ExtContext ctx = merge_contexts(ctx_, o.ctx_);
  AlgElement a = lift_to(ctx), b = o.lift_to(ctx), out(ctx);
  for (std::size_t i = 0; i < out.coords_.size(); ++i) {
    out.coords_[i] = a.coords_[i] - b.coords_[i];
  }
  return out;
}

AlgElement AlgElement::operator-() const {
  AlgElement out(ctx_);
  for (std::size_t i = 0; i < coords_.size(); ++i) out.coords_[i] = -coords_[i];
  return out;
}

AlgElement AlgElement::operator*(const AlgElement& o) const {
  ExtContext ctx = merge_contexts(ctx_, o.ctx_);
  AlgElement a = lift_to(ctx), b = o.lift_to(ctx), out(ctx);
  const auto& alg = *ctx.algebra;
  for (std::size_t i = 0; i < alg.dim(); ++i) {
    if (a.coords_[i].is_zero()) continue;
    for (std::size_t j = 0; j < alg.dim(); ++j) {
      if (b.coords_[j].is_zero()) continue;
      Poly cij = a.coords_[i] * b.coords_[j];
      const SVec& prod = alg.table[i][j];
      for (std::size_t k = 0; k < alg.dim(); ++k) {
        if (!prod[k].is_zero()) {
          out.coords_[k] += cij.scaled(prod[k]);
        }
      }
    }
  }
  return out;
}

AlgElement AlgElement::scaled(const Scalar& c) const {
  AlgElement out(ctx_);
  for (std::size_t i = 0; i < coords_.size(); ++i) out.coords_[i] = coords_[i].scaled(c);
  return out;
}

AlgElement AlgElement::scaled(const Poly& f) const {
  AlgElement out(ctx_);
  Poly lifted = f.lift_to(ctx_.ring);
  for (std::size_t i = 0; i < coords_.size(); ++i) out.coords_[i] = coords_[i] * lifted;
  return out;
}

AlgElement AlgElement::pow(unsigned e) const {
  AlgElement acc = one(ctx_);
  AlgElement base = *this;
  while (e > 0) {
    if (e & 1u) acc = acc * base;
    base = base * base;
    e >>= 1u;
  }
  return acc;
}

bool AlgElement::operator==(const AlgElement& o) const {
  if (!(ctx_ == o.ctx_)) {
    ExtContext ctx = merge_contexts(ctx_, o.ctx_);
    return lift_to(ctx).coords() == o.lift_to(ctx).coords();
  }
  return coords_ == o.coords_;
}

SparseVec AlgElement::flatten() const {
  SparseVec v;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    for (const auto& [m, c] : coords_[i].terms()) {
      v[SparseKey{m, static_cast<int>(i)}] = c;
    }
  }
  return v;
}

std::string AlgElement::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    std::string cs = coords_[i].str();
    if (cs == "1") {
      os << ctx_.algebra->basis[i];
    } else if (coords_[i].terms().size() == 1 && cs.find(' ') == std::string::npos) {
      os << cs << "*" << ctx_.algebra->basis[i];
    } else {
      os << "(" << cs << ")*" << ctx_.algebra->basis[i];
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// center

std::vector<SVec> center_coords(const StructAlgebra& a) {
  std::size_t m = a.dim();
  // rows: for each basis element b_i, the map z -> z b_i - b_i z
  std::vector<SVec> rows;
  for (std::size_t i = 0; i < m; ++i) {
    SVec bi(m, Scalar::zero(a.field));
    bi[i] = Scalar::one(a.field);
    SMat diff = a.right_mult_matrix(bi);  // z -> z * b_i
    SMat lm = a.left_mult_matrix(bi);     // z -> b_i * z
    for (std::size_t r = 0; r < m; ++r) {
      SVec row(m, Scalar::zero(a.field));
      bool nonzero = false;
      for (std::size_t c = 0; c < m; ++c) {
        row[c] = diff[r][c] - lm[r][c];
        nonzero = nonzero || !row[c].is_zero();
      }
      if (nonzero) rows.push_back(std::move(row));
    }
  }
  if (rows.empty()) {
    std::vector<SVec> all;
    for (std::size_t i = 0; i < m; ++i) {
      SVec v(m, Scalar::zero(a.field));
      v[i] = Scalar::one(a.field);
      all.push_back(v);
    }
    return all;
  }
  return smat_nullspace(rows, a.field, m);
}

std::vector<AlgElement> center_basis(const AlgebraPtr& a) {
  ExtContext ctx = ExtContext::plain(a);
  std::vector<AlgElement> out;
  for (const auto& v : center_coords(*a)) {
    out.push_back(AlgElement::from_scalar_coords(ctx, v));
  }
  return out;
}

SubalgebraView center_subalgebra(const AlgebraPtr& a) {
  std::vector<SVec> zs = center_coords(*a);
  std::size_t r = zs.size();
  // products in terms of the center basis
  std::vector<std::vector<SVec>> table(r, std::vector<SVec>(r));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      SVec prod = a->mul_coords(zs[i], zs[j]);
      auto coords = span_coordinates(zs, prod, a->field);
      if (!coords) throw validation_error("center is not closed under products");
      table[i][j] = *coords;
    }
  }
  auto idc = span_coordinates(zs, a->identity, a->field);
  if (!idc) throw validation_error("center does not contain the identity");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < r; ++i) labels.push_back("z" + std::to_string(i + 1));
  SubalgebraView view;
  view.algebra = make_structure_algebra(a->field, std::move(labels), std::move(table),
                                        *idc, "Z(" + a->name + ")");
  view.inclusion = zs;
  return view;
}

// ---------------------------------------------------------------------------
// radical

namespace {

// coefficient of lambda^(n-j) in det(lambda*I - M), computed exactly
Scalar charpoly_coefficient(const SMat& m, const FieldDesc& field, int j) {
  std::size_t n = m.size();
  PolyRing ring = PolyRing::univariate(field, "lambda");
  PMat p(n, std::vector<Poly>(n, Poly::zero(ring)));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      p[r][c] = Poly::constant(ring, -m[r][c]);
      if (r == c) p[r][c] += Poly::variable(ring, 0);
    }
  }
  Poly chi = pmat_det(std::move(p));
  return chi.coeff(Mono{static_cast<std::int32_t>(n - j)});
}

std::vector<SVec> trace_form_kernel(const StructAlgebra& a) {
  std::size_t m = a.dim();
  SMat gram = smat_zero(a.field, m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      gram[i][j] = a.trace_left_mult(a.table[i][j]);
    }
  }
  return smat_nullspace(gram, a.field, m);
}

}  // namespace

int ideal_nilpotency_index(const StructAlgebra& a, const std::vector<SVec>& ideal) {
  if (ideal.empty()) return 1;
  std::vector<SVec> power = canonical_span(ideal);
  int m = 1;
  while (!power.empty()) {
    if (m > static_cast<int>(a.dim()) + 1) {
      throw validation_error("ideal is not nilpotent");
    }
    std::vector<SVec> next;
    for (const auto& u : power) {
      for (const auto& v : ideal) next.push_back(a.mul_coords(u, v));
    }
    power = canonical_span(std::move(next));
    ++m;
  }
  return m;
}

std::vector<SVec> jacobson_radical_coords(const StructAlgebra& a) {
  std::size_t n = a.dim();
  std::vector<SVec> current = trace_form_kernel(a);

  std::int64_t p = a.field.characteristic();
  if (p > 0) {
    // chain of characteristic-polynomial coefficient conditions; each
    // sigma_{p^k} is additive on the previous stage over the prime field
    std::int64_t pk = p;
    while (pk <= static_cast<std::int64_t>(n) && !current.empty()) {
      std::vector<SVec> rows;
      for (const auto& y : current) {
        SVec row(current.size(), Scalar::zero(a.field));
        bool nonzero = false;
        for (std::size_t i = 0; i < current.size(); ++i) {
          SVec prod = a.mul_coords(current[i], y);
          row[i] = charpoly_coefficient(a.left_mult_matrix(prod), a.field,
                                        static_cast<int>(pk));
          nonzero = nonzero || !row[i].is_zero();
        }
        if (nonzero) rows.push_back(std::move(row));
      }
      std::vector<SVec> alphas = rows.empty()
          ? std::vector<SVec>{}
          : smat_nullspace(rows, a.field, current.size());
      if (rows.empty()) {
        // all constraints vanish; stage unchanged
        pk *= p;
        continue;
      }
      std::vector<SVec> next;
      for (const auto& alpha : alphas) {
        SVec v(n, Scalar::zero(a.field));
        for (std::size_t i = 0; i < current.size(); ++i) {
          if (alpha[i].is_zero()) continue;
          for (std::size_t c = 0; c < n; ++c) v[c] += alpha[i] * current[i][c];
        }
        next.push_back(std::move(v));
      }
      current = canonical_span(std::move(next));
      pk *= p;
    }
  }

  // post hoc certificates
  for (std::size_t i = 0; i < n; ++i) {
    SVec bi(n, Scalar::zero(a.field));
    bi[i] = Scalar::one(a.field);
    for (const auto& v : current) {
      if (!span_coordinates(current, a.mul_coords(bi, v), a.field) ||
          !span_coordinates(current, a.mul_coords(v, bi), a.field)) {
        throw validation_error("radical: result is not a two-sided ideal");
      }
    }
  }
  ideal_nilpotency_index(a, current);  // throws when not nilpotent
  return current;
}

std::vector<AlgElement> jacobson_radical(const AlgebraPtr& a) {
  std::vector<SVec> coords = jacobson_radical_coords(*a);
  if (!coords.empty()) {
    // semisimple quotient check
    auto q = quotient_by_ideal(a, coords);
    if (!jacobson_radical_coords(*q.algebra).empty()) {
      throw validation_error("radical: quotient is not semisimple");
    }
  }
  ExtContext ctx = ExtContext::plain(a);
  std::vector<AlgElement> out;
  for (const auto& v : coords) out.push_back(AlgElement::from_scalar_coords(ctx, v));
  return out;
}

QuotientAlgebra quotient_by_ideal(const AlgebraPtr& a,
                                  const std::vector<SVec>& ideal_basis) {
  std::size_t n = a->dim();
  const FieldDesc& f = a->field;
  std::vector<SVec> ideal = canonical_span(ideal_basis);
  // two-sided check
  for (std::size_t i = 0; i < n; ++i) {
    SVec bi(n, Scalar::zero(f));
    bi[i] = Scalar::one(f);
    for (const auto& v : ideal) {
      if (!span_coordinates(ideal, a->mul_coords(bi, v), f) ||
          !span_coordinates(ideal, a->mul_coords(v, bi), f)) {
        throw validation_error("quotient: span is not a two-sided ideal");
      }
    }
  }
  std::vector<bool> is_pivot(n, false);
  for (const auto& row : ideal) {
    for (std::size_t c = 0; c < n; ++c) {
      if (!row[c].is_zero()) {
        is_pivot[c] = true;
        break;
      }
    }
  }
  std::vector<int> complement;
  for (std::size_t c = 0; c < n; ++c) {
    if (!is_pivot[c]) complement.push_back(static_cast<int>(c));
  }
  std::size_t q = complement.size();
  auto reduce = [&](SVec x) {
    for (const auto& row : ideal) {
      std::size_t piv = 0;
      while (piv < n && row[piv].is_zero()) ++piv;
      if (!x[piv].is_zero()) {
        Scalar c = x[piv];
        for (std::size_t k = piv; k < n; ++k) x[k] -= c * row[k];
      }
    }
    return x;
  };
  SMat projection = smat_zero(f, q, n);
  for (std::size_t c = 0; c < n; ++c) {
    SVec e(n, Scalar::zero(f));
    e[c] = Scalar::one(f);
    SVec red = reduce(e);
    for (std::size_t r = 0; r < q; ++r) projection[r][c] = red[complement[r]];
  }
  SMat lift = smat_zero(f, n, q);
  for (std::size_t r = 0; r < q; ++r) lift[complement[r]][r] = Scalar::one(f);

  std::vector<std::vector<SVec>> table(q, std::vector<SVec>(q));
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t j = 0; j < q; ++j) {
      SVec ei(n, Scalar::zero(f));
      ei[complement[i]] = Scalar::one(f);
      SVec ej(n, Scalar::zero(f));
      ej[complement[j]] = Scalar::one(f);
      table[i][j] = smat_apply(projection, a->mul_coords(ei, ej));
    }
  }
  SVec identity = smat_apply(projection, a->identity);
  std::vector<std::string> labels;
  for (std::size_t r = 0; r < q; ++r) labels.push_back(a->basis[complement[r]]);
  QuotientAlgebra out;
  out.algebra = make_structure_algebra(f, std::move(labels), std::move(table),
                                       std::move(identity), a->name + "/ideal");
  out.projection = std::move(projection);
  out.lift = std::move(lift);
  return out;
}

// ---------------------------------------------------------------------------
// central idempotents

namespace {

// minimal polynomial of z inside a unital commutative block (unit u)
Poly block_minpoly(const StructAlgebra& alg, const SVec& unit, const SVec& z) {
  PolyRing ring = PolyRing::univariate(alg.field, "T");
  std::vector<SVec> powers{unit};
  SVec cur = unit;
  while (true) {
    cur = alg.mul_coords(cur, z);
    auto coords = span_coordinates(powers, cur, alg.field);
    if (coords) {
      Poly mu = Poly::monomial(ring, Mono{static_cast<std::int32_t>(powers.size())},
                               Scalar::one(alg.field));
      for (std::size_t i = 0; i < coords->size(); ++i) {
        mu.add_term(Mono{static_cast<std::int32_t>(i)}, -(*coords)[i]);
      }
      return mu;
    }
    powers.push_back(cur);
  }
}

SVec eval_poly_in_block(const StructAlgebra& alg, const SVec& unit, const SVec& z,
                        const Poly& f) {
  // Horner with `unit` as 1
  SVec acc(alg.dim(), Scalar::zero(alg.field));
  int deg = f.degree_in(0).value_or(-1);
  for (int d = deg; d >= 0; --d) {
    acc = alg.mul_coords(acc, z);
    Scalar c = f.coeff(Mono{d});
    if (!c.is_zero()) {
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += c * unit[i];
    }
  }
  return acc;
}

// extended gcd on univariate polys: s*f + t*g = gcd (monic)
std::tuple<Poly, Poly, Poly> poly_ext_gcd(const Poly& f, const Poly& g) {
  Poly r0 = f, r1 = g;
  Poly s0 = Poly::one(f.ring()), s1 = Poly::zero(f.ring());
  Poly t0 = Poly::zero(f.ring()), t1 = Poly::one(f.ring());
  while (!r1.is_zero()) {
    auto [q, r] = poly_divmod(r0, r1);
    Poly s2 = s0 - q * s1;
    Poly t2 = t0 - q * t1;
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = s2;
    t0 = t1;
    t1 = t2;
  }
  Scalar lead = r0.leading_coeff();
  return {r0.scaled(lead.inverse()), s0.scaled(lead.inverse()),
          t0.scaled(lead.inverse())};
}

struct Block {
  SVec unit;
  std::vector<SVec> span;
};

// try to produce a nontrivial idempotent of the block from candidate z
std::optional<SVec> split_candidate(const StructAlgebra& alg, const Block& blk,
                                    const SVec& z) {
  Poly mu = block_minpoly(alg, blk.unit, z);
  if (mu.degree_in(0).value() < 2) return std::nullopt;
  Factorization fac = factor_univariate(mu);
  if (fac.factors.size() < 2) return std::nullopt;
  Poly part = fac.factors[0].first.pow(fac.factors[0].second);
  Poly rest = Poly::one(mu.ring());
  for (std::size_t i = 1; i < fac.factors.size(); ++i) {
    rest *= fac.factors[i].first.pow(fac.factors[i].second);
  }
  auto [d, s, t] = poly_ext_gcd(part, rest);
  if (d.degree_in(0).value() != 0) return std::nullopt;
  // e = (t * rest)(z): 1 mod `part`, 0 mod `rest`
  SVec e = eval_poly_in_block(alg, blk.unit, z, t * rest);
  return e;
}

}  // namespace

std::vector<AlgElement> central_idempotents(const AlgebraPtr& a, int cap_log2,
                                            std::uint64_t seed) {
  const FieldDesc& f = a->field;
  SubalgebraView zview = center_subalgebra(a);
  const StructAlgebra& zalg = *zview.algebra;
  std::size_t zdim = zalg.dim();

  std::vector<SVec> jz = jacobson_radical_coords(zalg);
  QuotientAlgebra quo = quotient_by_ideal(zview.algebra, jz);
  const StructAlgebra& qalg = *quo.algebra;
  std::size_t qdim = qalg.dim();

  // split the semisimple quotient into primitive idempotents
  std::vector<Block> blocks;
  {
    Block whole;
    whole.unit = qalg.identity;
    for (std::size_t i = 0; i < qdim; ++i) {
      SVec e(qdim, Scalar::zero(f));
      e[i] = Scalar::one(f);
      whole.span.push_back(e);
    }
    whole.span = canonical_span(whole.span);
    blocks.push_back(std::move(whole));
  }
  std::mt19937_64 rng(seed);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Block> next;
    for (const auto& blk : blocks) {
      if (blk.span.size() <= 1) {
        next.push_back(blk);
        continue;
      }
      std::optional<SVec> split;
      // candidates: span basis, pairwise sums, then seeded random combos
      std::vector<SVec> candidates = blk.span;
      for (std::size_t i = 0; i < blk.span.size() && !split; ++i) {
        for (std::size_t j = i + 1; j < blk.span.size(); ++j) {
          SVec s(qdim, Scalar::zero(f));
          for (std::size_t c = 0; c < qdim; ++c) s[c] = blk.span[i][c] + blk.span[j][c];
          candidates.push_back(std::move(s));
        }
      }
      for (int extra = 0; extra < 64; ++extra) {
        SVec s(qdim, Scalar::zero(f));
        for (const auto& v : blk.span) {
          std::int64_t c = static_cast<std::int64_t>(rng() % 7) - 3;
          for (std::size_t k = 0; k < qdim; ++k) {
            s[k] += v[k] * Scalar::from_int(f, c);
          }
        }
        candidates.push_back(std::move(s));
      }
      for (const auto& z : candidates) {
        split = split_candidate(qalg, blk, z);
        if (split) break;
      }
      if (!split) {
        next.push_back(blk);
        continue;
      }
      changed = true;
      SVec e = *split;
      SVec rest(qdim, Scalar::zero(f));
      for (std::size_t c = 0; c < qdim; ++c) rest[c] = blk.unit[c] - e[c];
      for (const SVec& unit : {e, rest}) {
        Block b;
        b.unit = unit;
        std::vector<SVec> spans;
        for (const auto& v : blk.span) spans.push_back(qalg.mul_coords(unit, v));
        b.span = canonical_span(std::move(spans));
        next.push_back(std::move(b));
      }
    }
    blocks = std::move(next);
  }

  int r = static_cast<int>(blocks.size());
  if (r > cap_log2) {
    throw validation_error("central idempotent count 2^" + std::to_string(r) +
                           " exceeds the configured cap 2^" + std::to_string(cap_log2));
  }

  // lift primitives through the radical of Z, then map into A
  std::int64_t p = f.characteristic();
  std::vector<SVec> primitives;  // coords in Z
  for (const auto& blk : blocks) {
    SVec e = smat_apply(quo.lift, blk.unit);  // any preimage in Z
    for (int iter = 0;; ++iter) {
      SVec e2 = zalg.mul_coords(e, e);
      if (e2 == e) break;
      if (iter > 2 * static_cast<int>(zdim) + 16) {
        throw validation_error("idempotent lifting did not terminate");
      }
      if (p != 2 && p != 3) {
        // e <- 3e^2 - 2e^3
        SVec e3 = zalg.mul_coords(e2, e);
        for (std::size_t c = 0; c < zdim; ++c) {
          e[c] = Scalar::from_int(f, 3) * e2[c] - Scalar::from_int(f, 2) * e3[c];
        }
      } else {
        // Newton on e^2 - e: e <- e - (2e-1)^{-1} (e^2 - e)
        SVec two_e_minus_1(zdim, Scalar::zero(f));
        for (std::size_t c = 0; c < zdim; ++c) {
          two_e_minus_1[c] = Scalar::from_int(f, 2) * e[c] - zalg.identity[c];
        }
        auto inv = smat_solve(zalg.left_mult_matrix(two_e_minus_1), zalg.identity, f);
        if (!inv) throw validation_error("idempotent lifting: 2e-1 not invertible");
        SVec defect(zdim, Scalar::zero(f));
        for (std::size_t c = 0; c < zdim; ++c) defect[c] = e2[c] - e[c];
        SVec corr = zalg.mul_coords(*inv, defect);
        for (std::size_t c = 0; c < zdim; ++c) e[c] -= corr[c];
      }
    }
    primitives.push_back(std::move(e));
  }

  // verify: orthogonal, sum to 1
  for (std::size_t i = 0; i < primitives.size(); ++i) {
    for (std::size_t j = 0; j < primitives.size(); ++j) {
      SVec prod = zalg.mul_coords(primitives[i], primitives[j]);
      SVec expect = (i == j) ? primitives[i] : SVec(zdim, Scalar::zero(f));
      if (prod != expect) {
        throw validation_error("central idempotents: orthogonality check failed");
      }
    }
  }
  {
    SVec sum(zdim, Scalar::zero(f));
    for (const auto& e : primitives) {
      for (std::size_t c = 0; c < zdim; ++c) sum[c] += e[c];
    }
    if (sum != zalg.identity) {
      throw validation_error("central idempotents: primitives do not sum to 1");
    }
  }

  // map to A and enumerate all subset sums
  std::vector<SVec> in_a;
  std::size_t n = a->dim();
  for (const auto& e : primitives) {
    SVec v(n, Scalar::zero(f));
    for (std::size_t i = 0; i < zdim; ++i) {
      if (e[i].is_zero()) continue;
      for (std::size_t c = 0; c < n; ++c) v[c] += e[i] * zview.inclusion[i][c];
    }
    in_a.push_back(std::move(v));
  }
  std::sort(in_a.begin(), in_a.end(), [](const SVec& x, const SVec& y) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!(x[i] == y[i])) {
        if (x[i].field().kind == FieldDesc::Kind::PrimeField) {
          return x[i].residue() < y[i].residue();
        }
        return x[i].rat() < y[i].rat();
      }
    }
    return false;
  });

  ExtContext ctx = ExtContext::plain(a);
  std::vector<AlgElement> out;
  for (std::size_t mask = 0; mask < (std::size_t(1) << r); ++mask) {
    SVec v(n, Scalar::zero(f));
    for (int b = 0; b < r; ++b) {
      if (mask & (std::size_t(1) << b)) {
        for (std::size_t c = 0; c < n; ++c) v[c] += in_a[b][c];
      }
    }
    // final certificate: idempotent and central in A
    if (a->mul_coords(v, v) != v) {
      throw validation_error("central idempotents: subset sum is not idempotent");
    }
    out.push_back(AlgElement::from_scalar_coords(ctx, v));
  }
  for (const auto& e : out) {
    for (std::size_t i = 0; i < n; ++i) {
      AlgElement bi = AlgElement::basis_element(ctx, static_cast<int>(i));
      if (!(e * bi == bi * e)) {
        throw validation_error("central idempotents: element is not central");
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// units

UnitCertificate is_unit(const AlgElement& a) {
  const auto& alg = *a.ctx().algebra;
  std::size_t n = alg.dim();
  const PolyRing& ring = a.ctx().ring;
  PMat lm(n, std::vector<Poly>(n, Poly::zero(ring)));
  ExtContext ctx = a.ctx();
  for (std::size_t j = 0; j < n; ++j) {
    AlgElement col = a * AlgElement::basis_element(ctx, static_cast<int>(j));
    for (std::size_t k = 0; k < n; ++k) lm[k][j] = col.coords()[k];
  }
  UnitCertificate cert;
  cert.det = pmat_det(lm);
  cert.unit = !cert.det.is_zero() && cert.det.is_constant();
  if (cert.unit) {
    std::vector<Poly> rhs;
    for (std::size_t k = 0; k < n; ++k) {
      rhs.push_back(Poly::constant(ring, alg.identity[k]));
    }
    auto [xs, det] = pmat_solve_cramer(lm, rhs);
    Scalar inv_det = det.constant_value().inverse();
    std::vector<Poly> coords;
    for (auto& x : xs) coords.push_back(x.scaled(inv_det));
    AlgElement inverse = AlgElement::from_coords(ctx, std::move(coords));
    if (!((a * inverse).is_one() && (inverse * a).is_one())) {
      throw validation_error("is_unit: inverse certificate failed to verify");
    }
    cert.inverse = std::move(inverse);
  }
  return cert;
}

// ---------------------------------------------------------------------------
// membership

namespace {

MembershipResult closure_search(const AlgElement& target_in,
                                std::vector<AlgElement> alphabet,
                                std::vector<std::string> names, int L) {
  if (L < 1) throw validation_error("membership: length bound must be >= 1");
  // unify contexts
  ExtContext ctx = target_in.ctx();
  for (const auto& g : alphabet) {
    ExtContext gc = g.ctx();
    if (ctx.algebra.get() != gc.algebra.get() && !(*ctx.algebra == *gc.algebra)) {
      throw validation_error("membership: algebra mismatch");
    }
    ctx = ExtContext{ctx.algebra, ring_union(ctx.ring, gc.ring)};
  }
  AlgElement target = target_in.lift_to(ctx);
  for (auto& g : alphabet) g = g.lift_to(ctx);

  MembershipResult res;
  res.alphabet = alphabet;
  res.alphabet_names = std::move(names);

  const FieldDesc& f = ctx.algebra->field;
  EchelonSpan span(f);
  struct Node {
    AlgElement value;
    std::vector<int> word;
  };
  std::vector<Node> inserted;
  std::deque<std::size_t> work;

  AlgElement unit = AlgElement::one(ctx);
  span.insert(unit.flatten(), 0);
  inserted.push_back({unit, {}});
  work.push_back(0);

  int max_len_attempted = 0;
  bool truncated = false;
  while (!work.empty()) {
    std::size_t idx = work.front();
    work.pop_front();
    int len = static_cast<int>(inserted[idx].word.size());
    if (len >= L) {
      truncated = true;
      continue;
    }
    max_len_attempted = std::max(max_len_attempted, len + 1);
    for (std::size_t g = 0; g < alphabet.size(); ++g) {
      AlgElement cand = inserted[idx].value * alphabet[g];
      int tag = static_cast<int>(inserted.size());
      if (span.insert(cand.flatten(), tag)) {
        std::vector<int> word = inserted[idx].word;
        word.push_back(static_cast<int>(g));
        inserted.push_back({std::move(cand), std::move(word)});
        work.push_back(inserted.size() - 1);
        if (inserted.size() > 50000) {
          throw validation_error("membership: span exceeded the size cap");
        }
      }
    }
  }
  res.stabilized = !truncated;
  res.explored_length = truncated ? L : max_len_attempted;

  auto combo = span.express(target.flatten());
  if (combo) {
    res.found = true;
    MembershipWitness w;
    for (const auto& [tag, c] : *combo) {
      if (c.is_zero()) continue;
      w.terms.push_back({c, inserted[tag].word});
    }
    res.witness = std::move(w);
  }
  return res;
}

}  // namespace

AlgElement MembershipResult::reevaluate(const ExtContext& ctx) const {
  AlgElement acc = AlgElement::zero(ctx);
  if (!witness) throw validation_error("no witness to evaluate");
  for (const auto& term : witness->terms) {
    AlgElement prod = AlgElement::one(ctx);
    for (int g : term.word) prod = prod * alphabet[g].lift_to(ctx);
    acc = acc + prod.scaled(term.coeff);
  }
  return acc;
}

std::string MembershipResult::witness_str() const {
  if (!witness) return "";
  std::ostringstream os;
  bool first = true;
  for (const auto& term : witness->terms) {
    if (!first) os << " + ";
    first = false;
    os << term.coeff.str();
    for (int g : term.word) {
      os << "*"
         << (g < static_cast<int>(alphabet_names.size()) ? alphabet_names[g]
                                                        : "g" + std::to_string(g));
    }
  }
  return os.str();
}

MembershipResult subalgebra_membership(const AlgElement& target,
                                       const std::vector<AlgElement>& generators,
                                       int L,
                                       const std::vector<std::string>& names) {
  ExtContext plain = ExtContext::plain(target.ctx().algebra);
  std::vector<AlgElement> alphabet;
  std::vector<std::string> all_names;
  for (std::size_t i = 0; i < plain.algebra->dim(); ++i) {
    alphabet.push_back(AlgElement::basis_element(plain, static_cast<int>(i)));
    all_names.push_back(plain.algebra->basis[i]);
  }
  for (std::size_t i = 0; i < generators.size(); ++i) {
    alphabet.push_back(generators[i]);
    all_names.push_back(i < names.size() ? names[i] : "g" + std::to_string(i + 1));
  }
  return closure_search(target, std::move(alphabet), std::move(all_names), L);
}

MembershipResult span_membership(const AlgElement& target,
                                 const std::vector<AlgElement>& generators,
                                 int L,
                                 const std::vector<std::string>& names) {
  std::vector<std::string> all_names;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    all_names.push_back(i < names.size() ? names[i] : "g" + std::to_string(i + 1));
  }
  return closure_search(target, generators, std::move(all_names), L);
}

}  // namespace ringlab
