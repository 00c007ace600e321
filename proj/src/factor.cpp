#include "ringlab/factor.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace ringlab {

namespace {

// ---------------------------------------------------------------------------
// dense univariate integer polynomials; coefficient i belongs to x^i,
// normalized with no leading zeros (empty vector = 0)

using ZVec = std::vector<BigInt>;

void znormalize(ZVec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int zdeg(const ZVec& a) { return static_cast<int>(a.size()) - 1; }

ZVec zadd(const ZVec& a, const ZVec& b) {
  ZVec r(std::max(a.size(), b.size()), BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  znormalize(r);
  return r;
}

ZVec zsub(const ZVec& a, const ZVec& b) {
  ZVec r(std::max(a.size(), b.size()), BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  znormalize(r);
  return r;
}

ZVec zmul(const ZVec& a, const ZVec& b) {
  if (a.empty() || b.empty()) return {};
  ZVec r(a.size() + b.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  znormalize(r);
  return r;
}

BigInt mod_pos(const BigInt& v, const BigInt& m) {
  BigInt r = v % m;
  if (r < 0) r += m;
  return r;
}

ZVec zmod(ZVec a, const BigInt& m) {
  for (auto& c : a) c = mod_pos(c, m);
  znormalize(a);
  return a;
}

ZVec zsym(ZVec a, const BigInt& m) {
  BigInt half = m / 2;
  for (auto& c : a) {
    c = mod_pos(c, m);
    if (c > half) c -= m;
  }
  znormalize(a);
  return a;
}

ZVec zmulmod(const ZVec& a, const ZVec& b, const BigInt& m) {
  return zmod(zmul(a, b), m);
}

BigInt big_inv_mod(const BigInt& a, const BigInt& m) {
  BigInt t = 0, new_t = 1, r = m, new_r = mod_pos(a, m);
  while (new_r != 0) {
    BigInt q = r / new_r;
    BigInt tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw validation_error("modular inverse does not exist");
  return mod_pos(t, m);
}

// division by b with invertible leading coefficient mod m
void zdivmod_mod(const ZVec& a, const ZVec& b, const BigInt& m, ZVec& q, ZVec& r) {
  if (b.empty()) throw validation_error("dense division by zero");
  BigInt lead_inv = big_inv_mod(b.back(), m);
  r = zmod(a, m);
  q.assign(a.size() > b.size() - 1 ? a.size() - b.size() + 1 : 0, BigInt(0));
  while (zdeg(r) >= zdeg(b)) {
    int shift = zdeg(r) - zdeg(b);
    BigInt c = mod_pos(r.back() * lead_inv, m);
    q[shift] = mod_pos(q[shift] + c, m);
    for (std::size_t i = 0; i < b.size(); ++i) {
      r[shift + i] = mod_pos(r[shift + i] - c * b[i], m);
    }
    znormalize(r);
  }
  znormalize(q);
}

ZVec zmod_rem(const ZVec& a, const ZVec& b, const BigInt& m) {
  ZVec q, r;
  zdivmod_mod(a, b, m, q, r);
  return r;
}

ZVec zmake_monic_mod(const ZVec& a, const BigInt& p) {
  if (a.empty()) return a;
  BigInt inv = big_inv_mod(a.back(), p);
  ZVec r = a;
  for (auto& c : r) c = mod_pos(c * inv, p);
  znormalize(r);
  return r;
}

ZVec zgcd_mod(ZVec a, ZVec b, const BigInt& p) {
  a = zmod(std::move(a), p);
  b = zmod(std::move(b), p);
  while (!b.empty()) {
    ZVec r = zmod_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return zmake_monic_mod(a, p);
}

ZVec zderiv(const ZVec& a) {
  ZVec r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * BigInt(i));
  znormalize(r);
  return r;
}

ZVec zpowmod(ZVec base, BigInt e, const ZVec& f, const BigInt& p) {
  ZVec acc{1};
  base = zmod_rem(base, f, p);
  while (e > 0) {
    if ((e & 1) != 0) acc = zmod_rem(zmul(acc, base), f, p);
    base = zmod_rem(zmul(base, base), f, p);
    e >>= 1;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// factorization over F_p: distinct-degree + Cantor-Zassenhaus splitting

ZVec z_x() { return ZVec{0, 1}; }

void edf(const ZVec& g, int d, const BigInt& p, std::mt19937_64& rng,
         std::vector<ZVec>& out) {
  if (zdeg(g) == d) {
    out.push_back(g);
    return;
  }
  int n = zdeg(g);
  while (true) {
    ZVec a(n, BigInt(0));
    for (int i = 0; i < n; ++i) {
      a[i] = BigInt(rng() % static_cast<std::uint64_t>(p));
    }
    znormalize(a);
    if (a.empty() || zdeg(a) == 0) continue;
    ZVec t;
    if (p == 2) {
      // trace map over F_2
      ZVec acc = zmod_rem(a, g, p);
      ZVec cur = acc;
      for (int i = 1; i < d; ++i) {
        cur = zmod_rem(zmul(cur, cur), g, p);
        acc = zmod(zadd(acc, cur), p);
      }
      t = zgcd_mod(acc, g, p);
    } else {
      BigInt e = (boost::multiprecision::pow(p, d) - 1) / 2;
      ZVec b = zpowmod(a, e, g, p);
      b = zmod(zsub(b, ZVec{1}), p);
      t = zgcd_mod(b, g, p);
    }
    if (zdeg(t) > 0 && zdeg(t) < zdeg(g)) {
      ZVec q, r;
      zdivmod_mod(g, t, p, q, r);
      edf(t, d, p, rng, out);
      edf(zmake_monic_mod(q, p), d, p, rng, out);
      return;
    }
  }
}

// input monic squarefree; output monic irreducibles
std::vector<ZVec> factor_squarefree_mod_p(ZVec f, const BigInt& p,
                                          std::mt19937_64& rng) {
  std::vector<ZVec> out;
  ZVec h = z_x();
  int d = 0;
  while (zdeg(f) > 0) {
    ++d;
    if (2 * d > zdeg(f)) {
      out.push_back(f);
      break;
    }
    h = zpowmod(h, p, f, p);
    ZVec hd = zmod(zsub(h, z_x()), p);
    ZVec g = zgcd_mod(hd, f, p);
    if (zdeg(g) > 0) {
      edf(g, d, p, rng, out);
      ZVec q, r;
      zdivmod_mod(f, g, p, q, r);
      f = zmake_monic_mod(q, p);
      h = zmod_rem(h, f, p);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hensel lifting (monic everything)

struct HenselPair {
  ZVec g, h, s, t;
};

// one quadratic step: modulus m -> m^2, with f = g*h and s*g + t*h = 1 (mod m)
HenselPair hensel_step(const ZVec& f, const HenselPair& in, const BigInt& m) {
  BigInt m2 = m * m;
  ZVec e = zmod(zsub(f, zmul(in.g, in.h)), m2);
  ZVec q, r;
  zdivmod_mod(zmulmod(in.s, e, m2), in.h, m2, q, r);
  ZVec g1 = zmod(zadd(zadd(in.g, zmulmod(in.t, e, m2)), zmulmod(q, in.g, m2)), m2);
  ZVec h1 = zmod(zadd(in.h, r), m2);
  ZVec b = zmod(zsub(zadd(zmulmod(in.s, g1, m2), zmulmod(in.t, h1, m2)), ZVec{1}), m2);
  ZVec c, d;
  zdivmod_mod(zmulmod(in.s, b, m2), h1, m2, c, d);
  ZVec s1 = zmod(zsub(in.s, d), m2);
  ZVec t1 = zmod(zsub(zsub(in.t, zmulmod(in.t, b, m2)), zmulmod(c, g1, m2)), m2);
  return {g1, h1, s1, t1};
}

// Bezout coefficients mod p for coprime monic g, h
void bezout_mod_p(const ZVec& g, const ZVec& h, const BigInt& p, ZVec& s, ZVec& t) {
  // extended Euclid
  ZVec r0 = zmod(g, p), r1 = zmod(h, p);
  ZVec s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    ZVec q, rem;
    zdivmod_mod(r0, r1, p, q, rem);
    ZVec s2 = zmod(zsub(s0, zmul(q, s1)), p);
    ZVec t2 = zmod(zsub(t0, zmul(q, t1)), p);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (zdeg(r0) != 0) throw validation_error("hensel: factors not coprime mod p");
  BigInt inv = big_inv_mod(r0[0], p);
  for (auto& c : s0) c = mod_pos(c * inv, p);
  for (auto& c : t0) c = mod_pos(c * inv, p);
  znormalize(s0);
  znormalize(t0);
  // normalize degrees: s = s mod h, adjust t accordingly
  ZVec q, s_red;
  zdivmod_mod(s0, h, p, q, s_red);
  ZVec t_adj = zmod(zadd(t0, zmulmod(q, g, p)), p);
  s = std::move(s_red);
  t = std::move(t_adj);
}

// lift f = prod(factors) from mod p to mod target (a power of p); f monic,
// factors monic mod p
std::vector<ZVec> multifactor_hensel(const ZVec& f, std::vector<ZVec> factors,
                                     const BigInt& p, const BigInt& target) {
  if (factors.size() == 1) {
    return {zmod(f, target)};
  }
  std::size_t mid = factors.size() / 2;
  ZVec g{1}, h{1};
  for (std::size_t i = 0; i < mid; ++i) g = zmulmod(g, factors[i], p);
  for (std::size_t i = mid; i < factors.size(); ++i) h = zmulmod(h, factors[i], p);
  HenselPair cur;
  cur.g = g;
  cur.h = h;
  bezout_mod_p(g, h, p, cur.s, cur.t);
  BigInt m = p;
  while (m < target) {
    cur = hensel_step(f, cur, m);
    m = m * m;
  }
  std::vector<ZVec> left(factors.begin(), factors.begin() + mid);
  std::vector<ZVec> right(factors.begin() + mid, factors.end());
  std::vector<ZVec> out = multifactor_hensel(zmod(cur.g, target), std::move(left), p, target);
  std::vector<ZVec> more = multifactor_hensel(zmod(cur.h, target), std::move(right), p, target);
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

// ---------------------------------------------------------------------------
// Zassenhaus for monic squarefree integer polynomials

BigInt isqrt_ceil(const BigInt& n) {
  if (n <= 1) return n;
  BigInt x = n, y = (x + 1) / 2;
  while (y < x) {
    x = y;
    y = (x + n / x) / 2;
  }
  return x + 1;
}

bool zdivides(const ZVec& g, const ZVec& f) {
  // exact division test over ZZ, g monic
  ZVec r = f;
  ZVec q;
  while (zdeg(r) >= zdeg(g) && !r.empty()) {
    int shift = zdeg(r) - zdeg(g);
    BigInt c = r.back();  // g monic
    for (std::size_t i = 0; i < g.size(); ++i) {
      r[shift + i] -= c * g[i];
    }
    znormalize(r);
  }
  return r.empty();
}

ZVec zexact_div(const ZVec& f, const ZVec& g) {
  // g monic, known to divide
  ZVec r = f;
  ZVec q(f.size() - g.size() + 1, BigInt(0));
  while (zdeg(r) >= zdeg(g) && !r.empty()) {
    int shift = zdeg(r) - zdeg(g);
    BigInt c = r.back();
    q[shift] = c;
    for (std::size_t i = 0; i < g.size(); ++i) {
      r[shift + i] -= c * g[i];
    }
    znormalize(r);
  }
  if (!r.empty()) throw validation_error("zexact_div: not divisible");
  znormalize(q);
  return q;
}

// monic squarefree integer polynomial -> monic irreducible integer factors
std::vector<ZVec> zassenhaus_monic(const ZVec& f, std::mt19937_64& rng) {
  int n = zdeg(f);
  if (n <= 1) return {f};
  // pick an odd prime with squarefree reduction
  BigInt p = 0;
  for (std::int64_t cand = 3;; cand += 2) {
    if (!is_prime(cand)) continue;
    BigInt pc(cand);
    ZVec fp = zmod(f, pc);
    if (zdeg(fp) != n) continue;  // monic, cannot happen, kept for safety
    ZVec g = zgcd_mod(fp, zderiv(fp), pc);
    if (zdeg(g) == 0) {
      p = pc;
      break;
    }
  }
  ZVec fp = zmod(f, p);
  std::vector<ZVec> modular = factor_squarefree_mod_p(fp, p, rng);
  if (modular.size() == 1) return {f};
  // Mignotte-style bound on coefficients of monic factors
  BigInt norm2_sq = 0;
  for (const auto& c : f) norm2_sq += c * c;
  BigInt bound = (BigInt(1) << n) * isqrt_ceil(norm2_sq);
  BigInt target = p;
  while (target <= 2 * bound) target *= target;
  std::vector<ZVec> lifted = multifactor_hensel(zmod(f, target), modular, p, target);

  std::vector<ZVec> result;
  ZVec remaining = f;
  std::vector<bool> used(lifted.size(), false);
  std::size_t active = lifted.size();
  for (std::size_t take = 1; take <= active / 2;) {
    // iterate subsets of size `take` over the unused lifted factors
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < lifted.size(); ++i) {
      if (!used[i]) idx.push_back(i);
    }
    if (take > idx.size() / 2) break;
    std::vector<std::size_t> pick(take);
    for (std::size_t i = 0; i < take; ++i) pick[i] = i;
    bool found = false;
    while (true) {
      ZVec cand{1};
      for (std::size_t i : pick) cand = zmulmod(cand, lifted[idx[i]], target);
      cand = zsym(cand, target);
      if (zdivides(cand, remaining)) {
        result.push_back(cand);
        remaining = zexact_div(remaining, cand);
        for (std::size_t i : pick) used[idx[i]] = true;
        active -= take;
        found = true;
        break;
      }
      // next combination
      int pos = static_cast<int>(take) - 1;
      while (pos >= 0 && pick[pos] == idx.size() - take + pos) --pos;
      if (pos < 0) break;
      ++pick[pos];
      for (std::size_t i = pos + 1; i < take; ++i) pick[i] = pick[i - 1] + 1;
    }
    if (!found) ++take;
  }
  if (zdeg(remaining) > 0) result.push_back(remaining);
  return result;
}

// ---------------------------------------------------------------------------
// conversions

void require_factorable(const Poly& f, const char* what) {
  if (f.is_zero()) throw validation_error(std::string(what) + ": zero input");
  if (!is_univariate_poly(f)) {
    throw validation_error(std::string(what) +
                           ": requires one non-Laurent variable, got " +
                           f.ring().describe());
  }
}

ZVec poly_to_dense_fp(const Poly& f) {
  int n = f.degree_in(0).value_or(-1);
  ZVec v(n + 1, BigInt(0));
  for (const auto& [m, c] : f.terms()) v[m[0]] = BigInt(c.residue());
  return v;
}

Poly dense_to_poly_fp(const PolyRing& ring, const ZVec& v) {
  Poly p(ring);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) {
      p.add_term(Mono{static_cast<std::int32_t>(i)},
                 Scalar::from_big(ring.field, v[i]));
    }
  }
  return p;
}

// monic rational poly -> primitive integer poly with positive lead
ZVec poly_to_primitive_int(const Poly& f) {
  BigInt den_lcm = 1;
  int n = f.degree_in(0).value();
  std::vector<BigRat> cs(n + 1, BigRat(0));
  for (const auto& [m, c] : f.terms()) cs[m[0]] = c.rat();
  for (const auto& q : cs) {
    BigInt d = denominator(q);
    den_lcm = den_lcm / gcd(den_lcm, d) * d;
  }
  ZVec v(n + 1);
  BigInt content = 0;
  for (int i = 0; i <= n; ++i) {
    v[i] = numerator(cs[i] * BigRat(den_lcm));
    content = gcd(content, v[i]);
  }
  if (content != 0) {
    for (auto& c : v) c /= content;
  }
  if (v.back() < 0) {
    for (auto& c : v) c = -c;
  }
  return v;
}

bool scalar_less(const Scalar& a, const Scalar& b) {
  if (a.field().kind == FieldDesc::Kind::PrimeField) {
    return a.residue() < b.residue();
  }
  return a.rat() < b.rat();
}

}  // namespace

bool poly_canonical_less(const Poly& a, const Poly& b) {
  auto da = a.total_degree().value_or(-1);
  auto db = b.total_degree().value_or(-1);
  if (da != db) return da < db;
  auto ia = a.terms().rbegin(), ib = b.terms().rbegin();
  GradedLexLess lt;
  for (; ia != a.terms().rend() && ib != b.terms().rend(); ++ia, ++ib) {
    if (lt(ia->first, ib->first)) return true;
    if (lt(ib->first, ia->first)) return false;
    if (!(ia->second == ib->second)) return scalar_less(ia->second, ib->second);
  }
  return ia == a.terms().rend() && ib != b.terms().rend();
}

std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& f) {
  require_factorable(f, "squarefree_decomposition");
  const FieldDesc& field = f.ring().field;
  std::vector<std::pair<Poly, int>> out;
  Poly g = poly_monic(f);
  if (g.degree_in(0).value() == 0) return out;

  if (field.characteristic() == 0) {
    // Yun
    Poly d = g.derivative(0);
    Poly a = poly_gcd(g, d);
    Poly c = poly_exact_div(g, a);
    Poly w = poly_exact_div(d, a) - c.derivative(0);
    int i = 1;
    while (!(c.is_constant())) {
      Poly part = poly_gcd(c, w);
      if (part.degree_in(0).value_or(0) > 0) out.emplace_back(part, i);
      c = poly_exact_div(c, part);
      w = poly_exact_div(w, part) - c.derivative(0);
      ++i;
    }
    return out;
  }

  // char p with recursion on p-th powers
  std::int64_t p = field.characteristic();
  struct Rec {
    std::int64_t p;
    std::vector<std::pair<Poly, int>>* out;
    void run(Poly f, int multiplier) {
      Poly d = f.derivative(0);
      if (d.is_zero()) {
        run(pth_root(f), multiplier * static_cast<int>(p));
        return;
      }
      Poly c = poly_gcd(f, d);
      Poly w = poly_exact_div(f, c);
      int i = 1;
      while (!w.is_constant()) {
        Poly y = poly_gcd(w, c);
        Poly z = poly_exact_div(w, y);
        if (z.degree_in(0).value_or(0) > 0) out->emplace_back(z, multiplier * i);
        w = y;
        c = poly_exact_div(c, y);
        ++i;
      }
      if (!c.is_constant()) run(pth_root(c), multiplier * static_cast<int>(p));
    }
    Poly pth_root(const Poly& f) const {
      Poly r(f.ring());
      for (const auto& [m, cf] : f.terms()) {
        if (m[0] % p != 0) {
          throw validation_error("pth_root: exponent not divisible by p");
        }
        r.add_term(Mono{static_cast<std::int32_t>(m[0] / p)}, cf);
      }
      return r;
    }
  };
  Rec rec{p, &out};
  rec.run(g, 1);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.second != y.second) return x.second < y.second;
    return poly_canonical_less(x.first, y.first);
  });
  return out;
}

Poly squarefree_part(const Poly& f) {
  require_factorable(f, "squarefree_part");
  Poly g = poly_monic(f);
  if (g.degree_in(0).value() == 0) return Poly::one(f.ring());
  auto parts = squarefree_decomposition(f);
  Poly acc = Poly::one(f.ring());
  for (const auto& [part, mult] : parts) {
    (void)mult;
    acc *= part;
  }
  return acc;
}

Factorization factor_univariate(const Poly& f, std::uint64_t seed) {
  require_factorable(f, "factor_univariate");
  const PolyRing& ring = f.ring();
  const FieldDesc& field = ring.field;
  Factorization out{f.leading_coeff(), {}};
  if (f.degree_in(0).value() == 0) return out;

  std::mt19937_64 rng(seed);
  std::map<int, std::vector<Poly>> by_mult;

  if (field.characteristic() == 0) {
    for (const auto& [part, mult] : squarefree_decomposition(f)) {
      ZVec fz = poly_to_primitive_int(part);
      // monicize: F(x) = a^(n-1) fz(x/a) stays integral with F monic
      BigInt a = fz.back();
      int n = zdeg(fz);
      ZVec big(n + 1, BigInt(0));
      for (int i = 0; i < n; ++i) {
        BigInt scale = 1;
        for (int k = 0; k < n - 1 - i; ++k) scale *= a;
        big[i] = fz[i] * scale;
      }
      big[n] = 1;
      for (const ZVec& gi : zassenhaus_monic(big, rng)) {
        // map back: y -> a*y, then make monic over QQ
        int m = zdeg(gi);
        Poly factor(ring);
        for (int j = 0; j <= m; ++j) {
          if (gi[j] == 0) continue;
          BigRat coeff(gi[j]);
          int e = j - m;  // multiply by a^(j-m)
          if (e >= 0) {
            for (int k = 0; k < e; ++k) coeff *= BigRat(a);
          } else {
            for (int k = 0; k < -e; ++k) coeff /= BigRat(a);
          }
          factor.add_term(Mono{j}, Scalar::from_rational(field, coeff));
        }
        by_mult[mult].push_back(poly_monic(factor));
      }
    }
  } else {
    BigInt p(field.characteristic());
    for (const auto& [part, mult] : squarefree_decomposition(f)) {
      ZVec fz = poly_to_dense_fp(part);
      for (const ZVec& gi : factor_squarefree_mod_p(fz, p, rng)) {
        by_mult[mult].push_back(dense_to_poly_fp(ring, gi));
      }
    }
  }

  for (auto& [mult, polys] : by_mult) {
    std::sort(polys.begin(), polys.end(), poly_canonical_less);
    for (const auto& g : polys) out.factors.emplace_back(g, mult);
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& x, const auto& y) {
              if (!(x.first == y.first)) return poly_canonical_less(x.first, y.first);
              return x.second < y.second;
            });

  // contract check: unit * prod factors^mult == f
  Poly check = Poly::constant(ring, out.unit);
  for (const auto& [g, m] : out.factors) check *= g.pow(m);
  if (!(check == f)) {
    throw validation_error("factor_univariate: internal re-multiplication check failed");
  }
  return out;
}

std::vector<std::pair<Scalar, int>> poly_roots(const Poly& f, std::uint64_t seed) {
  Factorization fac = factor_univariate(f, seed);
  std::vector<std::pair<Scalar, int>> roots;
  for (const auto& [g, mult] : fac.factors) {
    if (g.degree_in(0).value() != 1) continue;
    Scalar c0 = g.coeff(Mono{0});
    roots.emplace_back(-c0, mult);
  }
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
    return scalar_less(a.first, b.first);
  });
  return roots;
}

}  // namespace ringlab
