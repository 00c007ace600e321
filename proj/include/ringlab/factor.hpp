#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ringlab/poly.hpp"

namespace ringlab {

inline constexpr std::uint64_t kDefaultSeed = 12345;

/// f = unit * prod factors[i].first ^ factors[i].second, factors monic
/// irreducible, canonically ordered.
struct Factorization {
  Scalar unit;
  std::vector<std::pair<Poly, int>> factors;
};

/// Univariate factorization over QQ (lift-and-recombine through a prime
/// modulus) or GF(p) (distinct-degree then randomized equal-degree
/// splitting, seeded).
Factorization factor_univariate(const Poly& f, std::uint64_t seed = kDefaultSeed);

/// Squarefree decomposition f = unit * prod parts[i].first ^ parts[i].second
/// with the parts monic, squarefree and pairwise coprime. Handles the
/// char-p inseparable case by recursing on p-th-power parts.
std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& f);

/// Monic generator of the radical of (f).
Poly squarefree_part(const Poly& f);

/// Distinct roots of f in the base field, with multiplicities, canonically
/// ordered.
std::vector<std::pair<Scalar, int>> poly_roots(const Poly& f,
                                               std::uint64_t seed = kDefaultSeed);

/// Canonical (deterministic) order on polynomials of one ring; used to sort
/// factor lists and report output stably.
bool poly_canonical_less(const Poly& a, const Poly& b);

}  // namespace ringlab
