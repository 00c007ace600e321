#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ringlab/linalg.hpp"
#include "ringlab/quiver.hpp"

using namespace ringlab;

namespace {

const FieldDesc QQ = FieldDesc::rationals();

std::shared_ptr<const Quiver> cycle_quiver(int n) {
  Quiver q;
  for (int i = 0; i < n; ++i) q.vertices.push_back("v" + std::to_string(i));
  for (int i = 0; i < n; ++i) {
    q.arrows.push_back({"a" + std::to_string(i), i, (i + 1) % n});
  }
  return std::make_shared<Quiver>(std::move(q));
}

std::shared_ptr<const Quiver> kronecker() {
  Quiver q;
  q.vertices = {"1", "2"};
  q.arrows = {{"a", 0, 1}, {"b", 0, 1}};
  return std::make_shared<Quiver>(std::move(q));
}

std::shared_ptr<const Quiver> loops(int count) {
  Quiver q;
  q.vertices = {"v"};
  for (int i = 0; i < count; ++i) q.arrows.push_back({"l" + std::to_string(i), 0, 0});
  return std::make_shared<Quiver>(std::move(q));
}

// Dense oracle: solve the full commutation system on the degree-d path span
// by plain nullspace computation, ignoring the closed-path reduction.
std::vector<SVec> dense_center_degree(const Quiver& q, int d) {
  auto paths = enumerate_paths(q, d, 100000);
  std::map<QPath, int> idx;
  for (std::size_t i = 0; i < paths.size(); ++i) idx[paths[i]] = static_cast<int>(i);
  std::vector<SVec> rows;
  // vertex idempotents: [z, e_i] = 0
  for (std::size_t v = 0; v < q.vertices.size(); ++v) {
    for (std::size_t p = 0; p < paths.size(); ++p) {
      int delta = (paths[p].target(q) == static_cast<int>(v) ? 1 : 0) -
                  (paths[p].source() == static_cast<int>(v) ? 1 : 0);
      if (delta == 0) continue;
      SVec row(paths.size(), Scalar::zero(QQ));
      row[p] = Scalar::from_int(QQ, delta);
      rows.push_back(std::move(row));
    }
  }
  // arrows: [z, a] = 0, rows indexed by degree-(d+1) paths
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    std::map<QPath, SVec> sys;
    for (std::size_t p = 0; p < paths.size(); ++p) {
      if (paths[p].target(q) == q.arrows[a].src) {
        QPath joined = paths[p];
        joined.arrows.push_back(static_cast<int>(a));
        auto [it, fresh] = sys.try_emplace(joined, SVec(paths.size(), Scalar::zero(QQ)));
        it->second[p] += Scalar::from_int(QQ, 1);
      }
      if (q.arrows[a].dst == paths[p].source()) {
        QPath joined{q.arrows[a].src, {static_cast<int>(a)}};
        joined.arrows.insert(joined.arrows.end(), paths[p].arrows.begin(),
                             paths[p].arrows.end());
        auto [it, fresh] = sys.try_emplace(joined, SVec(paths.size(), Scalar::zero(QQ)));
        it->second[p] -= Scalar::from_int(QQ, 1);
      }
    }
    for (auto& [path, row] : sys) rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    std::vector<SVec> all;
    for (std::size_t i = 0; i < paths.size(); ++i) {
      SVec v(paths.size(), Scalar::zero(QQ));
      v[i] = Scalar::one(QQ);
      all.push_back(v);
    }
    return all;
  }
  return smat_nullspace(rows, QQ, paths.size());
}

SVec element_to_vec(const PathElement& e, const std::vector<QPath>& paths) {
  std::map<QPath, int> idx;
  for (std::size_t i = 0; i < paths.size(); ++i) idx[paths[i]] = static_cast<int>(i);
  SVec v(paths.size(), Scalar::zero(QQ));
  for (const auto& [p, c] : e.terms()) v[idx.at(p)] = c;
  return v;
}

Quiver random_quiver(std::mt19937_64& rng, int max_v, int max_a) {
  Quiver q;
  int nv = 1 + static_cast<int>(rng() % max_v);
  for (int i = 0; i < nv; ++i) q.vertices.push_back("v" + std::to_string(i));
  int na = static_cast<int>(rng() % (max_a + 1));
  for (int i = 0; i < na; ++i) {
    int s = static_cast<int>(rng() % nv);
    int t = static_cast<int>(rng() % nv);
    q.arrows.push_back({"a" + std::to_string(i), s, t});
  }
  return q;
}

}  // namespace

TEST_CASE("quiver text format round trip and errors") {
  std::string text =
      "# a two-cycle\n"
      "vertex v0\n"
      "vertex v1\n"
      "arrow a0: v0 -> v1\n"
      "arrow a1: v1 -> v0\n";
  Quiver q = parse_quiver(text);
  CHECK(q.vertices.size() == 2);
  CHECK(q.arrows.size() == 2);
  CHECK(parse_quiver(quiver_to_text(q)) == q);

  CHECK_THROWS_WITH_AS(parse_quiver("vertex v\nvertex v\n"),
                       "line 2: duplicate vertex label 'v'", parse_error);
  CHECK_THROWS_WITH_AS(parse_quiver("vertex v\narrow a v -> v\n"),
                       "line 2: expected ':' in arrow declaration", parse_error);
  CHECK_THROWS_WITH_AS(parse_quiver("arrow a: u -> w\n"),
                       "line 1: unknown source vertex 'u'", parse_error);
}

TEST_CASE("detect_shape classifies the fixtures") {
  Quiver lone;
  lone.vertices = {"v"};
  auto r1 = detect_shape(lone);
  CHECK(r1.components.size() == 1);
  CHECK(r1.components[0].kind == ShapeReport::Kind::NoArrowComponent);

  auto r2 = detect_shape(*cycle_quiver(3));
  CHECK(r2.components[0].kind == ShapeReport::Kind::CycleCn);
  CHECK(r2.components[0].cycle_length == 3);

  auto r3 = detect_shape(*kronecker());
  CHECK(r3.components[0].kind == ShapeReport::Kind::Other);

  auto r4 = detect_shape(*loops(1));
  CHECK(r4.components[0].kind == ShapeReport::Kind::LoopC1);

  auto r5 = detect_shape(*loops(2));
  CHECK(r5.components[0].kind == ShapeReport::Kind::Other);
}

TEST_CASE("path_count") {
  // each C_3 vertex starts exactly one path of any length
  auto c3 = cycle_quiver(3);
  for (int d = 0; d <= 7; ++d) CHECK(path_count(*c3, d) == 3);
  // enumeration oracle agrees
  for (int d = 0; d <= 7; ++d) {
    CHECK(path_count(*c3, d) == BigInt(enumerate_paths(*c3, d).size()));
  }

  CHECK(path_count(*kronecker(), 2) == 0);
  CHECK(path_count(*loops(2), 4) == 16);

  // C_n path counts stay n through degree 20 for n <= 8
  for (int n = 2; n <= 8; ++n) {
    auto cn = cycle_quiver(n);
    for (int d = 0; d <= 20; ++d) CHECK(path_count(*cn, d) == n);
  }
}

TEST_CASE("growth classification") {
  Quiver a3;  // acyclic A_3
  a3.vertices = {"1", "2", "3"};
  a3.arrows = {{"a", 0, 1}, {"b", 1, 2}};
  CHECK(growth_class(a3, 10).kind == GrowthReport::Kind::FiniteDimensional);

  auto g = growth_class(*cycle_quiver(4), 12);
  CHECK(g.kind == GrowthReport::Kind::Polynomial);
  CHECK(g.degree == 1);
  CHECK(g.empirical);

  CHECK(growth_class(*loops(2), 10).kind == GrowthReport::Kind::Exponential);

  // two cycles joined by a bridge: quadratic cumulative growth
  Quiver chain;
  chain.vertices = {"1", "2", "3", "4"};
  chain.arrows = {{"a", 0, 1}, {"b", 1, 0}, {"c", 1, 2}, {"d", 2, 3}, {"e", 3, 2}};
  auto g2 = growth_class(chain, 24);
  CHECK(g2.kind == GrowthReport::Kind::Polynomial);
  CHECK(g2.degree == 2);
}

TEST_CASE("path multiplication") {
  auto c2 = cycle_quiver(2);
  auto e0 = PathElement::vertex(c2, QQ, 0);
  auto e1 = PathElement::vertex(c2, QQ, 1);
  auto a0 = PathElement::arrow(c2, QQ, 0);
  auto a1 = PathElement::arrow(c2, QQ, 1);

  CHECK(e0 * e0 == e0);
  CHECK((e0 * e1).is_zero());
  auto prod = a0 * a1;
  CHECK(prod.terms().size() == 1);
  CHECK(prod.terms().begin()->first == QPath{0, {0, 1}});
  CHECK((a1 * a0).terms().begin()->first == QPath{1, {1, 0}});

  auto one = PathElement::identity(c2, QQ);
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 20; ++rep) {
    PathElement x(c2, QQ);
    for (const auto& p : enumerate_paths(*c2, static_cast<int>(rng() % 4))) {
      x.add_term(p, Scalar::from_int(QQ, static_cast<std::int64_t>(rng() % 7) - 3));
    }
    CHECK(one * x == x);
    CHECK(x * one == x);
  }
}

TEST_CASE("associativity of path products on random triples") {
  std::mt19937_64 rng(15);
  auto q = kronecker();
  auto c3 = cycle_quiver(3);
  for (auto& quiv : {q, c3}) {
    for (int rep = 0; rep < 15; ++rep) {
      auto rand_elem = [&]() {
        PathElement x(quiv, QQ);
        for (int deg = 0; deg <= 2; ++deg) {
          for (const auto& p : enumerate_paths(*quiv, deg)) {
            if (rng() % 3 == 0) {
              x.add_term(p, Scalar::from_int(QQ, static_cast<std::int64_t>(rng() % 5) - 2));
            }
          }
        }
        return x;
      };
      PathElement a = rand_elem(), b = rand_elem(), c = rand_elem();
      CHECK((a * b) * c == a * (b * c));
    }
  }
}

TEST_CASE("central cycle of C_n") {
  auto c2 = cycle_quiver(2);
  auto w = central_cycle(c2, QQ);
  // a0a1 + a1a0
  CHECK(w.terms().size() == 2);
  CHECK(w.terms().count(QPath{0, {0, 1}}) == 1);
  CHECK(w.terms().count(QPath{1, {1, 0}}) == 1);
  auto a0 = PathElement::arrow(c2, QQ, 0);
  CHECK(a0 * w == w * a0);

  for (int n = 2; n <= 8; ++n) {
    auto cn = cycle_quiver(n);
    auto wn = central_cycle(cn, QQ);  // throws if centrality fails
    for (std::size_t a = 0; a < cn->arrows.size(); ++a) {
      auto pa = PathElement::arrow(cn, QQ, static_cast<int>(a));
      CHECK(pa * wn == wn * pa);
    }
    // w*w is the degree-2n central element
    auto w2 = wn * wn;
    auto basis2n = center_basis_degree(cn, QQ, 2 * n);
    REQUIRE(basis2n.size() == 1);
    CHECK(w2 == basis2n[0]);
  }

  CHECK_THROWS_AS(central_cycle(kronecker(), QQ), validation_error);
}

TEST_CASE("center brute force on the named fixtures") {
  // Kronecker: only degree 0 contributes, spanned by e1+e2
  auto kq = kronecker();
  auto kc = center_bruteforce(kq, QQ, 3);
  CHECK(kc[0].size() == 1);
  CHECK(kc[0][0] == PathElement::identity(kq, QQ));
  CHECK(kc[1].empty());
  CHECK(kc[2].empty());
  CHECK(kc[3].empty());

  // C_2 to degree 4: dimensions 1,0,1,0,1
  auto c2 = cycle_quiver(2);
  auto cc = center_bruteforce(c2, QQ, 4);
  std::vector<std::size_t> dims;
  for (const auto& b : cc) dims.push_back(b.size());
  CHECK(dims == std::vector<std::size_t>{1, 0, 1, 0, 1});
  auto w = central_cycle(c2, QQ);
  CHECK(cc[2][0] == w);
  CHECK(cc[4][0] == w * w);

  // free algebra on two loops: center k
  auto l2 = loops(2);
  auto lc = center_bruteforce(l2, QQ, 3);
  CHECK(lc[0].size() == 1);
  CHECK(lc[1].empty());
  CHECK(lc[2].empty());
  CHECK(lc[3].empty());
}

TEST_CASE("closed form matches Lemma-style case split and products") {
  CHECK(center_closed_form(*cycle_quiver(5)).product() == "k[w]");
  CHECK(center_closed_form(*loops(1)).product() == "k[x]");
  CHECK(center_closed_form(*kronecker()).product() == "k");

  Quiver disjoint;  // C_2 plus an arrowless vertex
  disjoint.vertices = {"v0", "v1", "w"};
  disjoint.arrows = {{"a0", 0, 1}, {"a1", 1, 0}};
  auto cf = center_closed_form(disjoint);
  CHECK(cf.product() == "k[w] x k");
  // verified against brute force to degree 6
  auto ptr = std::make_shared<Quiver>(disjoint);
  auto bf = center_bruteforce(ptr, QQ, 6);
  for (int d = 0; d <= 6; ++d) {
    CHECK(static_cast<int>(bf[d].size()) == cf.predicted_dimension(d));
  }
}

TEST_CASE("union-find solver agrees with the dense nullspace oracle") {
  std::mt19937_64 rng(77);
  int checked = 0;
  for (int rep = 0; rep < 40; ++rep) {
    Quiver q = random_quiver(rng, 4, 5);
    auto ptr = std::make_shared<Quiver>(q);
    for (int d = 0; d <= 3; ++d) {
      auto paths = enumerate_paths(q, d, 100000);
      if (paths.size() > 300) continue;
      auto fast = center_bruteforce(ptr, QQ, d)[d];
      auto dense = dense_center_degree(q, d);
      REQUIRE(fast.size() == dense.size());
      if (!fast.empty()) {
        std::vector<SVec> fast_vecs;
        for (const auto& e : fast) fast_vecs.push_back(element_to_vec(e, paths));
        auto span_a = canonical_span(fast_vecs);
        auto span_b = canonical_span(dense);
        CHECK(span_a == span_b);
      }
      ++checked;
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("closed form agrees with brute force on a randomized corpus") {
  std::mt19937_64 rng(3141);
  int done = 0;
  for (int rep = 0; rep < 60 && done < 25; ++rep) {
    Quiver q = random_quiver(rng, 5, 6);
    if (q.arrows.empty()) continue;
    auto cf = center_closed_form(q);
    auto ptr = std::make_shared<Quiver>(q);
    int bound = 2 * static_cast<int>(q.vertices.size()) + 2;
    bool skip = false;
    for (int d = 0; d <= bound && !skip; ++d) {
      BigInt count = path_count(q, d);
      if (count > 4000) skip = true;
    }
    if (skip) continue;
    auto bf = center_bruteforce(ptr, QQ, bound);
    for (int d = 0; d <= bound; ++d) {
      CHECK(static_cast<int>(bf[d].size()) == cf.predicted_dimension(d));
    }
    ++done;
  }
  CHECK(done >= 20);
}
