#include "ringlab/quiver.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace ringlab {

int Quiver::vertex_index(const std::string& label) const {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] == label) return static_cast<int>(i);
  }
  return -1;
}

int Quiver::arrow_index(const std::string& label) const {
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    if (arrows[i].label == label) return static_cast<int>(i);
  }
  return -1;
}

void Quiver::validate() const {
  std::set<std::string> vs(vertices.begin(), vertices.end());
  if (vs.size() != vertices.size()) {
    throw validation_error("duplicate vertex label");
  }
  std::set<std::string> as;
  for (const auto& a : arrows) {
    if (!as.insert(a.label).second) {
      throw validation_error("duplicate arrow label " + a.label);
    }
    if (a.src < 0 || a.src >= static_cast<int>(vertices.size()) || a.dst < 0 ||
        a.dst >= static_cast<int>(vertices.size())) {
      throw validation_error("arrow " + a.label + " has a missing endpoint");
    }
  }
}

std::vector<std::vector<int>> Quiver::components() const {
  std::vector<int> parent(vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& a : arrows) parent[find(a.src)] = find(a.dst);
  std::map<int, std::vector<int>> buckets;
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    buckets[find(static_cast<int>(v))].push_back(static_cast<int>(v));
  }
  std::vector<std::vector<int>> out;
  for (auto& [root, list] : buckets) out.push_back(std::move(list));
  return out;
}

// ---------------------------------------------------------------------------
// PathElement

PathElement PathElement::vertex(std::shared_ptr<const Quiver> q,
                                const FieldDesc& f, int v) {
  PathElement e(std::move(q), f);
  e.add_term(QPath{v, {}}, Scalar::one(f));
  return e;
}

PathElement PathElement::arrow(std::shared_ptr<const Quiver> q,
                               const FieldDesc& f, int a) {
  PathElement e(q, f);
  e.add_term(QPath{q->arrows[a].src, {a}}, Scalar::one(f));
  return e;
}

PathElement PathElement::identity(std::shared_ptr<const Quiver> q,
                                  const FieldDesc& f) {
  PathElement e(q, f);
  for (std::size_t v = 0; v < q->vertices.size(); ++v) {
    e.add_term(QPath{static_cast<int>(v), {}}, Scalar::one(f));
  }
  return e;
}

void PathElement::add_term(const QPath& p, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(p);
  if (it == terms_.end()) {
    terms_.emplace(p, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void PathElement::check_compatible(const PathElement& o) const {
  if (quiver_.get() != o.quiver_.get() && !(*quiver_ == *o.quiver_)) {
    throw validation_error("path elements over different quivers");
  }
  if (!(field_ == o.field_)) {
    throw validation_error("path elements over different fields");
  }
}

PathElement PathElement::operator+(const PathElement& o) const {
  check_compatible(o);
  PathElement out = *this;
  for (const auto& [p, c] : o.terms_) out.add_term(p, c);
  return out;
}

PathElement PathElement::operator-(const PathElement& o) const {
  check_compatible(o);
  PathElement out = *this;
  for (const auto& [p, c] : o.terms_) out.add_term(p, -c);
  return out;
}

PathElement PathElement::operator-() const {
  PathElement out(quiver_, field_);
  for (const auto& [p, c] : terms_) out.terms_.emplace(p, -c);
  return out;
}

PathElement PathElement::scaled(const Scalar& c) const {
  PathElement out(quiver_, field_);
  if (c.is_zero()) return out;
  for (const auto& [p, v] : terms_) out.terms_.emplace(p, v * c);
  return out;
}

PathElement PathElement::operator*(const PathElement& o) const {
  check_compatible(o);
  PathElement out(quiver_, field_);
  for (const auto& [p, cp] : terms_) {
    int pt = p.target(*quiver_);
    for (const auto& [r, cr] : o.terms_) {
      if (r.source() != pt) continue;  // non-composable concatenations vanish
      QPath joined = p;
      joined.arrows.insert(joined.arrows.end(), r.arrows.begin(), r.arrows.end());
      out.add_term(joined, cp * cr);
    }
  }
  return out;
}

bool PathElement::operator==(const PathElement& o) const {
  return (*quiver_ == *o.quiver_) && field_ == o.field_ && terms_ == o.terms_;
}

std::string PathElement::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    if (!c.is_one()) os << c.str() << "*";
    if (p.arrows.empty()) {
      os << "e(" << quiver_->vertices[p.base] << ")";
    } else {
      for (std::size_t i = 0; i < p.arrows.size(); ++i) {
        if (i) os << "*";
        os << quiver_->arrows[p.arrows[i]].label;
      }
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// shape detection

ShapeReport detect_shape(const Quiver& q) {
  q.validate();
  ShapeReport report;
  auto comps = q.components();
  report.connected = comps.size() <= 1;
  for (auto& verts : comps) {
    ShapeReport::Component c;
    c.vertices = verts;
    std::set<int> inside(verts.begin(), verts.end());
    std::vector<int> arrows_here;
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
      if (inside.count(q.arrows[a].src)) arrows_here.push_back(static_cast<int>(a));
    }
    if (arrows_here.empty()) {
      c.kind = ShapeReport::Kind::NoArrowComponent;
      report.components.push_back(std::move(c));
      continue;
    }
    if (verts.size() == 1 && arrows_here.size() == 1) {
      c.kind = ShapeReport::Kind::LoopC1;
      c.cycle_length = 1;
      report.components.push_back(std::move(c));
      continue;
    }
    // oriented cycle: every vertex has in-degree 1 and out-degree 1, and the
    // unique out-arrows traverse the whole component
    bool cycle = arrows_here.size() == verts.size();
    std::map<int, int> out_arrow;
    if (cycle) {
      std::map<int, int> indeg, outdeg;
      for (int a : arrows_here) {
        outdeg[q.arrows[a].src]++;
        indeg[q.arrows[a].dst]++;
        out_arrow[q.arrows[a].src] = a;
      }
      for (int v : verts) {
        if (indeg[v] != 1 || outdeg[v] != 1) {
          cycle = false;
          break;
        }
      }
    }
    if (cycle) {
      int start = verts[0], v = start;
      std::size_t steps = 0;
      do {
        v = q.arrows[out_arrow[v]].dst;
        ++steps;
      } while (v != start && steps <= verts.size());
      cycle = (v == start && steps == verts.size());
    }
    if (cycle && verts.size() >= 2) {
      c.kind = ShapeReport::Kind::CycleCn;
      c.cycle_length = static_cast<int>(verts.size());
    } else if (cycle && verts.size() == 1) {
      c.kind = ShapeReport::Kind::LoopC1;
      c.cycle_length = 1;
    } else {
      c.kind = ShapeReport::Kind::Other;
    }
    report.components.push_back(std::move(c));
  }
  return report;
}

// ---------------------------------------------------------------------------
// counting and growth

BigInt path_count(const Quiver& q, int d) {
  if (d < 0) throw validation_error("path_count: negative degree");
  std::size_t n = q.vertices.size();
  std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n, BigInt(0)));
  for (const auto& a : q.arrows) m[a.src][a.dst] += 1;
  // row vector of ones times A^d summed
  std::vector<BigInt> v(n, BigInt(1));
  for (int step = 0; step < d; ++step) {
    std::vector<BigInt> nv(n, BigInt(0));
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (m[i][j] != 0) nv[j] += v[i] * m[i][j];
      }
    }
    v = std::move(nv);
  }
  BigInt total = 0;
  for (const auto& x : v) total += x;
  return total;
}

namespace {

// Tarjan strongly connected components.
std::vector<std::vector<int>> strong_components(const Quiver& q) {
  int n = static_cast<int>(q.vertices.size());
  std::vector<std::vector<int>> adj(n);
  for (const auto& a : q.arrows) adj[a.src].push_back(a.dst);
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<bool> on_stack(n, false);
  std::vector<std::vector<int>> sccs;
  int counter = 0;
  std::function<void(int)> strongconnect = [&](int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (int w : adj[v]) {
      if (index[w] < 0) {
        strongconnect(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<int> scc;
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        scc.push_back(w);
      } while (w != v);
      std::sort(scc.begin(), scc.end());
      sccs.push_back(std::move(scc));
    }
  };
  for (int v = 0; v < n; ++v) {
    if (index[v] < 0) strongconnect(v);
  }
  return sccs;
}

}  // namespace

GrowthReport growth_class(const Quiver& q, int probe_depth) {
  q.validate();
  if (probe_depth < 2 * static_cast<int>(q.vertices.size())) {
    throw validation_error("growth_class: probe_depth below 2*|vertices|");
  }
  auto sccs = strong_components(q);
  std::vector<int> scc_of(q.vertices.size());
  for (std::size_t i = 0; i < sccs.size(); ++i) {
    for (int v : sccs[i]) scc_of[v] = static_cast<int>(i);
  }
  bool has_cycle = false;
  for (const auto& scc : sccs) {
    std::size_t edges = 0;
    for (const auto& a : q.arrows) {
      if (scc_of[a.src] == scc_of[scc[0]] && scc_of[a.dst] == scc_of[scc[0]] &&
          std::binary_search(scc.begin(), scc.end(), a.src)) {
        ++edges;
      }
    }
    bool cyclic = edges >= scc.size() || (scc.size() == 1 && edges >= 1);
    if (scc.size() == 1 && edges == 0) cyclic = false;
    if (cyclic) has_cycle = true;
    if (edges > scc.size()) {
      return {GrowthReport::Kind::Exponential, 0, false, "shared-cycle"};
    }
  }
  if (!has_cycle) {
    return {GrowthReport::Kind::FiniteDimensional, 0, false, "acyclic"};
  }

  // cumulative dimensions s(d) = sum_{i<=d} path_count(i)
  std::vector<BigInt> s(probe_depth + 1);
  BigInt acc = 0;
  for (int d = 0; d <= probe_depth; ++d) {
    acc += path_count(q, d);
    s[d] = acc;
  }
  // successive differences until the observed tail window vanishes
  GrowthReport out{GrowthReport::Kind::Polynomial, 0, true, "difference-fit"};
  std::vector<BigInt> cur = s;
  for (int k = 0; k + 2 <= probe_depth; ++k) {
    std::vector<BigInt> diff(cur.size() - 1);
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) diff[i] = cur[i + 1] - cur[i];
    bool tail_zero = true;
    std::size_t start = diff.size() / 2;
    for (std::size_t i = start; i < diff.size(); ++i) {
      if (diff[i] != 0) {
        tail_zero = false;
        break;
      }
    }
    if (tail_zero) {
      out.degree = k;
      return out;
    }
    cur = std::move(diff);
  }
  // quasi-polynomial counts: fall back to the cycle-chain structure of the
  // condensation (longest path counted by cyclic components)
  std::vector<std::vector<int>> dag(sccs.size());
  std::vector<bool> cyclic(sccs.size(), false);
  for (std::size_t i = 0; i < sccs.size(); ++i) {
    std::size_t edges = 0;
    for (const auto& a : q.arrows) {
      if (scc_of[a.src] == static_cast<int>(i) && scc_of[a.dst] == static_cast<int>(i)) {
        ++edges;
      }
    }
    cyclic[i] = edges > 0;
  }
  for (const auto& a : q.arrows) {
    if (scc_of[a.src] != scc_of[a.dst]) dag[scc_of[a.src]].push_back(scc_of[a.dst]);
  }
  std::vector<int> memo(sccs.size(), -1);
  std::function<int(int)> chain = [&](int i) {
    if (memo[i] >= 0) return memo[i];
    int best = 0;
    for (int j : dag[i]) best = std::max(best, chain(j));
    return memo[i] = best + (cyclic[i] ? 1 : 0);
  };
  int g = 0;
  for (std::size_t i = 0; i < sccs.size(); ++i) g = std::max(g, chain(static_cast<int>(i)));
  out.degree = g;
  out.method = "structural";
  return out;
}

// ---------------------------------------------------------------------------
// centers

std::vector<QPath> enumerate_paths(const Quiver& q, int d, std::size_t cap) {
  std::vector<std::vector<int>> out_arrows(q.vertices.size());
  for (std::size_t a = 0; a < q.arrows.size(); ++a) {
    out_arrows[q.arrows[a].src].push_back(static_cast<int>(a));
  }
  std::vector<QPath> result;
  std::function<void(QPath&, int)> extend = [&](QPath& p, int remaining) {
    if (remaining == 0) {
      if (result.size() >= cap) {
        throw validation_error("enumerate_paths: path count exceeds cap");
      }
      result.push_back(p);
      return;
    }
    int at = p.target(q);
    for (int a : out_arrows[at]) {
      p.arrows.push_back(a);
      extend(p, remaining - 1);
      p.arrows.pop_back();
    }
  };
  for (std::size_t v = 0; v < q.vertices.size(); ++v) {
    QPath p{static_cast<int>(v), {}};
    extend(p, d);
  }
  return result;
}

PathElement central_cycle(std::shared_ptr<const Quiver> q, const FieldDesc& f) {
  ShapeReport shape = detect_shape(*q);
  if (shape.components.size() != 1 ||
      shape.components[0].kind != ShapeReport::Kind::CycleCn) {
    throw validation_error("central_cycle: quiver is not an oriented cycle C_n, n >= 2");
  }
  int n = shape.components[0].cycle_length;
  std::map<int, int> out_arrow;
  for (std::size_t a = 0; a < q->arrows.size(); ++a) {
    out_arrow[q->arrows[a].src] = static_cast<int>(a);
  }
  PathElement w(q, f);
  for (int v = 0; v < n; ++v) {
    QPath p{v, {}};
    int at = v;
    for (int step = 0; step < n; ++step) {
      int a = out_arrow[at];
      p.arrows.push_back(a);
      at = q->arrows[a].dst;
    }
    w.add_term(p, Scalar::one(f));
  }
  // verify centrality before returning
  for (std::size_t a = 0; a < q->arrows.size(); ++a) {
    PathElement pa = PathElement::arrow(q, f, static_cast<int>(a));
    if (!(w * pa == pa * w)) {
      throw validation_error("central_cycle: centrality check failed on arrow " +
                             q->arrows[a].label);
    }
  }
  for (int v = 0; v < n; ++v) {
    PathElement ev = PathElement::vertex(q, f, v);
    if (!(w * ev == ev * w)) {
      throw validation_error("central_cycle: centrality check failed on a vertex");
    }
  }
  return w;
}

std::vector<PathElement> center_basis_degree(std::shared_ptr<const Quiver> q,
                                             const FieldDesc& f, int d) {
  // [z, e_i] = 0 for all i forces z onto closed paths; on that span each
  // commutator [z, a] contributes rows with at most two +-1 entries, so the
  // system reduces to union-find with zero-forcing.
  std::vector<QPath> all = enumerate_paths(*q, d);
  std::vector<QPath> closed;
  for (auto& p : all) {
    if (p.source() == p.target(*q)) closed.push_back(p);
  }
  std::map<QPath, int> index;
  for (std::size_t i = 0; i < closed.size(); ++i) index[closed[i]] = static_cast<int>(i);

  std::vector<int> parent(closed.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<bool> zeroed(closed.size(), false);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) {
      parent[a] = b;
      zeroed[b] = zeroed[b] || zeroed[a];
    }
  };

  for (std::size_t a = 0; a < q->arrows.size(); ++a) {
    const auto& ar = q->arrows[a];
    // q-path of degree d+1 -> (index of closed prefix p with q = p*a,
    //                          index of closed suffix r with q = a*r)
    std::map<QPath, std::pair<int, int>> rows;
    for (std::size_t i = 0; i < closed.size(); ++i) {
      const QPath& p = closed[i];
      if (p.target(*q) == ar.src) {
        QPath joined = p;
        joined.arrows.push_back(static_cast<int>(a));
        auto& row = rows.try_emplace(joined, std::make_pair(-1, -1)).first->second;
        row.first = static_cast<int>(i);
      }
      if (ar.dst == p.source()) {
        QPath joined{ar.src, {static_cast<int>(a)}};
        joined.arrows.insert(joined.arrows.end(), p.arrows.begin(), p.arrows.end());
        auto& row = rows.try_emplace(joined, std::make_pair(-1, -1)).first->second;
        row.second = static_cast<int>(i);
      }
    }
    for (const auto& [path, row] : rows) {
      auto [pre, post] = row;
      if (pre >= 0 && post >= 0) {
        unite(pre, post);
      } else if (pre >= 0) {
        zeroed[find(pre)] = true;
      } else if (post >= 0) {
        zeroed[find(post)] = true;
      }
    }
  }

  std::map<int, PathElement> classes;
  for (std::size_t i = 0; i < closed.size(); ++i) {
    int root = find(static_cast<int>(i));
    if (zeroed[root]) continue;
    auto it = classes.find(root);
    if (it == classes.end()) {
      it = classes.emplace(root, PathElement(q, f)).first;
    }
    it->second.add_term(closed[i], Scalar::one(f));
  }
  std::vector<PathElement> basis;
  for (auto& [root, elem] : classes) basis.push_back(std::move(elem));
  return basis;
}

std::vector<std::vector<PathElement>> center_bruteforce(
    std::shared_ptr<const Quiver> q, const FieldDesc& f, int D) {
  if (D < 0) throw validation_error("center_bruteforce: negative degree bound");
  q->validate();
  std::vector<std::vector<PathElement>> out;
  for (int d = 0; d <= D; ++d) out.push_back(center_basis_degree(q, f, d));
  return out;
}

CenterClosedForm center_closed_form(const Quiver& q) {
  ShapeReport shape = detect_shape(q);
  CenterClosedForm out;
  for (const auto& comp : shape.components) {
    CenterClosedForm::Component c;
    c.vertices = comp.vertices;
    switch (comp.kind) {
      case ShapeReport::Kind::NoArrowComponent:
        c.description = "k";
        break;
      case ShapeReport::Kind::LoopC1:
        c.description = "k[x]";
        c.cycle_length = 1;
        break;
      case ShapeReport::Kind::CycleCn:
        c.description = "k[w]";
        c.cycle_length = comp.cycle_length;
        break;
      case ShapeReport::Kind::Other:
        c.description = "k";
        break;
    }
    out.components.push_back(std::move(c));
  }
  return out;
}

std::string CenterClosedForm::product() const {
  std::string s;
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (i) s += " x ";
    s += components[i].description;
  }
  return s;
}

int CenterClosedForm::predicted_dimension(int d) const {
  int dim = 0;
  for (const auto& c : components) {
    if (c.description == "k") {
      dim += (d == 0) ? 1 : 0;
    } else if (c.description == "k[x]") {
      dim += 1;  // one basis element x^d in every degree
    } else {
      dim += (d % c.cycle_length == 0) ? 1 : 0;  // powers of w
    }
  }
  return dim;
}

// ---------------------------------------------------------------------------
// text format

Quiver parse_quiver(const std::string& text) {
  Quiver q;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw parse_error("line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (word == "vertex") {
      std::string label;
      if (!(ls >> label)) fail("expected vertex label");
      if (q.vertex_index(label) >= 0) fail("duplicate vertex label '" + label + "'");
      q.vertices.push_back(label);
      std::string extra;
      if (ls >> extra) fail("trailing input after vertex declaration");
    } else if (word == "arrow") {
      // arrow a: v1 -> v2
      std::string rest;
      std::getline(ls, rest);
      auto colon = rest.find(':');
      if (colon == std::string::npos) fail("expected ':' in arrow declaration");
      auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t");
        auto e = s.find_last_not_of(" \t");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
      };
      std::string label = trim(rest.substr(0, colon));
      std::string ends = rest.substr(colon + 1);
      auto sep = ends.find("->");
      if (sep == std::string::npos) fail("expected '->' in arrow declaration");
      std::string src = trim(ends.substr(0, sep));
      std::string dst = trim(ends.substr(sep + 2));
      if (label.empty() || src.empty() || dst.empty()) fail("malformed arrow declaration");
      if (q.arrow_index(label) >= 0) fail("duplicate arrow label '" + label + "'");
      int si = q.vertex_index(src);
      int di = q.vertex_index(dst);
      if (si < 0) fail("unknown source vertex '" + src + "'");
      if (di < 0) fail("unknown target vertex '" + dst + "'");
      q.arrows.push_back({label, si, di});
    } else {
      fail("unknown declaration '" + word + "'");
    }
  }
  q.validate();
  return q;
}

std::string quiver_to_text(const Quiver& q) {
  std::ostringstream os;
  for (const auto& v : q.vertices) os << "vertex " << v << "\n";
  for (const auto& a : q.arrows) {
    os << "arrow " << a.label << ": " << q.vertices[a.src] << " -> "
       << q.vertices[a.dst] << "\n";
  }
  return os.str();
}

}  // namespace ringlab
