#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "ringlab/field.hpp"

namespace ringlab {

/// Finite quiver. Parallel arrows and loops allowed; labels are unique
/// across vertices and arrows separately.
struct Quiver {
  struct Arrow {
    std::string label;
    int src = 0;
    int dst = 0;
    bool operator==(const Arrow&) const = default;
  };

  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;

  int vertex_index(const std::string& label) const;
  int arrow_index(const std::string& label) const;
  void validate() const;  // label uniqueness, endpoint existence

  /// Connected components of the underlying undirected graph, each a sorted
  /// vertex list.
  std::vector<std::vector<int>> components() const;

  bool operator==(const Quiver&) const = default;
};

/// A path: either the trivial path e_v (no arrows) or a composable arrow
/// sequence read left to right.
struct QPath {
  int base = 0;                 // source vertex
  std::vector<int> arrows;      // arrow indices, composable end to end

  int source() const { return base; }
  int target(const Quiver& q) const {
    return arrows.empty() ? base : q.arrows[arrows.back()].dst;
  }
  int degree() const { return static_cast<int>(arrows.size()); }
  auto operator<=>(const QPath&) const = default;
};

/// k-linear combination of paths of one quiver.
class PathElement {
 public:
  PathElement(std::shared_ptr<const Quiver> q, FieldDesc field)
      : quiver_(std::move(q)), field_(field) {}

  static PathElement vertex(std::shared_ptr<const Quiver> q, const FieldDesc& f,
                            int v);
  static PathElement arrow(std::shared_ptr<const Quiver> q, const FieldDesc& f,
                           int a);
  static PathElement identity(std::shared_ptr<const Quiver> q, const FieldDesc& f);

  const Quiver& quiver() const { return *quiver_; }
  std::shared_ptr<const Quiver> quiver_ptr() const { return quiver_; }
  const FieldDesc& field() const { return field_; }
  const std::map<QPath, Scalar>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  void add_term(const QPath& p, const Scalar& c);

  PathElement operator+(const PathElement& o) const;
  PathElement operator-(const PathElement& o) const;
  PathElement operator*(const PathElement& o) const;  // path concatenation
  PathElement scaled(const Scalar& c) const;
  PathElement operator-() const;
  bool operator==(const PathElement& o) const;

  std::string str() const;

 private:
  std::shared_ptr<const Quiver> quiver_;
  FieldDesc field_;
  std::map<QPath, Scalar> terms_;

  void check_compatible(const PathElement& o) const;
};

// ---------------------------------------------------------------------------
// shape and growth

struct ShapeReport {
  enum class Kind { NoArrowComponent, LoopC1, CycleCn, Other };
  struct Component {
    Kind kind;
    int cycle_length = 0;          // for CycleCn
    std::vector<int> vertices;
  };
  std::vector<Component> components;
  bool connected = false;
};

ShapeReport detect_shape(const Quiver& q);

/// Number of paths of length exactly d (adjacency-matrix power).
BigInt path_count(const Quiver& q, int d);

struct GrowthReport {
  enum class Kind { FiniteDimensional, Polynomial, Exponential };
  Kind kind;
  int degree = 0;        // for Polynomial: growth degree of the cumulative dimension
  bool empirical = false;
  std::string method;    // "acyclic" | "shared-cycle" | "difference-fit" | "structural"
};

/// Exact graph tests decide the finite-dimensional and exponential cases;
/// otherwise the polynomial degree is fitted from exact path counts by
/// successive-difference stabilization (flagged empirical), cross-checked
/// against the cycle-chain structure of the condensation.
GrowthReport growth_class(const Quiver& q, int probe_depth);

// ---------------------------------------------------------------------------
// centers

/// All paths of length exactly d. Throws when the count exceeds `cap`.
std::vector<QPath> enumerate_paths(const Quiver& q, int d,
                                   std::size_t cap = 2'000'000);

/// The central element w of kC_n: the sum of the n based cycles of length n.
/// Centrality is verified against every arrow and vertex idempotent before
/// returning.
PathElement central_cycle(std::shared_ptr<const Quiver> q, const FieldDesc& f);

/// Basis of the degree-d component of Z(kQ), echelonized; solves [z,a] = 0
/// for all arrows and [z,e_i] = 0 on the degree-d path span.
std::vector<PathElement> center_basis_degree(std::shared_ptr<const Quiver> q,
                                             const FieldDesc& f, int d);

/// Bases for all degrees <= D.
std::vector<std::vector<PathElement>> center_bruteforce(
    std::shared_ptr<const Quiver> q, const FieldDesc& f, int D);

/// Closed-form center per connected component ("k", "k[x]", "k[w]"),
/// combined as a direct product across components.
struct CenterClosedForm {
  struct Component {
    std::string description;  // "k" | "k[x]" | "k[w]"
    int cycle_length = 0;     // n for "k[w]" (=1 for "k[x]")
    std::vector<int> vertices;
  };
  std::vector<Component> components;
  std::string product() const;  // e.g. "k[w] x k"
  /// Predicted dimension of the degree-d component of the center.
  int predicted_dimension(int d) const;
};

CenterClosedForm center_closed_form(const Quiver& q);

// quiver text format: `vertex v`, `arrow a: v -> w`, `#` comments
Quiver parse_quiver(const std::string& text);
std::string quiver_to_text(const Quiver& q);

}  // namespace ringlab
