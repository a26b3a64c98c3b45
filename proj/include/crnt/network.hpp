#pragma once

// Generalized chemical reaction networks: a directed graph whose vertices
// carry a stoichiometric complex and (on sources) a kinetic-order complex,
// together with the structural quantities derived from it.

#include "crnt/polynomial.hpp"
#include "crnt/rational.hpp"
#include "crnt/symbolic_matrix.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace crnt {

using SpeciesIndex = std::size_t;
using VertexId = int;

/// Sparse formal sum of species with nonzero rational coefficients.
class Complex {
 public:
  Complex() = default;
  explicit Complex(std::map<SpeciesIndex, Rational> coefficients);

  const std::map<SpeciesIndex, Rational>& coefficients() const { return coefficients_; }
  Rational coefficient(SpeciesIndex s) const;
  bool is_zero() const { return coefficients_.empty(); }
  RationalVector dense(std::size_t species_count) const;

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend bool operator==(const Complex&, const Complex&) = default;
  friend bool operator<(const Complex& a, const Complex& b) { return a.coefficients_ < b.coefficients_; }

  std::string to_string(const std::vector<std::string>& species) const;

 private:
  std::map<SpeciesIndex, Rational> coefficients_;
};

enum class SymbolRole { RateConstant, PhantomParameter, TauParameter };

struct RateSymbol {
  std::string name;
  SymbolRole role = SymbolRole::RateConstant;
};

class SymbolTable {
 public:
  SymbolId add(const std::string& name, SymbolRole role);
  /// Adds `base`, or `base'`, `base''`, ... if the name is taken.
  SymbolId add_fresh(const std::string& base, SymbolRole role);
  std::optional<SymbolId> find(const std::string& name) const;
  const RateSymbol& operator[](SymbolId id) const { return symbols_.at(id); }
  std::size_t size() const { return symbols_.size(); }
  SymbolNamer namer() const;

 private:
  std::vector<RateSymbol> symbols_;
  std::map<std::string, SymbolId> by_name_;
};

struct Vertex {
  VertexId id = 0;
  Complex stoich;
  std::optional<Complex> kinetic;
};

enum class EdgeKind { Effective, Phantom };

struct Edge {
  VertexId source = 0;
  VertexId target = 0;
  SymbolId label = 0;
  EdgeKind kind = EdgeKind::Effective;
};

/// Thrown when a network violates a structural invariant.
class NetworkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when an analysis refuses its input (e.g. a hypothesis of a theorem fails).
class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Gcrn {
 public:
  Gcrn() = default;
  /// Validates the invariants and derives edge kinds. Vertices are stored
  /// sorted by id.
  Gcrn(std::vector<std::string> species, std::vector<Vertex> vertices, std::vector<Edge> edges,
       SymbolTable symbols);

  const std::vector<std::string>& species() const { return species_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const SymbolTable& symbols() const { return symbols_; }

  std::size_t species_count() const { return species_.size(); }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t index_of(VertexId id) const;
  const Vertex& vertex(VertexId id) const { return vertices_[index_of(id)]; }
  bool has_vertex(VertexId id) const { return index_by_id_.count(id) > 0; }

  /// y injective and kinetic == stoich on every source.
  bool is_classical() const;
  /// Every vertex is the source of some edge.
  bool all_vertices_are_sources() const;
  std::set<VertexId> source_vertices() const;

  /// Y and Y~ as species-by-vertex matrices. Missing kinetic complexes give zero columns.
  RationalMatrix stoichiometric_matrix() const;
  RationalMatrix kinetic_matrix() const;
  /// Vertex-by-edge incidence: column e is e_target - e_source.
  RationalMatrix incidence_matrix() const;

 private:
  std::vector<std::string> species_;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  SymbolTable symbols_;
  std::map<VertexId, std::size_t> index_by_id_;
};

struct EdgePartition {
  std::vector<Edge> effective;
  std::vector<Edge> phantom;
};

EdgePartition partition_edges(const Gcrn& net);

using VertexPartition = std::vector<std::vector<VertexId>>;

struct LinkageStructure {
  VertexPartition linkage_classes;         // sorted by smallest member
  VertexPartition strong_linkage_classes;  // sorted by smallest member
  bool weakly_reversible = false;
};

LinkageStructure linkage_structure(const Gcrn& net);

/// Quotient of a network by equal stoichiometric complexes; phantom edges vanish.
struct CondensedCrn {
  VertexPartition classes;                        // sorted by smallest member
  std::vector<Complex> class_complexes;           // parallel to classes
  std::set<std::pair<std::size_t, std::size_t>> edges;  // class-index pairs

  std::size_t class_of(VertexId v) const;
  /// The condensed network as a classical CRN with vertex ids 1..m'.
  Gcrn as_classical(const std::vector<std::string>& species) const;
};

CondensedCrn condense(const Gcrn& net);

struct StructureReport {
  std::size_t vertex_count = 0;   // m
  std::size_t linkage_count = 0;  // l
  std::size_t stoichiometric_rank = 0;            // s
  std::optional<std::size_t> kinetic_rank;        // s~, only when V = V_s
  std::size_t deficiency = 0;                     // delta
  std::optional<std::size_t> kinetic_deficiency;  // delta~
  std::size_t effective_deficiency = 0;           // delta'
  bool weakly_reversible = false;
  VertexPartition linkage_classes;
  VertexPartition strong_linkage_classes;
};

StructureReport structure_report(const Gcrn& net);

/// dim(ker Y ∩ im I_E), computed as rank(I_E) - rank(Y I_E).
std::size_t deficiency_by_intersection(const RationalMatrix& complexes, const RationalMatrix& incidence);

/// Representative-vertex sets (one vertex per condensed class).
using VertexSet = std::set<VertexId>;

/// Throws std::invalid_argument unless `vstar` holds exactly one vertex of every class.
void validate_section(const CondensedCrn& condensed, const VertexSet& vstar);

bool is_v_star_directed(const Gcrn& net, const VertexSet& vstar);

/// Per class: the vertex with the most incoming effective edges (fewest
/// edges to reroute), lowest id on ties.
VertexSet default_vstar(const Gcrn& net);

struct Redirection {
  Gcrn network;
  /// Rate symbols of the new network that stand for a sum of original rates.
  std::map<SymbolId, Polynomial> substitution;
};

Redirection redirect(const Gcrn& net, const VertexSet& vstar);

/// Laplacian A_k as linear forms in the edge labels: entry (j, i) is the sum of
/// labels of edges i -> j and the diagonal makes every column sum to zero.
PolynomialMatrix laplacian(const Gcrn& net);

/// Right-hand side of the mass-action ODE as a canonical formal sum: for each
/// species, a map from the kinetic exponent vector to its polynomial
/// coefficient in the rate symbols.
class OdeExpression {
 public:
  using ExponentVector = std::vector<Rational>;
  using SpeciesTerms = std::map<ExponentVector, Polynomial>;

  explicit OdeExpression(std::size_t species_count = 0) : rows_(species_count) {}

  void add(SpeciesIndex s, const ExponentVector& exponents, const Polynomial& coefficient);
  const std::vector<SpeciesTerms>& rows() const { return rows_; }
  bool is_zero() const;
  std::set<SymbolId> symbols() const;
  OdeExpression substitute(const std::map<SymbolId, Polynomial>& values) const;

  friend bool operator==(const OdeExpression&, const OdeExpression&) = default;
  friend OdeExpression operator-(const OdeExpression& a, const OdeExpression& b);

  std::string to_string(const std::vector<std::string>& species, const SymbolNamer& name) const;

 private:
  std::vector<SpeciesTerms> rows_;
};

/// Throws NetworkError if a source vertex lacks a kinetic complex.
OdeExpression ode_rhs(const Gcrn& net);

}  // namespace crnt
