#include "crnt/network.hpp"

#include "crnt/linalg.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace crnt {

// ---------------------------------------------------------------- Complex

Complex::Complex(std::map<SpeciesIndex, Rational> coefficients) : coefficients_(std::move(coefficients)) {
  std::erase_if(coefficients_, [](const auto& kv) { return kv.second == 0; });
}

Rational Complex::coefficient(SpeciesIndex s) const {
  auto it = coefficients_.find(s);
  return it == coefficients_.end() ? Rational(0) : it->second;
}

RationalVector Complex::dense(std::size_t species_count) const {
  RationalVector v = RationalVector::Zero(static_cast<Eigen::Index>(species_count));
  for (const auto& [s, c] : coefficients_) v(static_cast<Eigen::Index>(s)) = c;
  return v;
}

Complex& Complex::operator+=(const Complex& o) {
  for (const auto& [s, c] : o.coefficients_) {
    Rational& slot = coefficients_[s];
    slot += c;
    if (slot == 0) coefficients_.erase(s);
  }
  return *this;
}

Complex& Complex::operator-=(const Complex& o) {
  for (const auto& [s, c] : o.coefficients_) {
    Rational& slot = coefficients_[s];
    slot -= c;
    if (slot == 0) coefficients_.erase(s);
  }
  return *this;
}

std::string Complex::to_string(const std::vector<std::string>& species) const {
  if (coefficients_.empty()) return "0";
  std::string out;
  for (const auto& [s, c] : coefficients_) {
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    const Rational a = abs(c);
    if (a != 1) out += crnt::to_string(a) + "*";
    out += species.at(s);
  }
  return out;
}

// ------------------------------------------------------------ SymbolTable

SymbolId SymbolTable::add(const std::string& name, SymbolRole role) {
  if (by_name_.count(name)) throw std::invalid_argument("duplicate rate symbol '" + name + "'");
  const auto id = static_cast<SymbolId>(symbols_.size());
  symbols_.push_back({name, role});
  by_name_.emplace(name, id);
  return id;
}

SymbolId SymbolTable::add_fresh(const std::string& base, SymbolRole role) {
  std::string name = base;
  while (by_name_.count(name)) name += "'";
  return add(name, role);
}

std::optional<SymbolId> SymbolTable::find(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

SymbolNamer SymbolTable::namer() const {
  std::vector<std::string> names;
  names.reserve(symbols_.size());
  for (const auto& s : symbols_) names.push_back(s.name);
  return [names = std::move(names)](SymbolId id) {
    return id < names.size() ? names[id] : default_symbol_name(id);
  };
}

// ------------------------------------------------------------------- Gcrn

Gcrn::Gcrn(std::vector<std::string> species, std::vector<Vertex> vertices, std::vector<Edge> edges,
           SymbolTable symbols)
    : species_(std::move(species)), vertices_(std::move(vertices)), edges_(std::move(edges)),
      symbols_(std::move(symbols)) {
  std::sort(vertices_.begin(), vertices_.end(), [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!index_by_id_.emplace(vertices_[i].id, i).second) {
      throw NetworkError("duplicate vertex id v" + std::to_string(vertices_[i].id));
    }
    auto check_species = [&](const Complex& c) {
      for (const auto& [s, _] : c.coefficients()) {
        if (s >= species_.size()) throw NetworkError("complex references unknown species index");
      }
    };
    check_species(vertices_[i].stoich);
    if (vertices_[i].kinetic) check_species(*vertices_[i].kinetic);
  }
  for (auto& e : edges_) {
    const std::string name = "v" + std::to_string(e.source) + " -> v" + std::to_string(e.target);
    if (!has_vertex(e.source) || !has_vertex(e.target)) throw NetworkError("edge " + name + " references a missing vertex");
    if (e.source == e.target) throw NetworkError("self-loop " + name);
    if (e.label >= symbols_.size()) throw NetworkError("edge " + name + " has an unknown rate symbol");
    const Vertex& s = vertex(e.source);
    if (!s.kinetic) throw NetworkError("source vertex v" + std::to_string(e.source) + " has no kinetic-order complex");
    e.kind = s.stoich == vertex(e.target).stoich ? EdgeKind::Phantom : EdgeKind::Effective;
    if (e.kind == EdgeKind::Effective && symbols_[e.label].role == SymbolRole::PhantomParameter) {
      throw NetworkError("phantom parameter '" + symbols_[e.label].name + "' labels effective edge " + name);
    }
  }
}

std::size_t Gcrn::index_of(VertexId id) const {
  auto it = index_by_id_.find(id);
  if (it == index_by_id_.end()) throw std::out_of_range("no vertex v" + std::to_string(id));
  return it->second;
}

bool Gcrn::is_classical() const {
  std::set<Complex> seen;
  for (const auto& v : vertices_) {
    if (!seen.insert(v.stoich).second) return false;
  }
  for (VertexId id : source_vertices()) {
    const Vertex& v = vertex(id);
    if (!v.kinetic || !(*v.kinetic == v.stoich)) return false;
  }
  return true;
}

std::set<VertexId> Gcrn::source_vertices() const {
  std::set<VertexId> out;
  for (const auto& e : edges_) out.insert(e.source);
  return out;
}

bool Gcrn::all_vertices_are_sources() const { return source_vertices().size() == vertices_.size(); }

RationalMatrix Gcrn::stoichiometric_matrix() const {
  RationalMatrix y(static_cast<Eigen::Index>(species_count()), static_cast<Eigen::Index>(vertex_count()));
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    y.col(static_cast<Eigen::Index>(i)) = vertices_[i].stoich.dense(species_count());
  }
  return y;
}

RationalMatrix Gcrn::kinetic_matrix() const {
  RationalMatrix y = RationalMatrix::Zero(static_cast<Eigen::Index>(species_count()),
                                          static_cast<Eigen::Index>(vertex_count()));
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].kinetic) y.col(static_cast<Eigen::Index>(i)) = vertices_[i].kinetic->dense(species_count());
  }
  return y;
}

RationalMatrix Gcrn::incidence_matrix() const {
  RationalMatrix ie = RationalMatrix::Zero(static_cast<Eigen::Index>(vertex_count()),
                                           static_cast<Eigen::Index>(edges_.size()));
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto c = static_cast<Eigen::Index>(e);
    ie(static_cast<Eigen::Index>(index_of(edges_[e].source)), c) -= 1;
    ie(static_cast<Eigen::Index>(index_of(edges_[e].target)), c) += 1;
  }
  return ie;
}

// -------------------------------------------------------------- structure

EdgePartition partition_edges(const Gcrn& net) {
  EdgePartition out;
  for (const auto& e : net.edges()) {
    (e.kind == EdgeKind::Effective ? out.effective : out.phantom).push_back(e);
  }
  return out;
}

namespace {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
  std::vector<std::size_t> parent;
};

VertexPartition sorted_partition(std::map<std::size_t, std::vector<VertexId>> groups) {
  VertexPartition out;
  for (auto& [_, members] : groups) {
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

// Tarjan's algorithm over vertex indices; returns a component label per index.
std::vector<std::size_t> strong_components(std::size_t n, const std::vector<std::vector<std::size_t>>& adj) {
  std::vector<std::size_t> label(n, 0), low(n, 0), order(n, 0);
  std::vector<bool> visited(n, false), on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0, components = 0;

  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    visited[v] = true;
    order[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : adj[v]) {
      if (!visited[w]) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], order[w]);
      }
    }
    if (low[v] == order[v]) {
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        label[w] = components;
      } while (w != v);
      ++components;
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (!visited[v]) visit(v);
  }
  return label;
}

}  // namespace

LinkageStructure linkage_structure(const Gcrn& net) {
  const std::size_t n = net.vertex_count();
  UnionFind uf(n);
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& e : net.edges()) {
    const std::size_t s = net.index_of(e.source), t = net.index_of(e.target);
    uf.unite(s, t);
    adj[s].push_back(t);
  }
  const auto scc = strong_components(n, adj);
  std::map<std::size_t, std::vector<VertexId>> weak_groups, strong_groups;
  for (std::size_t i = 0; i < n; ++i) {
    const VertexId id = net.vertices()[i].id;
    weak_groups[uf.find(i)].push_back(id);
    strong_groups[scc[i]].push_back(id);
  }
  LinkageStructure out;
  out.linkage_classes = sorted_partition(std::move(weak_groups));
  out.strong_linkage_classes = sorted_partition(std::move(strong_groups));
  out.weakly_reversible = out.linkage_classes == out.strong_linkage_classes;
  return out;
}

std::size_t CondensedCrn::class_of(VertexId v) const {
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (std::binary_search(classes[c].begin(), classes[c].end(), v)) return c;
  }
  throw std::out_of_range("vertex v" + std::to_string(v) + " is not in the condensed network");
}

Gcrn CondensedCrn::as_classical(const std::vector<std::string>& species) const {
  std::vector<Vertex> vertices;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    vertices.push_back({static_cast<VertexId>(c + 1), class_complexes[c], class_complexes[c]});
  }
  SymbolTable symbols;
  std::vector<Edge> out_edges;
  for (const auto& [a, b] : edges) {
    const SymbolId k = symbols.add("k_" + std::to_string(a + 1) + "_" + std::to_string(b + 1), SymbolRole::RateConstant);
    out_edges.push_back({static_cast<VertexId>(a + 1), static_cast<VertexId>(b + 1), k, EdgeKind::Effective});
  }
  return Gcrn(species, std::move(vertices), std::move(out_edges), std::move(symbols));
}

CondensedCrn condense(const Gcrn& net) {
  std::map<Complex, std::vector<VertexId>> by_complex;
  for (const auto& v : net.vertices()) by_complex[v.stoich].push_back(v.id);
  std::vector<std::pair<Complex, std::vector<VertexId>>> groups(by_complex.begin(), by_complex.end());
  std::sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) { return a.second.front() < b.second.front(); });

  CondensedCrn out;
  for (auto& [c, members] : groups) {
    out.classes.push_back(members);
    out.class_complexes.push_back(c);
  }
  for (const auto& e : net.edges()) {
    if (e.kind == EdgeKind::Effective) out.edges.emplace(out.class_of(e.source), out.class_of(e.target));
  }
  return out;
}

std::size_t deficiency_by_intersection(const RationalMatrix& complexes, const RationalMatrix& incidence) {
  if (incidence.cols() == 0) return 0;
  const RationalMatrix image = complexes * incidence;
  return static_cast<std::size_t>(exact_rank(incidence) - exact_rank(image));
}

StructureReport structure_report(const Gcrn& net) {
  StructureReport r;
  const auto link = linkage_structure(net);
  r.vertex_count = net.vertex_count();
  r.linkage_count = link.linkage_classes.size();
  r.weakly_reversible = link.weakly_reversible;
  r.linkage_classes = link.linkage_classes;
  r.strong_linkage_classes = link.strong_linkage_classes;

  const RationalMatrix ie = net.incidence_matrix();
  auto rank_of_image = [&](const RationalMatrix& y) {
    return ie.cols() == 0 ? std::size_t{0} : static_cast<std::size_t>(exact_rank(RationalMatrix(y * ie)));
  };
  r.stoichiometric_rank = rank_of_image(net.stoichiometric_matrix());
  r.deficiency = r.vertex_count - r.linkage_count - r.stoichiometric_rank;
  if (net.all_vertices_are_sources()) {
    r.kinetic_rank = rank_of_image(net.kinetic_matrix());
    r.kinetic_deficiency = r.vertex_count - r.linkage_count - *r.kinetic_rank;
  }

  const CondensedCrn condensed = condense(net);
  const Gcrn quotient = condensed.as_classical(net.species());
  const std::size_t quotient_linkage = linkage_structure(quotient).linkage_classes.size();
  r.effective_deficiency = quotient.vertex_count() - quotient_linkage - r.stoichiometric_rank;
  return r;
}

// ------------------------------------------------------------ V* handling

void validate_section(const CondensedCrn& condensed, const VertexSet& vstar) {
  std::vector<int> hits(condensed.classes.size(), 0);
  for (VertexId v : vstar) {
    std::size_t c;
    try {
      c = condensed.class_of(v);
    } catch (const std::out_of_range&) {
      throw std::invalid_argument("V* contains unknown vertex v" + std::to_string(v));
    }
    ++hits[c];
  }
  for (std::size_t c = 0; c < hits.size(); ++c) {
    if (hits[c] != 1) {
      throw std::invalid_argument("V* must contain exactly one vertex of the class of v" +
                                  std::to_string(condensed.classes[c].front()));
    }
  }
}

namespace {

std::vector<VertexId> representatives(const CondensedCrn& condensed, const VertexSet& vstar) {
  std::vector<VertexId> rho(condensed.classes.size());
  for (VertexId v : vstar) rho[condensed.class_of(v)] = v;
  return rho;
}

}  // namespace

bool is_v_star_directed(const Gcrn& net, const VertexSet& vstar) {
  const CondensedCrn condensed = condense(net);
  validate_section(condensed, vstar);
  const auto rho = representatives(condensed, vstar);

  std::multiset<std::pair<VertexId, VertexId>> phantom;
  for (const auto& e : net.edges()) {
    if (e.kind == EdgeKind::Effective) {
      if (!vstar.count(e.target)) return false;
    } else {
      phantom.emplace(e.source, e.target);
    }
  }
  std::multiset<std::pair<VertexId, VertexId>> required;
  for (std::size_t c = 0; c < condensed.classes.size(); ++c) {
    for (VertexId j : condensed.classes[c]) {
      if (j != rho[c]) required.emplace(rho[c], j);
    }
  }
  return phantom == required;
}

VertexSet default_vstar(const Gcrn& net) {
  const CondensedCrn condensed = condense(net);
  std::map<VertexId, std::size_t> entering;
  for (const auto& e : net.edges()) {
    if (e.kind == EdgeKind::Effective) ++entering[e.target];
  }
  VertexSet out;
  for (const auto& cls : condensed.classes) {
    VertexId best = cls.front();
    for (VertexId v : cls) {
      if (entering[v] > entering[best]) best = v;
    }
    out.insert(best);
  }
  return out;
}

Redirection redirect(const Gcrn& net, const VertexSet& vstar) {
  const CondensedCrn condensed = condense(net);
  validate_section(condensed, vstar);
  const auto rho = representatives(condensed, vstar);
  auto rep = [&](VertexId v) { return rho[condensed.class_of(v)]; };

  SymbolTable symbols = net.symbols();
  Redirection out;

  // Effective edges grouped by (source, representative of target).
  std::map<std::pair<VertexId, VertexId>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < net.edges().size(); ++i) {
    const Edge& e = net.edges()[i];
    if (e.kind == EdgeKind::Effective) groups[{e.source, rep(e.target)}].push_back(i);
  }

  std::set<std::pair<VertexId, VertexId>> required;
  for (std::size_t c = 0; c < condensed.classes.size(); ++c) {
    for (VertexId j : condensed.classes[c]) {
      if (j != rho[c]) required.emplace(rho[c], j);
    }
  }

  std::vector<Edge> edges;
  std::set<std::pair<VertexId, VertexId>> emitted_phantoms;
  std::set<SymbolId> used_labels;
  for (std::size_t i = 0; i < net.edges().size(); ++i) {
    const Edge& e = net.edges()[i];
    if (e.kind == EdgeKind::Phantom) {
      const std::pair<VertexId, VertexId> key{e.source, e.target};
      if (required.count(key) && emitted_phantoms.insert(key).second) {
        edges.push_back(e);
        used_labels.insert(e.label);
      }
      continue;
    }
    const std::pair<VertexId, VertexId> key{e.source, rep(e.target)};
    const auto& members = groups.at(key);
    const bool rerouted = std::any_of(members.begin(), members.end(),
                                      [&](std::size_t m) { return net.edges()[m].target != key.second; });
    if (!rerouted || members.size() == 1) {
      edges.push_back({e.source, key.second, e.label, EdgeKind::Effective});
      continue;
    }
    if (members.front() != i) continue;  // merged into the group's first edge
    std::vector<SymbolId> labels;
    for (std::size_t m : members) labels.push_back(net.edges()[m].label);
    std::sort(labels.begin(), labels.end());
    std::string name;
    Polynomial sum;
    for (SymbolId l : labels) {
      name += (name.empty() ? "" : "+") + symbols[l].name;
      sum += Polynomial::variable(l);
    }
    const SymbolId merged = symbols.add_fresh(name, SymbolRole::RateConstant);
    out.substitution.emplace(merged, sum);
    edges.push_back({e.source, key.second, merged, EdgeKind::Effective});
  }

  // Missing phantom edges: reuse labels of dropped phantom edges of the same class first.
  std::vector<std::vector<SymbolId>> spare(condensed.classes.size());
  for (const auto& e : net.edges()) {
    if (e.kind == EdgeKind::Phantom && !used_labels.count(e.label)) {
      auto& pool = spare[condensed.class_of(e.source)];
      if (std::find(pool.begin(), pool.end(), e.label) == pool.end()) pool.push_back(e.label);
    }
  }
  std::vector<std::size_t> spare_next(condensed.classes.size(), 0);
  for (const auto& key : required) {
    if (emitted_phantoms.count(key)) continue;
    const std::size_t c = condensed.class_of(key.first);
    SymbolId label;
    if (spare_next[c] < spare[c].size()) {
      label = spare[c][spare_next[c]++];
    } else {
      label = symbols.add_fresh("phi_" + std::to_string(key.first) + "_" + std::to_string(key.second),
                                SymbolRole::PhantomParameter);
    }
    edges.push_back({key.first, key.second, label, EdgeKind::Phantom});
  }

  std::vector<Vertex> vertices = net.vertices();
  std::set<VertexId> sources;
  for (const auto& e : edges) sources.insert(e.source);
  for (const auto& v : vertices) {
    if (sources.count(v.id) && !v.kinetic) {
      throw NetworkError("representative v" + std::to_string(v.id) +
                         " needs a kinetic-order complex to carry phantom edges; choose another V*");
    }
  }
  out.network = Gcrn(net.species(), std::move(vertices), std::move(edges), std::move(symbols));
  return out;
}

// ---------------------------------------------------------------- ODE

PolynomialMatrix laplacian(const Gcrn& net) {
  const std::size_t m = net.vertex_count();
  PolynomialMatrix a(m, m);
  for (const auto& e : net.edges()) {
    const std::size_t i = net.index_of(e.source), j = net.index_of(e.target);
    const Polynomial k = Polynomial::variable(e.label);
    a(j, i) += k;
    a(i, i) -= k;
  }
  return a;
}

void OdeExpression::add(SpeciesIndex s, const ExponentVector& exponents, const Polynomial& coefficient) {
  if (coefficient.is_zero()) return;
  auto& row = rows_.at(s);
  auto [it, inserted] = row.emplace(exponents, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero()) row.erase(it);
  }
}

bool OdeExpression::is_zero() const {
  return std::all_of(rows_.begin(), rows_.end(), [](const auto& r) { return r.empty(); });
}

std::set<SymbolId> OdeExpression::symbols() const {
  std::set<SymbolId> out;
  for (const auto& row : rows_) {
    for (const auto& [_, p] : row) out.merge(p.symbols());
  }
  return out;
}

OdeExpression OdeExpression::substitute(const std::map<SymbolId, Polynomial>& values) const {
  OdeExpression out(rows_.size());
  for (std::size_t s = 0; s < rows_.size(); ++s) {
    for (const auto& [exps, p] : rows_[s]) out.add(s, exps, p.substitute(values));
  }
  return out;
}

OdeExpression operator-(const OdeExpression& a, const OdeExpression& b) {
  if (a.rows_.size() != b.rows_.size()) throw std::invalid_argument("ODE expressions over different species");
  OdeExpression out = a;
  for (std::size_t s = 0; s < b.rows_.size(); ++s) {
    for (const auto& [exps, p] : b.rows_[s]) out.add(s, exps, -p);
  }
  return out;
}

std::string OdeExpression::to_string(const std::vector<std::string>& species, const SymbolNamer& name) const {
  std::ostringstream os;
  for (std::size_t s = 0; s < rows_.size(); ++s) {
    os << "d" << species.at(s) << "/dt =";
    if (rows_[s].empty()) os << " 0";
    bool first = true;
    for (const auto& [exps, p] : rows_[s]) {
      os << (first ? " " : " + ") << "(" << p.to_string(name) << ")";
      first = false;
      for (std::size_t j = 0; j < exps.size(); ++j) {
        if (exps[j] == 0) continue;
        os << "*" << species.at(j);
        if (exps[j] != 1) os << "^" << crnt::to_string(exps[j]);
      }
    }
    os << "\n";
  }
  return os.str();
}

OdeExpression ode_rhs(const Gcrn& net) {
  const std::size_t n = net.species_count();
  OdeExpression out(n);
  for (const auto& e : net.edges()) {
    const Vertex& src = net.vertex(e.source);
    const Complex diff = net.vertex(e.target).stoich - src.stoich;
    if (diff.is_zero()) continue;
    if (!src.kinetic) throw NetworkError("source vertex v" + std::to_string(e.source) + " has no kinetic-order complex");
    OdeExpression::ExponentVector exps(n, Rational(0));
    for (const auto& [s, c] : src.kinetic->coefficients()) exps[s] = c;
    const Polynomial k = Polynomial::variable(e.label);
    for (const auto& [s, c] : diff.coefficients()) out.add(s, exps, c * k);
  }
  return out;
}

}  // namespace crnt
