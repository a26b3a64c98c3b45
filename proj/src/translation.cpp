#include "crnt/translation.hpp"

#include <stdexcept>

namespace crnt {

Translation translate(const Gcrn& crn, const TranslationScheme& scheme) {
  if (!crn.is_classical()) throw std::invalid_argument("translation needs a classical reaction network");
  if (scheme.added.size() != crn.edges().size()) {
    throw std::invalid_argument("translation scheme has " + std::to_string(scheme.added.size()) +
                                " entries for " + std::to_string(crn.edges().size()) + " reactions");
  }
  std::vector<Vertex> vertices;
  auto find = [&](auto&& pred) -> std::optional<VertexId> {
    for (const auto& v : vertices) {
      if (pred(v)) return v.id;
    }
    return std::nullopt;
  };

  std::vector<VertexId> sources;
  for (std::size_t r = 0; r < crn.edges().size(); ++r) {
    const Complex& y = crn.vertex(crn.edges()[r].source).stoich;
    const Complex stoich = y + scheme.added[r];
    auto id = find([&](const Vertex& v) { return v.stoich == stoich && v.kinetic && *v.kinetic == y; });
    if (!id) {
      id = static_cast<VertexId>(vertices.size() + 1);
      vertices.push_back({*id, stoich, y});
    }
    sources.push_back(*id);
  }

  SymbolTable symbols = crn.symbols();
  std::vector<Edge> edges;
  Translation out;
  for (std::size_t r = 0; r < crn.edges().size(); ++r) {
    const Complex& y = crn.vertex(crn.edges()[r].target).stoich;
    const Complex stoich = y + scheme.added[r];
    auto id = find([&](const Vertex& v) { return v.stoich == stoich && v.kinetic && *v.kinetic == y; });
    if (!id) id = find([&](const Vertex& v) { return v.stoich == stoich; });
    if (!id) {
      id = static_cast<VertexId>(vertices.size() + 1);
      vertices.push_back({*id, stoich, std::nullopt});
    }
    if (*id == sources[r]) {
      throw std::invalid_argument("translated reaction " + std::to_string(r + 1) + " became a self-loop");
    }
    out.edge_map.push_back(edges.size());
    edges.push_back({sources[r], *id, crn.edges()[r].label, EdgeKind::Effective});
  }

  const bool numbered = scheme.phantoms.size() > 1;
  for (std::size_t p = 0; p < scheme.phantoms.size(); ++p) {
    const auto& req = scheme.phantoms[p];
    const std::string where = "phantom edge v" + std::to_string(req.source) + " -> v" + std::to_string(req.target);
    if (req.source < 1 || req.target < 1 || req.source > static_cast<VertexId>(vertices.size()) ||
        req.target > static_cast<VertexId>(vertices.size())) {
      throw std::invalid_argument(where + " references a vertex that the translation does not create");
    }
    const Vertex& s = vertices[static_cast<std::size_t>(req.source - 1)];
    const Vertex& t = vertices[static_cast<std::size_t>(req.target - 1)];
    if (req.source == req.target || !(s.stoich == t.stoich)) {
      throw std::invalid_argument(where + " joins vertices with different stoichiometric complexes");
    }
    if (!s.kinetic) throw std::invalid_argument(where + " starts at a vertex without kinetic-order complex");
    const std::string name = req.label.value_or(numbered ? "phi" + std::to_string(p + 1) : "phi");
    const SymbolId label = req.label ? symbols.add(name, SymbolRole::PhantomParameter)
                                     : symbols.add_fresh(name, SymbolRole::PhantomParameter);
    edges.push_back({req.source, req.target, label, EdgeKind::Phantom});
  }

  out.network = Gcrn(crn.species(), std::move(vertices), std::move(edges), std::move(symbols));
  return out;
}

TranslationCertificate certify(const Gcrn& crn, const Gcrn& translated, const std::vector<std::size_t>& edge_map) {
  TranslationCertificate cert;
  cert.edge_map = edge_map;
  cert.reaction_vectors_preserved = edge_map.size() == crn.edges().size();
  cert.source_complexes_related = cert.reaction_vectors_preserved;
  for (std::size_t r = 0; r < edge_map.size() && r < crn.edges().size(); ++r) {
    if (edge_map[r] >= translated.edges().size()) {
      cert.reaction_vectors_preserved = cert.source_complexes_related = false;
      break;
    }
    const Edge& e = crn.edges()[r];
    const Edge& t = translated.edges()[edge_map[r]];
    const Complex original = crn.vertex(e.target).stoich - crn.vertex(e.source).stoich;
    const Complex shifted = translated.vertex(t.target).stoich - translated.vertex(t.source).stoich;
    if (!(original == shifted) || e.label != t.label) cert.reaction_vectors_preserved = false;
    const auto& kinetic = translated.vertex(t.source).kinetic;
    if (!kinetic || !(*kinetic == crn.vertex(e.source).stoich)) cert.source_complexes_related = false;
  }
  cert.difference = ode_rhs(crn) - ode_rhs(translated);
  return cert;
}

}  // namespace crnt
