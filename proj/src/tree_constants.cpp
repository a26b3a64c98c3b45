#include "crnt/tree_constants.hpp"

#include "crnt/symbolic_matrix.hpp"

#include <functional>
#include <stdexcept>

namespace crnt {

void require_weakly_reversible(const Gcrn& net) {
  const auto link = linkage_structure(net);
  if (link.weakly_reversible) return;
  for (const auto& cls : link.linkage_classes) {
    bool found = false;
    for (const auto& strong : link.strong_linkage_classes) found = found || strong == cls;
    if (!found) {
      throw AnalysisError("network is not weakly reversible: the linkage class of v" + std::to_string(cls.front()) +
                          " is not strongly connected; translate or add edges first");
    }
  }
}

namespace {

struct ClassEdges {
  std::vector<VertexId> members;
  // out[v] = (local target index, label) for each edge leaving local vertex v
  std::vector<std::vector<std::pair<std::size_t, SymbolId>>> out;
};

std::vector<ClassEdges> class_edges(const Gcrn& net) {
  const auto classes = linkage_structure(net).linkage_classes;
  std::map<VertexId, std::pair<std::size_t, std::size_t>> where;
  std::vector<ClassEdges> out(classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c) {
    out[c].members = classes[c];
    out[c].out.resize(classes[c].size());
    for (std::size_t i = 0; i < classes[c].size(); ++i) where[classes[c][i]] = {c, i};
  }
  for (const auto& e : net.edges()) {
    const auto [c, s] = where.at(e.source);
    out[c].out[s].emplace_back(where.at(e.target).second, e.label);
  }
  return out;
}

}  // namespace

TreeConstants tree_constants_enumerate(const Gcrn& net, std::uint64_t max_choices) {
  require_weakly_reversible(net);
  TreeConstants result;
  for (const auto& cls : class_edges(net)) {
    const std::size_t n = cls.members.size();
    std::uint64_t choices = 1;
    for (const auto& o : cls.out) {
      choices *= std::max<std::uint64_t>(1, o.size());
      if (choices > max_choices) throw std::length_error("too many edge choices for tree enumeration");
    }
    for (std::size_t root = 0; root < n; ++root) {
      Polynomial sum;
      std::vector<std::ptrdiff_t> next(n, -1);
      std::vector<std::size_t> order;
      for (std::size_t v = 0; v < n; ++v) {
        if (v != root) order.push_back(v);
      }
      // Depth-first over edge choices; a choice is rejected as soon as it closes a cycle.
      std::function<void(std::size_t, const Polynomial&)> pick = [&](std::size_t depth, const Polynomial& product) {
        if (depth == order.size()) {
          sum += product;
          return;
        }
        const std::size_t v = order[depth];
        for (const auto& [target, label] : cls.out[v]) {
          next[v] = static_cast<std::ptrdiff_t>(target);
          bool cycle = false;
          for (std::ptrdiff_t w = next[v]; w >= 0; w = next[static_cast<std::size_t>(w)]) {
            if (static_cast<std::size_t>(w) == v) {
              cycle = true;
              break;
            }
          }
          if (!cycle) pick(depth + 1, product * Polynomial::variable(label));
        }
        next[v] = -1;
      };
      pick(0, Polynomial(1));
      result[cls.members[root]] = sum;
    }
  }
  return result;
}

TreeConstants tree_constants_cofactor(const Gcrn& net) {
  require_weakly_reversible(net);
  TreeConstants result;
  for (const auto& cls : class_edges(net)) {
    const std::size_t n = cls.members.size();
    PolynomialMatrix negated(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& [j, label] : cls.out[i]) {
        const Polynomial k = Polynomial::variable(label);
        negated(j, i) -= k;
        negated(i, i) += k;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      const Polynomial k = determinant(negated.minor(i, i));
      if (k.is_zero() || !k.has_positive_coefficients()) {
        throw std::logic_error("tree constant of v" + std::to_string(cls.members[i]) + " is not a positive polynomial");
      }
      result[cls.members[i]] = k;
    }
  }
  return result;
}

SpanningForest choose_forest(const Gcrn& net) {
  SpanningForest forest;
  for (const auto& cls : linkage_structure(net).linkage_classes) {
    for (std::size_t j = 1; j < cls.size(); ++j) forest.edges.emplace_back(cls.front(), cls[j]);
  }
  return forest;
}

std::vector<RationalFunction> kappa(const TreeConstants& k, const SpanningForest& forest) {
  std::vector<RationalFunction> out;
  for (const auto& [i, j] : forest.edges) out.emplace_back(k.at(j), k.at(i));
  return out;
}

std::vector<Factorization> kappa_factored(const TreeConstants& k, const SpanningForest& forest) {
  std::map<VertexId, Factorization> cache;
  auto factored = [&](VertexId v) -> const Factorization& {
    auto it = cache.find(v);
    if (it == cache.end()) it = cache.emplace(v, factor(k.at(v))).first;
    return it->second;
  };
  std::vector<Factorization> out;
  for (const auto& [i, j] : forest.edges) out.push_back(factored(j) * factored(i).pow(-1));
  return out;
}

}  // namespace crnt
