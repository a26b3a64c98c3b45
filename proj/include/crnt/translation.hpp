#pragma once

// Network translation: shift both sides of every reaction by a complex so the
// resulting generalized network has the same mass-action ODE but better
// structure, optionally closing classes with phantom edges.

#include "crnt/network.hpp"

#include <optional>
#include <string>
#include <vector>

namespace crnt {

struct PhantomRequest {
  VertexId source = 0;
  VertexId target = 0;
  std::optional<std::string> label;
};

struct TranslationScheme {
  std::vector<Complex> added;  // one per edge of the classical network, in edge order
  std::vector<PhantomRequest> phantoms;
};

struct Translation {
  Gcrn network;
  std::vector<std::size_t> edge_map;  // reaction index -> edge index in `network`
};

/// Vertices are created for source complexes first (reaction order, equal
/// stoichiometric/kinetic pairs merged). A target y(j) + c joins the vertex
/// with that stoichiometric complex and kinetic complex y(j) if there is one,
/// else the lowest-id vertex with that stoichiometric complex, else a new
/// vertex without kinetic complex. Throws std::invalid_argument for bad input.
Translation translate(const Gcrn& crn, const TranslationScheme& scheme);

struct TranslationCertificate {
  std::vector<std::size_t> edge_map;
  bool reaction_vectors_preserved = false;  // y'(j') - y'(i') = y(j) - y(i)
  bool source_complexes_related = false;    // kinetic(i') = y(i)
  OdeExpression difference;                 // ode(crn) - ode(translated)

  bool valid() const { return reaction_vectors_preserved && source_complexes_related && difference.is_zero(); }
};

/// `translated` must share the rate symbols of `crn` (same ids), as produced by translate().
TranslationCertificate certify(const Gcrn& crn, const Gcrn& translated, const std::vector<std::size_t>& edge_map);

}  // namespace crnt
