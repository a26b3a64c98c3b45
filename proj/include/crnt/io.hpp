#pragma once

// Text formats.
//
// Network files are line oriented; '#' starts a comment.
//
//   @species X Xp Y Yp          optional; fixes species order
//   @mas                        classical reactions
//   X -> Xp ; k1
//   Xp + Y <-> X + Yp ; k2, k3  forward rate first
//   @gcrn                       generalized networks
//   v1:[X + Y | X] -> v2:[Xp + Y | Xp + Y] ; k1
//   v3 -> v4 ; phantom phi
//   @values k1=0.5 phi=2
//
// Scheme files:
//
//   r1: + Y                     reaction r1 (directed, in file order)
//   l2: + 0                     both directions of reaction line 2
//   phantom v3 -> v4 ; phi      phantom edge between translated vertices

#include "crnt/network.hpp"
#include "crnt/polynomial.hpp"
#include "crnt/translation.hpp"

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace crnt {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

struct ParsedNetwork {
  Gcrn network;
  bool classical = false;  // came from an @mas section
  /// Edge indices contributed by each reaction line, in file order.
  std::vector<std::vector<std::size_t>> line_edges;
  std::map<std::string, double> values;
};

ParsedNetwork parse_network(const std::string& text);
ParsedNetwork read_network_file(const std::string& path);

/// @species/@gcrn rendering with explicit vertex ids; parses back to an equal network.
std::string render_network(const Gcrn& net);

struct SchemeEntry {
  bool whole_line = false;  // lN rather than rN
  std::size_t index = 0;    // 1-based
  std::map<std::string, Rational> added;
  std::size_t line = 0;
};

struct SchemeFile {
  std::vector<SchemeEntry> entries;
  std::vector<PhantomRequest> phantoms;
};

SchemeFile parse_scheme(const std::string& text);
SchemeFile read_scheme_file(const std::string& path);

/// Binds a scheme to a classical network. Per-reaction entries override
/// whole-line entries. Throws std::invalid_argument naming unknown species,
/// unknown ids and reactions without an entry.
TranslationScheme resolve_scheme(const SchemeFile& scheme, const ParsedNetwork& crn);

/// Arithmetic over symbols: + - * / ^integer, parentheses, integer and
/// decimal literals. `lookup` maps an identifier to a symbol id.
RationalFunction parse_expression(const std::string& text, const std::function<SymbolId(const std::string&)>& lookup);

std::string read_text_file(const std::string& path);

}  // namespace crnt
