#include "crnt/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace crnt {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(line == 0 ? message
                                   : "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                                         message),
      line_(line), column_(column), message_(message) {}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, 0, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Character cursor over one line; columns are 1-based.
class Cursor {
 public:
  Cursor(std::string text, std::size_t line) : text_(std::move(text)), line_(line) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool starts_with(const std::string& s) {
    skip_space();
    return text_.compare(pos_, s.size(), s) == 0;
  }
  bool accept(const std::string& s) {
    if (!starts_with(s)) return false;
    pos_ += s.size();
    return true;
  }
  void expect(const std::string& s, const std::string& what) {
    if (!accept(s)) fail("expected " + what);
  }
  std::size_t column() {
    skip_space();
    return pos_ + 1;
  }
  std::size_t line() const { return line_; }

  [[noreturn]] void fail(const std::string& message) { throw ParseError(line_, column(), message); }
  [[noreturn]] void fail_at(std::size_t column, const std::string& message) {
    throw ParseError(line_, column, message);
  }

  std::string identifier(const std::string& what) {
    skip_space();
    if (pos_ >= text_.size() || !ident_start(text_[pos_])) fail("expected " + what);
    const std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  // Rate labels may carry the "+" and "'" produced by redirection.
  std::string label() {
    skip_space();
    if (pos_ >= text_.size() || !ident_start(text_[pos_])) fail("expected a rate symbol");
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (ident_char(text_[pos_]) || text_[pos_] == '\'' ||
                                   (text_[pos_] == '+' && pos_ + 1 < text_.size() && ident_start(text_[pos_ + 1])))) {
      ++pos_;
    }
    return text_.substr(start, pos_ - start);
  }

  // Run of non-space characters.
  std::string token() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  // gmp reads a leading zero as an octal prefix.
  static Integer decimal_integer(const std::string& digits) {
    const auto first = digits.find_first_not_of('0');
    return first == std::string::npos ? Integer(0) : Integer(digits.substr(first));
  }

  bool at_number() {
    skip_space();
    return pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.');
  }

  // Unsigned integer, fraction a/b, or decimal literal, as an exact rational.
  Rational number(bool allow_fraction = true) {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string digits = text_.substr(start, pos_ - start);
    Rational value;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      const std::size_t frac_start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string frac = text_.substr(frac_start, pos_ - frac_start);
      if (digits.empty() && frac.empty()) fail_at(start + 1, "malformed number");
      Integer scale(1);
      for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
      value = Rational(decimal_integer(digits + frac), scale);
    } else {
      if (digits.empty()) fail_at(start + 1, "expected a number");
      value = Rational(decimal_integer(digits));
    }
    if (allow_fraction && pos_ + 1 < text_.size() && text_[pos_] == '/' &&
        std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      ++pos_;
      const Rational den = number(false);
      if (den == 0) fail_at(start + 1, "zero denominator");
      value /= den;
    }
    return value;
  }

 private:
  std::string text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string current;
  std::istringstream in(text);
  while (std::getline(in, current)) {
    if (!current.empty() && current.back() == '\r') current.pop_back();
    const auto hash = current.find('#');
    if (hash != std::string::npos) current.erase(hash);
    lines.push_back(current);
  }
  return lines;
}

// Species-name -> coefficient; the zero complex is "0".
std::map<std::string, Rational> parse_terms(Cursor& c, const std::string& context) {
  std::map<std::string, Rational> out;
  const std::size_t start = c.column();
  auto minus = [&]() { return !c.starts_with("->") && c.accept("-"); };
  bool first = true;
  while (true) {
    Rational sign(1);
    const bool plus = c.accept("+");
    if (!plus && minus()) sign = -1;
    if (!first && !plus && sign == 1) break;
    Rational coeff(1);
    if (c.at_number()) {
      coeff = c.number();
      const bool star = c.accept("*");
      if (!ident_start(c.peek())) {
        if (!star && coeff == 0) {  // "0" or "+ 0": the zero complex
          first = false;
          continue;
        }
        c.fail("expected a species after coefficient");
      }
    } else if (!ident_start(c.peek())) {
      if (first && !plus && sign == 1) c.fail_at(start, "empty " + context);
      c.fail("expected a species");
    }
    out[c.identifier("a species")] += sign * coeff;
    first = false;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

class SpeciesIndexer {
 public:
  void declare(const std::string& name, Cursor& c) {
    if (index_.count(name)) c.fail("species '" + name + "' declared twice");
    index_.emplace(name, names_.size());
    names_.push_back(name);
    fixed_ = true;
  }
  SpeciesIndex get(const std::string& name, Cursor& c, std::size_t column) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    if (fixed_) c.fail_at(column, "species '" + name + "' is not declared in @species");
    index_.emplace(name, names_.size());
    names_.push_back(name);
    return names_.size() - 1;
  }
  Complex complex(const std::map<std::string, Rational>& terms, Cursor& c, std::size_t column) {
    std::map<SpeciesIndex, Rational> coeffs;
    for (const auto& [name, value] : terms) coeffs[get(name, c, column)] += value;
    return Complex(std::move(coeffs));
  }
  const std::vector<std::string>& names() const { return names_; }
  bool fixed() const { return fixed_; }

 private:
  std::map<std::string, SpeciesIndex> index_;
  std::vector<std::string> names_;
  bool fixed_ = false;
};

struct LabelSpec {
  std::string name;
  bool phantom = false;
  std::size_t column = 0;
};

std::vector<LabelSpec> parse_labels(Cursor& c, std::size_t expected) {
  c.expect(";", "';' followed by a rate symbol");
  const bool phantom = c.accept("phantom");
  std::vector<LabelSpec> out;
  do {
    const std::size_t col = c.column();
    out.push_back({c.label(), phantom, col});
  } while (c.accept(","));
  if (!c.at_end()) c.fail("unexpected text after rate symbols");
  if (out.size() != expected) {
    c.fail_at(out.front().column, "expected " + std::to_string(expected) + " rate symbol" +
                                      (expected == 1 ? "" : "s") + ", found " + std::to_string(out.size()));
  }
  return out;
}

SymbolId intern_label(SymbolTable& symbols, const LabelSpec& spec, std::size_t line) {
  const SymbolRole role = spec.phantom ? SymbolRole::PhantomParameter : SymbolRole::RateConstant;
  if (auto id = symbols.find(spec.name)) {
    if (symbols[*id].role != role) {
      throw ParseError(line, spec.column, "rate symbol '" + spec.name + "' used both as phantom and as rate constant");
    }
    return *id;
  }
  return symbols.add(spec.name, role);
}

struct PendingEdge {
  VertexId source, target;
  LabelSpec label;
  std::size_t line;
};

// A vertex reference in a @gcrn line: optional explicit id and optional bracket.
struct VertexRef {
  std::optional<VertexId> id;
  std::optional<Complex> stoich;
  std::optional<Complex> kinetic;
  std::size_t line = 0, column = 0;
};

VertexRef parse_vertex_ref(Cursor& c, SpeciesIndexer& species) {
  VertexRef ref;
  ref.line = c.line();
  ref.column = c.column();
  if (c.peek() == 'v') {
    c.accept("v");
    if (!c.at_number()) c.fail("expected a vertex number after 'v'");
    const Rational n = c.number(false);
    if (!is_integer(n) || n < 1) c.fail_at(ref.column, "vertex ids are positive integers");
    ref.id = static_cast<VertexId>(numerator_of(n).convert_to<long>());
    if (!c.accept(":")) return ref;
  }
  if (!c.accept("[")) c.fail("expected '[' with the vertex complexes");
  const std::size_t scol = c.column();
  ref.stoich = species.complex(parse_terms(c, "stoichiometric complex"), c, scol);
  if (c.accept("|")) {
    const std::size_t kcol = c.column();
    ref.kinetic = species.complex(parse_terms(c, "kinetic-order complex"), c, kcol);
  }
  c.expect("]", "']'");
  return ref;
}

}  // namespace

ParsedNetwork parse_network(const std::string& text) {
  enum class Section { None, Mas, Gcrn, Values };
  Section section = Section::None;
  bool saw_mas = false, saw_gcrn = false;
  SpeciesIndexer species;
  SymbolTable symbols;
  ParsedNetwork out;

  // @mas state
  std::map<Complex, VertexId> mas_vertices;
  std::vector<Complex> mas_complexes;
  // @gcrn state
  std::vector<std::pair<VertexRef, std::vector<std::size_t>>> refs;  // ref, pending-edge slots
  std::vector<PendingEdge> pending;
  std::vector<std::pair<std::size_t, std::size_t>> pending_ref_pairs;  // per pending edge: ref indices
  std::vector<std::vector<std::size_t>> line_pending;

  const auto lines = split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    Cursor c(lines[ln], ln + 1);
    if (c.at_end()) continue;
    if (c.accept("@")) {
      const std::string directive = c.identifier("a section name");
      if (directive == "species") {
        if (species.fixed() || !species.names().empty()) c.fail("@species must come first and only once");
        while (!c.at_end()) species.declare(c.identifier("a species name"), c);
        continue;
      }
      if (directive == "mas") {
        if (saw_gcrn) c.fail("@mas and @gcrn sections cannot be mixed");
        section = Section::Mas;
        saw_mas = true;
      } else if (directive == "gcrn") {
        if (saw_mas) c.fail("@mas and @gcrn sections cannot be mixed");
        section = Section::Gcrn;
        saw_gcrn = true;
      } else if (directive == "values") {
        section = Section::Values;
      } else {
        c.fail("unknown section '@" + directive + "'");
      }
      if (section != Section::Values && !c.at_end()) c.fail("unexpected text after section name");
    }
    if (section == Section::Values) {
      while (!c.at_end()) {
        const std::size_t col = c.column();
        const std::string name = c.label();
        c.expect("=", "'=' and a value");
        const std::size_t vcol = c.column();
        const std::string value = c.token();
        std::size_t used = 0;
        double v = 0;
        try {
          v = std::stod(value, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used == 0 || used != value.size()) c.fail_at(vcol, "malformed value for '" + name + "'");
        if (out.values.count(name)) c.fail_at(col, "value for '" + name + "' given twice");
        out.values[name] = v;
      }
      continue;
    }
    if (c.at_end()) continue;
    if (section == Section::None) c.fail("expected @mas or @gcrn before reactions");

    if (section == Section::Mas) {
      const std::size_t lcol = c.column();
      const Complex lhs = species.complex(parse_terms(c, "reactant complex"), c, lcol);
      bool reversible = false;
      if (c.accept("<->")) {
        reversible = true;
      } else if (!c.accept("->")) {
        c.fail("expected '->' or '<->'");
      }
      const std::size_t rcol = c.column();
      if (c.peek() == ';' || c.at_end()) c.fail_at(rcol, "empty product complex");
      const Complex rhs = species.complex(parse_terms(c, "product complex"), c, rcol);
      const auto labels = parse_labels(c, reversible ? 2 : 1);
      if (labels.front().phantom) c.fail_at(labels.front().column, "phantom edges belong in @gcrn sections");
      if (lhs == rhs) c.fail_at(lcol, "reaction with equal reactant and product complexes");
      auto vertex_of = [&](const Complex& x) {
        auto [it, inserted] = mas_vertices.emplace(x, static_cast<VertexId>(mas_complexes.size() + 1));
        if (inserted) mas_complexes.push_back(x);
        return it->second;
      };
      const VertexId a = vertex_of(lhs), b = vertex_of(rhs);
      std::vector<std::size_t> slots;
      slots.push_back(pending.size());
      pending.push_back({a, b, labels[0], ln + 1});
      if (reversible) {
        slots.push_back(pending.size());
        pending.push_back({b, a, labels[1], ln + 1});
      }
      line_pending.push_back(slots);
      continue;
    }

    // @gcrn
    const std::size_t first_ref = refs.size();
    refs.push_back({parse_vertex_ref(c, species), {}});
    if (c.at_end()) continue;  // declaration line
    bool reversible = false;
    if (c.accept("<->")) {
      reversible = true;
    } else if (!c.accept("->")) {
      c.fail("expected '->' or '<->'");
    }
    refs.push_back({parse_vertex_ref(c, species), {}});
    const auto labels = parse_labels(c, reversible ? 2 : 1);
    std::vector<std::size_t> slots;
    slots.push_back(pending.size());
    pending.push_back({0, 0, labels[0], ln + 1});
    pending_ref_pairs.emplace_back(first_ref, first_ref + 1);
    if (reversible) {
      slots.push_back(pending.size());
      pending.push_back({0, 0, labels[1], ln + 1});
      pending_ref_pairs.emplace_back(first_ref + 1, first_ref);
    }
    line_pending.push_back(slots);
  }

  if (!saw_mas && !saw_gcrn) throw ParseError(0, 0, "no @mas or @gcrn section");

  std::vector<Vertex> vertices;
  if (saw_mas) {
    for (std::size_t i = 0; i < mas_complexes.size(); ++i) {
      vertices.push_back({static_cast<VertexId>(i + 1), mas_complexes[i], mas_complexes[i]});
    }
  } else {
    // Explicit ids first, then unnamed references by (stoich, kinetic) pair.
    std::map<VertexId, Vertex> by_id;
    std::vector<VertexId> resolved(refs.size(), 0);
    std::set<VertexId> declared;
    for (std::size_t i = 0; i < refs.size(); ++i) {
      const VertexRef& r = refs[i].first;
      if (!r.id) continue;
      auto [it, inserted] = by_id.try_emplace(*r.id);
      if (inserted) it->second.id = *r.id;
      if (r.stoich) {
        if (declared.insert(*r.id).second) {
          it->second.stoich = *r.stoich;
        } else if (!(it->second.stoich == *r.stoich)) {
          throw ParseError(r.line, r.column, "vertex v" + std::to_string(*r.id) + " redeclared with a different stoichiometric complex");
        }
      }
      if (r.kinetic) {
        auto& kinetic = it->second.kinetic;
        if (kinetic && !(*kinetic == *r.kinetic)) {
          throw ParseError(r.line, r.column, "vertex v" + std::to_string(*r.id) + " redeclared with a different kinetic-order complex");
        }
        kinetic = r.kinetic;
      }
      resolved[i] = *r.id;
    }
    for (std::size_t i = 0; i < refs.size(); ++i) {
      const VertexRef& r = refs[i].first;
      if (r.id && !declared.count(*r.id)) {
        throw ParseError(r.line, r.column, "vertex v" + std::to_string(*r.id) + " is never given complexes");
      }
    }
    VertexId next_id = 1;
    for (std::size_t i = 0; i < refs.size(); ++i) {
      const VertexRef& r = refs[i].first;
      if (r.id) continue;
      std::optional<VertexId> match;
      for (const auto& [id, v] : by_id) {
        if (v.stoich == *r.stoich && v.kinetic == r.kinetic) {
          match = id;
          break;
        }
      }
      if (!match) {
        while (by_id.count(next_id)) ++next_id;
        match = next_id;
        by_id[next_id] = {next_id, *r.stoich, r.kinetic};
      }
      resolved[i] = *match;
    }
    for (auto& [_, v] : by_id) vertices.push_back(v);
    for (std::size_t p = 0; p < pending.size(); ++p) {
      pending[p].source = resolved[pending_ref_pairs[p].first];
      pending[p].target = resolved[pending_ref_pairs[p].second];
    }
  }

  std::map<VertexId, const Vertex*> lookup;
  for (const auto& v : vertices) lookup[v.id] = &v;
  std::vector<Edge> edges;
  for (const auto& p : pending) {
    if (p.source == p.target) throw ParseError(p.line, 1, "edge from v" + std::to_string(p.source) + " to itself");
    const bool same = lookup.at(p.source)->stoich == lookup.at(p.target)->stoich;
    if (p.label.phantom && !same) {
      throw ParseError(p.line, p.label.column, "phantom label '" + p.label.name + "' on an edge between different stoichiometric complexes");
    }
    if (!lookup.at(p.source)->kinetic) {
      throw ParseError(p.line, 1, "source vertex v" + std::to_string(p.source) + " has no kinetic-order complex");
    }
    edges.push_back({p.source, p.target, intern_label(symbols, p.label, p.line), EdgeKind::Effective});
  }
  out.line_edges = line_pending;
  out.classical = saw_mas;
  try {
    out.network = Gcrn(species.names(), std::move(vertices), std::move(edges), std::move(symbols));
  } catch (const NetworkError& e) {
    throw ParseError(0, 0, e.what());
  }
  return out;
}

ParsedNetwork read_network_file(const std::string& path) { return parse_network(read_text_file(path)); }

std::string render_network(const Gcrn& net) {
  std::ostringstream os;
  os << "@species";
  for (const auto& s : net.species()) os << " " << s;
  os << "\n@gcrn\n";
  auto ref = [&](VertexId id) {
    const Vertex& v = net.vertex(id);
    std::string s = "v" + std::to_string(id) + ":[" + v.stoich.to_string(net.species());
    if (v.kinetic) s += " | " + v.kinetic->to_string(net.species());
    return s + "]";
  };
  std::set<VertexId> touched;
  for (const auto& e : net.edges()) {
    touched.insert(e.source);
    touched.insert(e.target);
    const RateSymbol& sym = net.symbols()[e.label];
    os << ref(e.source) << " -> " << ref(e.target) << " ; "
       << (sym.role == SymbolRole::PhantomParameter ? "phantom " : "") << sym.name << "\n";
  }
  for (const auto& v : net.vertices()) {
    if (!touched.count(v.id)) os << ref(v.id) << "\n";
  }
  return os.str();
}

SchemeFile parse_scheme(const std::string& text) {
  SchemeFile out;
  const auto lines = split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    Cursor c(lines[ln], ln + 1);
    if (c.at_end()) continue;
    if (c.accept("phantom")) {
      PhantomRequest req;
      auto vertex = [&]() {
        const std::size_t col = c.column();
        c.expect("v", "a vertex reference vN");
        const Rational n = c.number(false);
        if (!is_integer(n) || n < 1) c.fail_at(col, "vertex ids are positive integers");
        return static_cast<VertexId>(numerator_of(n).convert_to<long>());
      };
      req.source = vertex();
      c.expect("->", "'->'");
      req.target = vertex();
      if (c.accept(";")) req.label = c.label();
      if (!c.at_end()) c.fail("unexpected text after phantom request");
      out.phantoms.push_back(req);
      continue;
    }
    SchemeEntry entry;
    entry.line = ln + 1;
    const std::size_t col = c.column();
    if (c.accept("r")) {
      entry.whole_line = false;
    } else if (c.accept("l")) {
      entry.whole_line = true;
    } else {
      c.fail("expected rN:, lN: or phantom");
    }
    if (!c.at_number()) c.fail("expected a reaction number");
    const Rational n = c.number(false);
    if (!is_integer(n) || n < 1) c.fail_at(col, "reaction ids are positive integers");
    entry.index = numerator_of(n).convert_to<std::size_t>();
    c.expect(":", "':'");
    entry.added = parse_terms(c, "added complex");
    if (!c.at_end()) c.fail("unexpected text after added complex");
    out.entries.push_back(entry);
  }
  return out;
}

SchemeFile read_scheme_file(const std::string& path) { return parse_scheme(read_text_file(path)); }

TranslationScheme resolve_scheme(const SchemeFile& scheme, const ParsedNetwork& crn) {
  const std::size_t reactions = crn.network.edges().size();
  std::vector<std::optional<Complex>> per_reaction(reactions), per_line(reactions);
  auto to_complex = [&](const SchemeEntry& e) {
    std::map<SpeciesIndex, Rational> coeffs;
    for (const auto& [name, value] : e.added) {
      const auto& names = crn.network.species();
      auto it = std::find(names.begin(), names.end(), name);
      if (it == names.end()) {
        throw std::invalid_argument("scheme line " + std::to_string(e.line) + ": unknown species '" + name + "'");
      }
      coeffs[static_cast<SpeciesIndex>(it - names.begin())] += value;
    }
    return Complex(std::move(coeffs));
  };
  for (const auto& e : scheme.entries) {
    const std::string id = (e.whole_line ? "l" : "r") + std::to_string(e.index);
    if (e.whole_line) {
      if (e.index > crn.line_edges.size()) {
        throw std::invalid_argument("scheme line " + std::to_string(e.line) + ": unknown reaction line " + id);
      }
      for (std::size_t r : crn.line_edges[e.index - 1]) {
        if (per_line[r]) throw std::invalid_argument("scheme line " + std::to_string(e.line) + ": " + id + " given twice");
        per_line[r] = to_complex(e);
      }
    } else {
      if (e.index > reactions) {
        throw std::invalid_argument("scheme line " + std::to_string(e.line) + ": unknown reaction " + id);
      }
      if (per_reaction[e.index - 1]) {
        throw std::invalid_argument("scheme line " + std::to_string(e.line) + ": " + id + " given twice");
      }
      per_reaction[e.index - 1] = to_complex(e);
    }
  }
  TranslationScheme out;
  std::string missing;
  for (std::size_t r = 0; r < reactions; ++r) {
    if (per_reaction[r]) {
      out.added.push_back(*per_reaction[r]);
    } else if (per_line[r]) {
      out.added.push_back(*per_line[r]);
    } else {
      missing += (missing.empty() ? "" : ", ") + ("r" + std::to_string(r + 1));
    }
  }
  if (!missing.empty()) throw std::invalid_argument("translation scheme has no entry for " + missing);
  out.phantoms = scheme.phantoms;
  return out;
}

namespace {

class ExpressionParser {
 public:
  ExpressionParser(const std::string& text, const std::function<SymbolId(const std::string&)>& lookup)
      : c_(text, 0), lookup_(lookup) {}

  RationalFunction parse() {
    RationalFunction f = sum();
    if (!c_.at_end()) c_.fail("unexpected '" + std::string(1, c_.peek()) + "'");
    return f;
  }

 private:
  RationalFunction sum() {
    RationalFunction f = product();
    while (true) {
      if (c_.accept("+")) {
        f = f + product();
      } else if (c_.accept("-")) {
        f = f - product();
      } else {
        return f;
      }
    }
  }
  RationalFunction product() {
    RationalFunction f = power();
    while (true) {
      if (c_.accept("*")) {
        f = f * power();
      } else if (c_.accept("/")) {
        const std::size_t col = c_.column();
        const RationalFunction d = power();
        if (d.is_zero()) c_.fail_at(col, "division by zero");
        f = f / d;
      } else {
        return f;
      }
    }
  }
  RationalFunction power() {
    if (c_.accept("-")) return -power();
    RationalFunction base = primary();
    if (c_.accept("^")) {
      const std::size_t col = c_.column();
      bool negative = false;
      bool paren = c_.accept("(");
      if (c_.accept("-")) negative = true;
      const Rational e = c_.number(false);
      if (paren) c_.expect(")", "')'");
      if (!is_integer(e)) c_.fail_at(col, "exponents must be integers");
      const int ei = numerator_of(e).convert_to<int>();
      if (negative && base.is_zero()) c_.fail_at(col, "division by zero");
      base = base.pow(negative ? -ei : ei);
    }
    return base;
  }
  RationalFunction primary() {
    if (c_.accept("(")) {
      RationalFunction f = sum();
      c_.expect(")", "')'");
      return f;
    }
    if (c_.at_number()) return RationalFunction(c_.number(false));
    const std::size_t col = c_.column();
    if (!ident_start(c_.peek())) c_.fail("expected a number, symbol or '('");
    const std::string name = c_.identifier("a symbol");
    try {
      return RationalFunction(Polynomial::variable(lookup_(name)));
    } catch (const std::exception& e) {
      c_.fail_at(col, e.what());
    }
  }

  Cursor c_;
  const std::function<SymbolId(const std::string&)>& lookup_;
};

}  // namespace

RationalFunction parse_expression(const std::string& text, const std::function<SymbolId(const std::string&)>& lookup) {
  return ExpressionParser(text, lookup).parse();
}

}  // namespace crnt
