// crnt: command-line front end.
//
// Exit status: 0 success, 1 analysis refusal or failed verification, 2 parse error.

#include "crnt/io.hpp"
#include "crnt/linalg.hpp"
#include "crnt/network.hpp"
#include "crnt/parametrization.hpp"
#include "crnt/translation.hpp"
#include "crnt/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>

using namespace crnt;
using Json = nlohmann::ordered_json;

namespace {

struct Options {
  std::string file;
  std::string scheme;
  std::string vstar;
  bool json = false;
  bool latex = false;
  bool auto_phantom = false;
  std::size_t samples = 100;
  std::uint64_t seed = 42;
  double tol = 1e-8;
};

struct Prepared {
  Gcrn network;
  std::optional<TranslationCertificate> certificate;
};

Prepared prepare(const Options& o) {
  ParsedNetwork parsed = read_network_file(o.file);
  if (o.scheme.empty()) return {parsed.network, std::nullopt};
  if (!parsed.classical) throw std::invalid_argument("a translation scheme needs an @mas network");
  const auto scheme = resolve_scheme(read_scheme_file(o.scheme), parsed);
  auto t = translate(parsed.network, scheme);
  auto cert = certify(parsed.network, t.network, t.edge_map);
  return {std::move(t.network), std::move(cert)};
}

VertexSet parse_vstar(const std::string& text) {
  VertexSet out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const int id = std::stoi(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad vertex id '" + item + "' in --vstar");
    out.insert(id);
  }
  return out;
}

Json partition_json(const VertexPartition& p) {
  Json out = Json::array();
  for (const auto& cls : p) out.push_back(cls);
  return out;
}

Json structure_json(const Gcrn& net) {
  const auto r = structure_report(net);
  Json doc;
  doc["species"] = net.species_count();
  doc["vertices"] = r.vertex_count;
  doc["linkage_classes"] = r.linkage_count;
  doc["stoichiometric_rank"] = r.stoichiometric_rank;
  doc["kinetic_rank"] = r.kinetic_rank ? Json(*r.kinetic_rank) : Json();
  doc["deficiency"] = r.deficiency;
  doc["deficiency_by_intersection"] =
      deficiency_by_intersection(net.stoichiometric_matrix(), net.incidence_matrix());
  doc["kinetic_deficiency"] = r.kinetic_deficiency ? Json(*r.kinetic_deficiency) : Json();
  doc["effective_deficiency"] = r.effective_deficiency;
  doc["weakly_reversible"] = r.weakly_reversible;
  doc["classical"] = net.is_classical();
  doc["linkage"] = partition_json(r.linkage_classes);
  doc["strong_linkage"] = partition_json(r.strong_linkage_classes);
  return doc;
}

std::string structure_text(const Json& s) {
  std::ostringstream out;
  for (const auto& [key, value] : s.items()) out << key << ": " << value.dump() << "\n";
  return out.str();
}

Json substitution_json(const Gcrn& net, const std::map<SymbolId, Polynomial>& sub) {
  Json out = Json::object();
  const auto name = net.symbols().namer();
  for (const auto& [s, p] : sub) out[name(s)] = p.to_string(name);
  return out;
}

Json certificate_json(const TranslationCertificate& c) {
  return Json{{"reaction_vectors_preserved", c.reaction_vectors_preserved},
              {"source_complexes_related", c.source_complexes_related},
              {"ode_difference_zero", c.difference.is_zero()},
              {"valid", c.valid()}};
}

int cmd_analyze(const Options& o) {
  const auto prepared = prepare(o);
  const Json doc = structure_json(prepared.network);
  std::cout << (o.json ? doc.dump(2) + "\n" : structure_text(doc));
  return 0;
}

int cmd_condense(const Options& o) {
  const auto net = prepare(o).network;
  const auto c = condense(net);
  if (o.json) {
    Json doc;
    doc["classes"] = partition_json(c.classes);
    Json complexes = Json::array();
    for (const auto& x : c.class_complexes) complexes.push_back(x.to_string(net.species()));
    doc["complexes"] = complexes;
    Json edges = Json::array();
    for (const auto& [a, b] : c.edges) edges.push_back({a + 1, b + 1});
    doc["edges"] = edges;
    std::cout << doc.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < c.classes.size(); ++i) {
      std::cout << "# class " << i + 1 << " = {";
      for (std::size_t j = 0; j < c.classes[i].size(); ++j) std::cout << (j ? ", " : "") << "v" << c.classes[i][j];
      std::cout << "}\n";
    }
    std::cout << render_network(c.as_classical(net.species()));
  }
  return 0;
}

int cmd_redirect(const Options& o) {
  const auto net = prepare(o).network;
  const VertexSet vstar = o.vstar.empty() ? default_vstar(net) : parse_vstar(o.vstar);
  const auto r = redirect(net, vstar);
  if (o.json) {
    Json doc;
    doc["vstar"] = vstar;
    doc["network"] = render_network(r.network);
    doc["substitution"] = substitution_json(r.network, r.substitution);
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << render_network(r.network);
    const auto name = r.network.symbols().namer();
    for (const auto& [s, p] : r.substitution) std::cout << "# " << name(s) << " = " << p.to_string(name) << "\n";
  }
  return 0;
}

int cmd_translate(const Options& o) {
  auto prepared = prepare(o);
  Gcrn net = prepared.network;
  std::map<SymbolId, Polynomial> substitution;
  if (o.auto_phantom) {
    auto r = redirect(net, default_vstar(net));
    net = std::move(r.network);
    substitution = std::move(r.substitution);
  }
  const auto& cert = *prepared.certificate;
  if (o.json) {
    Json doc;
    doc["network"] = render_network(net);
    doc["certificate"] = certificate_json(cert);
    doc["substitution"] = substitution_json(net, substitution);
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << render_network(net);
    const auto name = net.symbols().namer();
    for (const auto& [s, p] : substitution) std::cout << "# " << name(s) << " = " << p.to_string(name) << "\n";
    std::cout << "# certificate: " << (cert.valid() ? "valid" : "INVALID") << "\n";
  }
  return cert.valid() ? 0 : 1;
}

struct Pipeline {
  Gcrn network;
  VertexSet vstar;
  std::map<SymbolId, Polynomial> substitution;
  std::optional<TranslationCertificate> certificate;
  Parametrization parametrization;
};

Pipeline run_pipeline(const Options& o) {
  auto prepared = prepare(o);
  Pipeline p;
  p.certificate = std::move(prepared.certificate);
  p.vstar = o.vstar.empty() ? default_vstar(prepared.network) : parse_vstar(o.vstar);
  auto r = redirect(prepared.network, p.vstar);
  p.network = std::move(r.network);
  p.substitution = std::move(r.substitution);
  ParametrizeOptions options;
  options.vstar = p.vstar;
  p.parametrization = parametrize(p.network, options);
  return p;
}

int cmd_parametrize(const Options& o) {
  const auto p = run_pipeline(o);
  const auto acr = detect_acr(p.parametrization);
  const auto name = p.parametrization.symbols.namer();
  if (o.json) {
    Json doc;
    doc["network"] = render_network(p.network);
    doc["vstar"] = p.vstar;
    doc["substitution"] = substitution_json(p.network, p.substitution);
    if (p.certificate) doc["certificate"] = certificate_json(*p.certificate);
    doc["structure"] = structure_json(p.network);
    doc["parametrization"] = Json::parse(emit(p.parametrization, EmitFormat::Json));
    Json robust = Json::array();
    for (const auto& e : acr.entries) {
      if (!e.robust) continue;
      robust.push_back({{"species", p.parametrization.species[e.species]},
                        {"value", e.value ? Json(e.value->to_string(name)) : Json()}});
    }
    doc["acr"] = robust;
    std::cout << doc.dump(2) << "\n";
  } else if (o.latex) {
    std::cout << emit(p.parametrization, EmitFormat::Latex);
  } else {
    std::cout << "# X = Zbar: " << (p.parametrization.x_equals_zbar ? "yes" : "no")
              << ", kinetic deficiency " << p.parametrization.kinetic_deficiency << "\n";
    std::cout << emit(p.parametrization, EmitFormat::Text);
    for (const auto& e : acr.entries) {
      if (e.robust) std::cout << "# ACR: " << p.parametrization.species[e.species] << "\n";
    }
  }
  return 0;
}

int cmd_verify(const Options& o) {
  const auto p = run_pipeline(o);
  VerifyOptions v;
  v.samples = o.samples;
  v.seed = o.seed;
  v.tol = o.tol;
  const auto report = numeric_verify(p.network, p.parametrization, v);
  Json doc;
  doc["samples"] = report.samples.size();
  doc["seed"] = o.seed;
  doc["tol"] = o.tol;
  doc["max_ode_residual"] = report.max_ode;
  doc["max_complex_balance_residual"] = report.max_complex_balance;
  doc["max_log_linear_residual"] = report.max_log_linear;
  doc["failures"] = report.failures;
  doc["passed"] = report.passed();
  std::cout << (o.json ? doc.dump(2) + "\n" : structure_text(doc));
  return report.passed() ? 0 : 1;
}

int report_error(const Options& o, const std::string& kind, const std::string& message, int status,
                 const ParseError* parse = nullptr) {
  if (o.json) {
    Json doc;
    doc["error"] = kind;
    doc["message"] = message;
    if (parse && parse->line() > 0) {
      doc["line"] = parse->line();
      doc["column"] = parse->column();
    }
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cerr << "error: " << message << "\n";
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibrium parametrizations of generalized mass-action systems"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("file", o.file, "network file")->required();
    sub->add_flag("--json", o.json, "machine-readable output");
  };
  auto add_scheme = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--scheme", o.scheme, "translation scheme file");
    if (required) opt->required();
  };

  auto* analyze = app.add_subcommand("analyze", "structural report");
  add_common(analyze);
  add_scheme(analyze, false);
  auto* condense_cmd = app.add_subcommand("condense", "condensed network");
  add_common(condense_cmd);
  add_scheme(condense_cmd, false);
  auto* redirect_cmd = app.add_subcommand("redirect", "V*-directed network");
  add_common(redirect_cmd);
  add_scheme(redirect_cmd, false);
  redirect_cmd->add_option("--vstar", o.vstar, "comma-separated representative vertex ids");
  auto* translate_cmd = app.add_subcommand("translate", "apply a translation scheme");
  add_common(translate_cmd);
  add_scheme(translate_cmd, true);
  translate_cmd->add_flag("--auto-phantom", o.auto_phantom, "redirect and add missing phantom edges");
  auto* parametrize_cmd = app.add_subcommand("parametrize", "equilibrium parametrization");
  add_common(parametrize_cmd);
  add_scheme(parametrize_cmd, false);
  parametrize_cmd->add_option("--vstar", o.vstar, "comma-separated representative vertex ids");
  parametrize_cmd->add_flag("--latex", o.latex, "display-math output");
  auto* verify_cmd = app.add_subcommand("verify", "numeric residual check");
  add_common(verify_cmd);
  add_scheme(verify_cmd, false);
  verify_cmd->add_option("--vstar", o.vstar, "comma-separated representative vertex ids");
  verify_cmd->add_option("--samples", o.samples, "number of samples");
  verify_cmd->add_option("--seed", o.seed, "random seed");
  verify_cmd->add_option("--tol", o.tol, "relative residual tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*analyze) return cmd_analyze(o);
    if (*condense_cmd) return cmd_condense(o);
    if (*redirect_cmd) return cmd_redirect(o);
    if (*translate_cmd) return cmd_translate(o);
    if (*parametrize_cmd) return cmd_parametrize(o);
    return cmd_verify(o);
  } catch (const ParseError& e) {
    return report_error(o, "parse", e.what(), 2, &e);
  } catch (const ConditionNotSolvable& e) {
    return report_error(o, "condition_not_solvable", e.what(), 1);
  } catch (const AnalysisError& e) {
    return report_error(o, "analysis", e.what(), 1);
  } catch (const NetworkError& e) {
    return report_error(o, "network", e.what(), 1);
  } catch (const std::invalid_argument& e) {
    return report_error(o, "invalid_input", e.what(), 1);
  } catch (const std::exception& e) {
    return report_error(o, "internal", e.what(), 1);
  }
}
