#include "prec/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "prec/context.hpp"
#include "prec/engine.hpp"
#include "prec/error.hpp"
#include "prec/pg/pg_json.hpp"
#include "prec/prec0.hpp"
#include "prec/rdf/isomorphism.hpp"
#include "prec/rdf/turtle.hpp"
#include "prec/rdf/vocab.hpp"

namespace prec::cli {

namespace {

// Thrown for unreadable or unwritable files.
class IoError : public Error {
 public:
  using Error::Error;
};

std::string readAll(const std::string& path, std::istream& in) {
  std::ostringstream buffer;
  if (path == "-") {
    buffer << in.rdbuf();
    return buffer.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot read " + path);
  buffer << file.rdbuf();
  return buffer.str();
}

void writeAll(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (!cfg.output || *cfg.output == "-") {
    out << text;
    return;
  }
  std::ofstream file(*cfg.output, std::ios::binary);
  if (!file || !(file << text)) throw IoError("cannot write " + *cfg.output);
}

rdf::PrefixMap outputPrefixes(const RunConfig& cfg) {
  const auto& schema = prec0::defaultSchema();
  rdf::PrefixMap prefixes = {
      {"rdf", std::string(rdf::vocab::kRdf)},   {"rdfs", std::string(rdf::vocab::kRdfs)},
      {"xsd", std::string(rdf::vocab::kXsd)},   {"pgo", schema.pgoNamespace},
      {"prec", schema.precNamespace},           {"pgkey", schema.propertyKeyBase},
  };
  if (!cfg.baseIri.empty()) prefixes.emplace("vocab", cfg.baseIri);
  return prefixes;
}

std::string serialize(const RunConfig& cfg, const rdf::Graph& g) {
  if (cfg.format == OutputFormat::TurtleStar) return rdf::serializeTurtleStar(g, outputPrefixes(cfg));
  return rdf::serializeNTriplesStar(g);
}

Context loadContext(const RunConfig& cfg, std::istream& in) {
  std::string base = cfg.baseIri.empty() ? kDefaultMintBase : cfg.baseIri;
  if (!rdf::isAbsoluteIri(base)) throw ContextError("base IRI is not absolute: " + base);
  std::string text = readAll(*cfg.context, in);
  return parseContext(rdf::parseTurtleStar(text), base);
}

}  // namespace

int cmdDescribe(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
  try {
    pg::PropertyGraph graph = pg::parsePgJson(readAll(cfg.input, in));
    writeAll(cfg, serialize(cfg, prec0::describe(graph)), out);
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

int cmdConvert(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
  if (!cfg.context) return cmdDescribe(cfg, in, out, err);
  rdf::Graph description;
  try {
    description = prec0::describe(pg::parsePgJson(readAll(cfg.input, in)));
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  try {
    Context ctx = loadContext(cfg, in);
    ApplyResult result = applyWithReport(description, ctx);
    if (cfg.explain) {
      for (const auto& r : result.reports) err << r.toString() << "\n";
    }
    auto warnings = lossWarnings(description, ctx);
    for (const auto& w : warnings) err << w.toString() << "\n";
    if (cfg.strict && !warnings.empty()) {
      err << "error: " << warnings.size() << " meta-property loss warning(s) in strict mode\n";
      return kStrictLoss;
    }
    writeAll(cfg, serialize(cfg, result.graph), out);
    return kOk;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "context error: " << e.what() << "\n";
    return kContextError;
  }
}

int cmdRevert(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
  try {
    rdf::Graph g = rdf::parseTurtleStar(readAll(cfg.input, in));
    writeAll(cfg, pg::toPgJson(prec0::revert(g)), out);
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

int cmdValidateContext(const RunConfig& cfg, std::istream& in, std::ostream& out,
                       std::ostream& err) {
  try {
    Context ctx = loadContext(cfg, in);
    out << "ok: " << ctx.propertyRules.size() << " property, " << ctx.edgeRules.size()
        << " edge, " << ctx.nodeLabelRules.size() << " node label, "
        << ctx.metaPropertyRules.size() << " meta-property rule(s), " << ctx.templates.size()
        << " template(s)\n";
    return kOk;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "context error: " << e.what() << "\n";
    return kContextError;
  }
}

int cmdIsomorphic(const std::string& pathA, const std::string& pathB, std::ostream& out,
                  std::ostream& err) {
  try {
    std::istringstream none;
    rdf::Graph a = rdf::parseTurtleStar(readAll(pathA, none));
    rdf::Graph b = rdf::parseTurtleStar(readAll(pathB, none));
    bool same = rdf::isomorphic(a, b);
    out << (same ? "isomorphic" : "not isomorphic") << "\n";
    return same ? kOk : kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Property graph to RDF-star converter", "prec"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format = "ntriples-star";
  auto addOutput = [&](CLI::App* sub) {
    sub->add_option("-o,--output", cfg.output, "Output path (default: standard output)");
    sub->add_option("--format", format, "Output syntax")
        ->check(CLI::IsMember({"ntriples-star", "turtle-star"}));
  };
  auto addBase = [&](CLI::App* sub) {
    sub->add_option("--base", cfg.baseIri, "Base IRI for minted terms")->envname("PREC_BASE_IRI");
  };

  auto* describe = app.add_subcommand("describe", "Describe a property graph in RDF (PREC-0)");
  describe->add_option("--pg", cfg.input, "Property graph JSON ('-' for stdin)")->required();
  addOutput(describe);

  auto* convert = app.add_subcommand("convert", "Describe a property graph, then apply a context");
  convert->add_option("--pg", cfg.input, "Property graph JSON ('-' for stdin)")->required();
  convert->add_option("--context", cfg.context, "Context document (Turtle-star)");
  convert->add_flag("--strict", cfg.strict, "Fail with exit code 2 on meta-property loss");
  convert->add_flag("--explain", cfg.explain, "Print rule matching decisions to stderr");
  addOutput(convert);
  addBase(convert);

  auto* revert = app.add_subcommand("revert", "Rebuild a property graph from its PREC-0 description");
  revert->add_option("--input", cfg.input, "PREC-0 graph, Turtle-star or N-Triples-star")->required();
  revert->add_option("-o,--output", cfg.output, "Output path (default: standard output)");

  auto* validate = app.add_subcommand("validate-context", "Check a context document");
  validate->add_option("--context", cfg.context, "Context document (Turtle-star)")->required();
  addBase(validate);

  std::string pathA, pathB;
  auto* iso = app.add_subcommand("isomorphic", "Compare two RDF-star graphs up to blank nodes");
  iso->add_option("first", pathA)->required();
  iso->add_option("second", pathB)->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }
  cfg.format = format == "turtle-star" ? OutputFormat::TurtleStar : OutputFormat::NTriplesStar;

  if (describe->parsed()) return cmdDescribe(cfg, in, out, err);
  if (convert->parsed()) return cmdConvert(cfg, in, out, err);
  if (revert->parsed()) return cmdRevert(cfg, in, out, err);
  if (validate->parsed()) return cmdValidateContext(cfg, in, out, err);
  return cmdIsomorphic(pathA, pathB, out, err);
}

}  // namespace prec::cli
