#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "prec/context.hpp"
#include "prec/engine.hpp"
#include "prec/error.hpp"
#include "prec/pg/pg_json.hpp"
#include "prec/prec0.hpp"
#include "prec/rdf/isomorphism.hpp"
#include "prec/rdf/turtle.hpp"

namespace py = pybind11;

namespace {

std::string serialize(const prec::rdf::Graph& g, const std::string& format) {
  if (format == "ntriples-star") return prec::rdf::serializeNTriplesStar(g);
  if (format == "turtle-star") return prec::rdf::serializeTurtleStar(g);
  throw py::value_error("format must be 'ntriples-star' or 'turtle-star'");
}

std::string describe(const std::string& pgJson, const std::string& format) {
  return serialize(prec::prec0::describe(prec::pg::parsePgJson(pgJson)), format);
}

prec::Context loadContext(const std::string& context, const std::optional<std::string>& base) {
  return prec::parseContext(prec::rdf::parseTurtleStar(context),
                            base.value_or(prec::kDefaultMintBase));
}

std::string convert(const std::string& pgJson, const std::optional<std::string>& context,
                    const std::optional<std::string>& base, const std::string& format) {
  auto description = prec::prec0::describe(prec::pg::parsePgJson(pgJson));
  if (!context) return serialize(description, format);
  return serialize(prec::apply(description, loadContext(*context, base)), format);
}

std::vector<std::string> lossWarnings(const std::string& pgJson, const std::string& context) {
  auto description = prec::prec0::describe(prec::pg::parsePgJson(pgJson));
  std::vector<std::string> out;
  for (const auto& w : prec::lossWarnings(description, loadContext(context, std::nullopt)))
    out.push_back(w.toString());
  return out;
}

}  // namespace

PYBIND11_MODULE(_prec, m) {
  m.doc() = "Property graph to RDF-star conversion";

  auto base = py::register_exception<prec::Error>(m, "PrecError", PyExc_RuntimeError);
  py::register_exception<prec::ParseError>(m, "ParseError", base.ptr());
  py::register_exception<prec::PgError>(m, "PgError", base.ptr());
  py::register_exception<prec::MalformedPrec0Error>(m, "MalformedPrec0Error", base.ptr());
  py::register_exception<prec::ContextError>(m, "ContextError", base.ptr());
  py::register_exception<prec::SpecificityTieError>(m, "SpecificityTieError", base.ptr());

  m.def("describe", &describe, py::arg("pg_json"), py::arg("format") = "ntriples-star",
        "PREC-0 description of a property graph given as JSON text.");
  m.def("convert", &convert, py::arg("pg_json"), py::arg("context") = py::none(),
        py::arg("base") = py::none(), py::arg("format") = "ntriples-star",
        "Describe, then apply a context document (Turtle-star text).");
  m.def(
      "revert",
      [](const std::string& rdf) {
        return prec::pg::toPgJson(prec::prec0::revert(prec::rdf::parseTurtleStar(rdf)));
      },
      py::arg("rdf"), "Property graph JSON rebuilt from a PREC-0 description.");
  m.def(
      "isomorphic",
      [](const std::string& a, const std::string& b) {
        return prec::rdf::isomorphic(prec::rdf::parseTurtleStar(a), prec::rdf::parseTurtleStar(b));
      },
      py::arg("a"), py::arg("b"));
  m.def(
      "normalize",
      [](const std::string& rdf) {
        return prec::rdf::serializeNTriplesStar(prec::rdf::parseTurtleStar(rdf));
      },
      py::arg("rdf"), "Parses Turtle-star and writes sorted N-Triples-star.");
  m.def("loss_warnings", &lossWarnings, py::arg("pg_json"), py::arg("context"));
}
