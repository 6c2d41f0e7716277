#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace prec::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kStrictLoss = 2,
  kContextError = 3,
};

enum class OutputFormat { NTriplesStar, TurtleStar };

struct RunConfig {
  std::string input;  // "-" reads standard input
  std::optional<std::string> context;
  std::optional<std::string> output;  // unset writes standard output
  OutputFormat format = OutputFormat::NTriplesStar;
  std::string baseIri;
  bool strict = false;
  bool explain = false;
};

int cmdDescribe(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err);
int cmdConvert(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err);
int cmdRevert(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err);
int cmdValidateContext(const RunConfig& cfg, std::istream& in, std::ostream& out,
                       std::ostream& err);
int cmdIsomorphic(const std::string& pathA, const std::string& pathB, std::ostream& out,
                  std::ostream& err);

// Parses `args` (args[0] is the program name) and dispatches.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace prec::cli
