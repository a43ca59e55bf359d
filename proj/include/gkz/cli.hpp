#pragma once

#include "gkz/classify.hpp"
#include "gkz/hypergeom.hpp"
#include "gkz/residue.hpp"

#include <json.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace gkz::cli {

using json = nlohmann::json;

inline constexpr const char *kSchemaVersion = "1.0";

const std::vector<std::string> &commands();

struct Params {
  std::optional<std::array<long, 2>> gamma, alpha, beta, a;
  std::optional<std::array<long, 3>> c;
  std::optional<long> order, box, bound, oracle_samples;
  std::optional<std::vector<long>> v;
  std::optional<std::vector<Integer>> degree;
  std::optional<std::string> fixture, semantics;
  std::optional<RationalFunction> function;
  std::optional<bool> balanced7;
};

struct AnalysisRequest {
  std::string command;
  std::optional<IntMatrix> A;
  std::optional<PlanarConfig> B;
  Params params;
  unsigned long seed = 0;
};

struct AnalysisReport {
  std::string command;
  json result; // null unless status is "ok"
  std::vector<json> diagnostics;
  int exit_code = 0;
  unsigned long seed = 0;

  std::string status() const;
  json to_json() const;
};

/// Validates a request document; throws InputError carrying the JSON path of
/// the first offending field ("params.c[2]", "gale_B[4][0]", ...).
AnalysisRequest parse_request(const json &doc);
// Parses bytes first; malformed JSON is reported with its byte offset.
AnalysisRequest parse_request(const std::string &text);

/// Never throws: errors become diagnostics and exit codes 1 (precondition)
/// or 2 (input).
AnalysisReport run(const AnalysisRequest &req);

// Validate and run a parsed document; `command` fills in a missing
// "command" field and must agree with a present one. `seed` applies when the
// document has none. Input errors become exit-2 reports.
AnalysisReport run_document(json doc, unsigned long seed, const std::string &command = {});
// Same, starting from raw bytes.
AnalysisReport run_text(const std::string &text, unsigned long seed, const std::string &command = {});

// Serialization helpers shared with the tests.
json to_json(const Rational &q);
json to_json(const Scalar &s);
json to_json(const LaurentPolynomial &p);
json to_json(const TruncatedSeries &s);
json to_json(const RationalFunction &f, const std::vector<std::string> &names = {});
json index_set_json(const IndexSet &s); // 1-based

Scalar parse_scalar(const json &j, const std::string &path);
LaurentPolynomial parse_polynomial(const json &j, const std::string &path, std::size_t nvars);
RationalFunction parse_function(const json &j, const std::string &path);

} // namespace gkz::cli
