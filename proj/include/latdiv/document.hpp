#pragma once

#include "latdiv/diversity.hpp"
#include "latdiv/lattice.hpp"
#include "latdiv/rational.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace latdiv {

/// On-disk form of a lattice with an optional diversity.
///
///   {"covers": [["lo","hi"], ...],
///    "diversity": {"elem": "p/q", ...},
///    "elements": ["elem", ...],
///    "metadata": {...},
///    "name": "..."}
///
/// Rationals are strings ("3", "-1/2") or JSON integers. Only "elements"
/// and "covers" are required.
struct LatDivDocument {
  std::string name;
  std::vector<std::string> elements;
  std::vector<NamePair> covers;
  std::optional<std::map<std::string, Rational>> diversity;
  nlohmann::json metadata = nlohmann::json::object();
};

/// Throws ParseError for malformed text, duplicate keys, unknown fields, bad
/// rationals, or diversity entries that do not name every element exactly
/// once. Lattice errors from from_covers propagate unchanged.
LatDivDocument parse_document(std::string_view text);

/// Canonical text: keys sorted, one top-level key per line, elements in the
/// lattice's canonical order, Hasse-reduced covers in index order, rationals
/// in lowest terms. Throws whatever from_covers throws.
std::string serialize(const LatDivDocument& doc);

/// Document for a lattice and (optionally) diversity values, in canonical order.
LatDivDocument make_document(std::string name, const FiniteLattice& lattice,
                             const std::vector<Rational>* diversity = nullptr,
                             nlohmann::json metadata = nlohmann::json::object());

struct LoadedDocument {
  LatDivDocument doc;
  LatticePtr lattice;
  /// Validated (possibly invalid) diversity, when the document has one.
  std::optional<DiversityFn> diversity;
};

/// parse_document, from_covers and validate.
LoadedDocument load_document(std::string_view text);

/// {"values": {"elem": "p/q", ...}} naming every element of `lattice`.
/// Throws ParseError or UnknownElement.
std::vector<Rational> parse_point_file(std::string_view text, const FiniteLattice& lattice);

/// {"distances": [["x","y","q"], ...]} over every unordered pair of distinct
/// points. The diagonal is 0. Throws ParseError or ValidationError when the
/// result is not a metric.
FiniteMetric parse_metric_file(std::string_view text, const std::vector<std::string>& points);

/// Whole-file read. Throws Error when the file cannot be opened.
std::string read_file(const std::string& path);

}  // namespace latdiv
