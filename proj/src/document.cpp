#include "latdiv/document.hpp"

#include "latdiv/errors.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace latdiv {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw ParseError(what, 0, 0); }

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

// Parses JSON, rejecting duplicate object keys.
json parse_json(std::string_view text) {
  std::vector<std::set<std::string>> seen;
  json::parser_callback_t guard = [&](int, json::parse_event_t event, json& parsed) {
    switch (event) {
      case json::parse_event_t::object_start:
        seen.emplace_back();
        break;
      case json::parse_event_t::object_end:
        seen.pop_back();
        break;
      case json::parse_event_t::key: {
        const auto key = parsed.get<std::string>();
        if (!seen.back().insert(key).second) fail("duplicate key '" + key + "'");
        break;
      }
      default:
        break;
    }
    return true;
  };
  try {
    return json::parse(text.begin(), text.end(), guard);
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    throw ParseError("syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                         e.what(),
                     line, column);
  }
}

void allow_keys(const json& object, std::initializer_list<std::string_view> allowed, const std::string& where) {
  if (!object.is_object()) fail(where + " must be an object");
  for (const auto& item : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      fail("unknown field '" + item.key() + "' in " + where);
    }
  }
}

std::string string_at(const json& value, const std::string& where) {
  if (!value.is_string()) fail(where + " must be a string");
  return value.get<std::string>();
}

Rational rational_at(const json& value, const std::string& where) {
  std::string literal;
  if (value.is_string()) {
    literal = value.get<std::string>();
  } else if (value.is_number_integer()) {
    literal = value.dump();
  } else {
    fail(where + " must be a rational string or an integer");
  }
  try {
    return parse_rational(literal);
  } catch (const std::invalid_argument& e) {
    fail(where + ": " + e.what());
  }
}

std::map<std::string, Rational> value_map(const json& object, const std::string& where) {
  if (!object.is_object()) fail(where + " must be an object");
  std::map<std::string, Rational> out;
  for (const auto& item : object.items()) {
    out.emplace(item.key(), rational_at(item.value(), where + "." + item.key()));
  }
  return out;
}

std::string dump_rational(const Rational& q) { return json(to_string(q)).dump(); }

}  // namespace

LatDivDocument parse_document(std::string_view text) {
  const json root = parse_json(text);
  allow_keys(root, {"name", "elements", "covers", "diversity", "metadata"}, "document");

  LatDivDocument doc;
  if (root.contains("name")) doc.name = string_at(root["name"], "name");

  if (!root.contains("elements")) fail("missing field 'elements'");
  if (!root["elements"].is_array()) fail("elements must be an array");
  for (std::size_t i = 0; i < root["elements"].size(); ++i) {
    doc.elements.push_back(string_at(root["elements"][i], "elements[" + std::to_string(i) + "]"));
  }

  if (!root.contains("covers")) fail("missing field 'covers'");
  if (!root["covers"].is_array()) fail("covers must be an array");
  for (std::size_t i = 0; i < root["covers"].size(); ++i) {
    const json& pair = root["covers"][i];
    const std::string where = "covers[" + std::to_string(i) + "]";
    if (!pair.is_array() || pair.size() != 2) fail(where + " must be a [lower, upper] pair");
    doc.covers.emplace_back(string_at(pair[0], where), string_at(pair[1], where));
  }

  if (root.contains("diversity")) {
    auto values = value_map(root["diversity"], "diversity");
    const std::set<std::string> names(doc.elements.begin(), doc.elements.end());
    for (const auto& [key, value] : values) {
      if (!names.count(key)) fail("diversity names unknown element '" + key + "'");
    }
    for (const auto& e : names) {
      if (!values.count(e)) fail("diversity has no value for element '" + e + "'");
    }
    doc.diversity = std::move(values);
  }

  if (root.contains("metadata")) {
    if (!root["metadata"].is_object()) fail("metadata must be an object");
    doc.metadata = root["metadata"];
  }
  return doc;
}

LatDivDocument make_document(std::string name, const FiniteLattice& lattice, const std::vector<Rational>* diversity,
                             json metadata) {
  LatDivDocument doc;
  doc.name = std::move(name);
  doc.elements = lattice.names();
  for (const auto& [lo, hi] : lattice.covers()) doc.covers.emplace_back(lattice.name(lo), lattice.name(hi));
  if (diversity) {
    std::map<std::string, Rational> values;
    for (Element a = 0; a < lattice.size(); ++a) values.emplace(lattice.name(a), diversity->at(a));
    doc.diversity = std::move(values);
  }
  doc.metadata = std::move(metadata);
  return doc;
}

std::string serialize(const LatDivDocument& doc) {
  const FiniteLattice lattice = FiniteLattice::from_covers(doc.elements, doc.covers);

  json covers = json::array();
  for (const auto& [lo, hi] : lattice.covers()) covers.push_back({lattice.name(lo), lattice.name(hi)});

  std::vector<std::pair<std::string, std::string>> lines;
  lines.emplace_back("covers", covers.dump());
  if (doc.diversity) {
    std::string body = "{";
    bool first = true;
    for (const auto& [key, value] : *doc.diversity) {
      if (!first) body += ",";
      first = false;
      body += json(key).dump() + ":" + dump_rational(value);
    }
    lines.emplace_back("diversity", body + "}");
  }
  lines.emplace_back("elements", json(lattice.names()).dump());
  if (!doc.metadata.empty()) lines.emplace_back("metadata", doc.metadata.dump());
  lines.emplace_back("name", json(doc.name).dump());

  std::string out = "{\n";
  for (std::size_t i = 0; i < lines.size(); ++i) {
    out += "  " + json(lines[i].first).dump() + ": " + lines[i].second;
    out += i + 1 < lines.size() ? ",\n" : "\n";
  }
  return out + "}\n";
}

LoadedDocument load_document(std::string_view text) {
  LoadedDocument out{parse_document(text), nullptr, std::nullopt};
  out.lattice = share(FiniteLattice::from_covers(out.doc.elements, out.doc.covers));
  if (out.doc.diversity) {
    std::vector<Rational> values(out.lattice->size());
    for (Element a = 0; a < out.lattice->size(); ++a) values[a] = out.doc.diversity->at(out.lattice->name(a));
    out.diversity.emplace(out.lattice, std::move(values));
    out.diversity->validate();
  }
  return out;
}

std::vector<Rational> parse_point_file(std::string_view text, const FiniteLattice& lattice) {
  const json root = parse_json(text);
  allow_keys(root, {"values"}, "point file");
  if (!root.contains("values")) fail("point file has no 'values'");
  const auto values = value_map(root["values"], "values");
  std::vector<Rational> out(lattice.size());
  std::vector<bool> seen(lattice.size(), false);
  for (const auto& [key, value] : values) {
    const Element a = lattice.index(key);
    out[a] = value;
    seen[a] = true;
  }
  for (Element a = 0; a < lattice.size(); ++a) {
    if (!seen[a]) fail("point file has no value for element '" + lattice.name(a) + "'");
  }
  return out;
}

FiniteMetric parse_metric_file(std::string_view text, const std::vector<std::string>& points) {
  const json root = parse_json(text);
  allow_keys(root, {"distances"}, "metric file");
  if (!root.contains("distances") || !root["distances"].is_array()) fail("metric file needs a 'distances' array");

  const std::size_t n = points.size();
  FiniteMetric metric{points, std::vector<Rational>(n * n, 0)};
  std::vector<bool> seen(n * n, false);
  auto index = [&](const std::string& p, const std::string& where) {
    const auto it = std::find(points.begin(), points.end(), p);
    if (it == points.end()) fail(where + " names unknown point '" + p + "'");
    return static_cast<std::size_t>(it - points.begin());
  };
  for (std::size_t k = 0; k < root["distances"].size(); ++k) {
    const json& row = root["distances"][k];
    const std::string where = "distances[" + std::to_string(k) + "]";
    if (!row.is_array() || row.size() != 3) fail(where + " must be [x, y, distance]");
    const std::size_t i = index(string_at(row[0], where), where);
    const std::size_t j = index(string_at(row[1], where), where);
    if (i == j) fail(where + " is a diagonal entry");
    if (seen[i * n + j]) fail(where + " repeats the pair (" + points[i] + ", " + points[j] + ")");
    const Rational d = rational_at(row[2], where);
    metric.dist[i * n + j] = d;
    metric.dist[j * n + i] = d;
    seen[i * n + j] = seen[j * n + i] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!seen[i * n + j]) fail("metric file has no distance for (" + points[i] + ", " + points[j] + ")");
    }
  }
  if (auto why = metric.violation()) throw ValidationError("metric file is not a metric: " + *why);
  return metric;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace latdiv
