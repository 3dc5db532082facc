#include "ilscm/io.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ilscm/error.hpp"

namespace ilscm {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::array<std::string_view, 10> kProfileFields{
    "name", "first_name", "last_name", "link", "username",
    "gender", "type", "locale", "hometown", "email"};

json parse_json(std::string_view document) {
  try {
    return json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, document.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (document[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("malformed JSON at line " + std::to_string(line) + ", column " +
                     std::to_string(column) + ": " + e.what());
  }
}

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw ParseError("schema violation at " + path + ": " + what);
}

const json& member(const json& obj, const char* name, const std::string& path) {
  auto it = obj.find(name);
  if (it == obj.end()) schema_error(path, std::string("missing required field \"") + name + "\"");
  return *it;
}

std::string as_string(const json& value, const std::string& path) {
  if (!value.is_string()) schema_error(path, "expected a string");
  return value.get<std::string>();
}

const json& as_array(const json& value, const std::string& path) {
  if (!value.is_array()) schema_error(path, "expected an array");
  return value;
}

const json& as_object(const json& value, const std::string& path) {
  if (!value.is_object()) schema_error(path, "expected an object");
  return value;
}

template <typename Int>
Int as_integer(const json& value, const std::string& path) {
  if (!value.is_number_integer()) schema_error(path, "expected an integer");
  if constexpr (std::is_unsigned_v<Int>) {
    if (!value.is_number_unsigned()) schema_error(path, "expected a non-negative integer");
  }
  return value.get<Int>();
}

double as_number(const json& value, const std::string& path) {
  if (!value.is_number()) schema_error(path, "expected a number");
  return value.get<double>();
}

VertexId as_vertex_id(const json& value, const std::string& path) {
  try {
    return VertexId(as_string(value, path));
  } catch (const IntegrityError& e) {
    schema_error(path, e.what());
  }
}

Vertex parse_vertex(const json& node, const std::string& path) {
  as_object(node, path);
  Vertex v{as_vertex_id(member(node, "id", path), path + ".id"), {}};
  for (const auto& [field, value] : node.items()) {
    if (field == "id") continue;
    if (std::find(kProfileFields.begin(), kProfileFields.end(), field) == kProfileFields.end()) {
      schema_error(path, "unknown vertex attribute \"" + field + "\"");
    }
    v.attributes.emplace(field, as_string(value, path + "." + field));
  }
  return v;
}

Interaction parse_interaction(const json& node, const std::string& path) {
  as_object(node, path);
  Interaction it;
  const auto kind = as_string(member(node, "kind", path), path + ".kind");
  auto parsed = parse_interaction_kind(kind);
  if (!parsed) schema_error(path + ".kind", "unknown interaction kind \"" + kind + "\"");
  it.kind = *parsed;
  if (auto text = node.find("text"); text != node.end()) it.text = as_string(*text, path + ".text");
  const auto stamp = as_string(member(node, "timestamp", path), path + ".timestamp");
  try {
    it.timestamp = parse_timestamp(stamp);
  } catch (const ParseError& e) {
    schema_error(path + ".timestamp", e.what());
  }
  for (const auto& [field, value] : node.items()) {
    if (field != "kind" && field != "text" && field != "timestamp") {
      schema_error(path, "unknown interaction field \"" + field + "\"");
    }
  }
  return it;
}

Edge parse_edge(const json& node, const std::string& path) {
  as_object(node, path);
  auto source = as_vertex_id(member(node, "source", path), path + ".source");
  auto target = as_vertex_id(member(node, "target", path), path + ".target");
  Edge edge{EdgeKey(source, target), {}};
  if (auto list = node.find("interactions"); list != node.end()) {
    const auto ipath = path + ".interactions";
    std::size_t k = 0;
    for (const auto& item : as_array(*list, ipath)) {
      edge.interactions.push_back(parse_interaction(item, ipath + "[" + std::to_string(k++) + "]"));
    }
  }
  return edge;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

Weight parse_weight(std::string_view cell, const std::string& where) {
  cell = trim(cell);
  Weight w = 0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), w);
  if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw ParseError(where + ": expected a non-negative integer weight, got '" + std::string(cell) + "'");
  }
  return w;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(sep, start);
    cells.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return cells;
}

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

ordered_json config_json(const DetectionResult& result) {
  ordered_json config;
  config["source"] = result.source == ResultSource::graph ? "graph" : "matrix";
  config["mode"] = std::string(to_string(result.config.mode));
  config["lambda"] = result.config.lambda;
  if (result.source == ResultSource::graph) {
    ordered_json keys = ordered_json::array();
    for (const auto& k : result.config.keys) keys.push_back(k.str());
    config["keys"] = std::move(keys);
    config["rho_min"] = result.config.thresholds.rho_min;
    config["beta"] = result.config.thresholds.beta;
    config["bins"] = ordered_json{{"origin", result.config.bins.origin},
                                  {"width", result.config.bins.bin_width},
                                  {"count", result.config.bins.bin_count}};
  }
  return config;
}

std::string communities_json(const DetectionResult& result) {
  ordered_json doc;
  doc["config"] = config_json(result);
  ordered_json communities = ordered_json::array();
  for (const auto& c : result.communities) {
    ordered_json node;
    node["id"] = c.id;
    ordered_json vertices = ordered_json::array();
    for (const auto& v : c.vertices) vertices.push_back(v.str());
    node["vertices"] = std::move(vertices);
    ordered_json edges = ordered_json::array();
    for (const auto& e : c.edges) {
      edges.push_back(ordered_json{{"source", e.edge.first().str()},
                                   {"target", e.edge.second().str()},
                                   {"weight", e.weight},
                                   {"burst_words", e.burst_words}});
    }
    node["edges"] = std::move(edges);
    communities.push_back(std::move(node));
  }
  doc["communities"] = std::move(communities);

  const auto& m = result.matrix;
  ordered_json order = ordered_json::array();
  for (const auto& v : m.order()) order.push_back(v.str());
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m.at(i, j));
    rows.push_back(std::move(row));
  }
  doc["matrix"] = ordered_json{{"order", std::move(order)}, {"weights", std::move(rows)}};
  return doc.dump(2) + "\n";
}

std::string dot(const DetectionResult& result) {
  std::ostringstream out;
  out << "graph ilscm {\n";
  std::set<VertexId> clustered;
  std::set<EdgeKey> kept;
  for (const auto& c : result.communities) {
    out << "  subgraph cluster_" << c.id << " {\n";
    out << "    label=\"community " << c.id << "\";\n";
    for (const auto& v : c.vertices) {
      out << "    " << dot_quote(v.str()) << ";\n";
      clustered.insert(v);
    }
    out << "  }\n";
    for (const auto& e : c.edges) kept.insert(e.edge);
  }
  const auto& m = result.matrix;
  for (const auto& v : m.order()) {
    if (!clustered.count(v)) out << "  " << dot_quote(v.str()) << ";\n";
  }
  for (auto [i, j] : m.positive_pairs()) {
    EdgeKey key(m.order()[i], m.order()[j]);
    out << "  " << dot_quote(key.first().str()) << " -- " << dot_quote(key.second().str())
        << " [label=\"w=" << m.at(i, j) << "\"" << (kept.count(key) ? ", style=bold" : "")
        << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string adjacency_csv(const WeightedAdjacency& m) {
  std::ostringstream out;
  for (std::size_t i = 0; i < m.size(); ++i) out << (i ? "," : "") << m.order()[i].str();
  out << "\n";
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) out << (j ? "," : "") << m.at(i, j);
    out << "\n";
  }
  return out.str();
}

int two_digits(std::string_view s, std::size_t pos) {
  if (pos + 2 > s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])) ||
      !std::isdigit(static_cast<unsigned char>(s[pos + 1]))) {
    return -1;
  }
  return (s[pos] - '0') * 10 + (s[pos + 1] - '0');
}

}  // namespace

SocialGraph parse_graph(std::string_view document) {
  const json doc = parse_json(document);
  as_object(doc, "$");
  std::vector<Vertex> vertices;
  std::size_t k = 0;
  for (const auto& node : as_array(member(doc, "vertices", "$"), "$.vertices")) {
    vertices.push_back(parse_vertex(node, "$.vertices[" + std::to_string(k++) + "]"));
  }
  std::vector<Edge> edges;
  k = 0;
  for (const auto& node : as_array(member(doc, "edges", "$"), "$.edges")) {
    edges.push_back(parse_edge(node, "$.edges[" + std::to_string(k++) + "]"));
  }
  for (const auto& [field, value] : doc.items()) {
    if (field != "vertices" && field != "edges") schema_error("$", "unknown field \"" + field + "\"");
  }
  return SocialGraph(std::move(vertices), std::move(edges));
}

std::string export_graph(const SocialGraph& graph) {
  ordered_json vertices = ordered_json::array();
  for (const auto& v : graph.vertices()) {
    ordered_json node;
    node["id"] = v.id.str();
    for (const auto& [field, value] : v.attributes) node[field] = value;
    vertices.push_back(std::move(node));
  }
  ordered_json edges = ordered_json::array();
  for (const auto& e : graph.edges()) {
    ordered_json interactions = ordered_json::array();
    for (const auto& it : e.interactions) {
      interactions.push_back(ordered_json{{"kind", std::string(to_string(it.kind))},
                                          {"text", it.text},
                                          {"timestamp", format_timestamp(it.timestamp)}});
    }
    edges.push_back(ordered_json{{"source", e.key.first().str()},
                                 {"target", e.key.second().str()},
                                 {"interactions", std::move(interactions)}});
  }
  ordered_json doc;
  doc["vertices"] = std::move(vertices);
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

std::vector<ContextKey> parse_keys(std::string_view text, const Tokenizer& tokenizer) {
  std::vector<ContextKey> keys;
  std::size_t line_no = 0;
  for (auto raw : split_lines(text)) {
    ++line_no;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    try {
      auto key = ContextKey::parse(line, tokenizer);
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(std::move(key));
    } catch (const InvalidArgument& e) {
      throw ParseError("key file line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (keys.empty()) throw ParseError("no usable context keys");
  return keys;
}

std::optional<ExportFormat> parse_export_format(std::string_view name) noexcept {
  if (name == "communities_json") return ExportFormat::communities_json;
  if (name == "dot") return ExportFormat::dot;
  if (name == "adjacency_csv") return ExportFormat::adjacency_csv;
  return std::nullopt;
}

std::string export_result(const DetectionResult& result, ExportFormat format) {
  switch (format) {
    case ExportFormat::communities_json:
      return communities_json(result);
    case ExportFormat::dot:
      return dot(result);
    case ExportFormat::adjacency_csv:
      return adjacency_csv(result.matrix);
  }
  return {};
}

DetectionResult parse_result(std::string_view document) {
  const json doc = parse_json(document);
  as_object(doc, "$");
  DetectionResult result;

  const auto& config = as_object(member(doc, "config", "$"), "$.config");
  const auto source = as_string(member(config, "source", "$.config"), "$.config.source");
  if (source == "graph") {
    result.source = ResultSource::graph;
  } else if (source == "matrix") {
    result.source = ResultSource::matrix;
  } else {
    schema_error("$.config.source", "expected \"graph\" or \"matrix\"");
  }
  const auto mode = as_string(member(config, "mode", "$.config"), "$.config.mode");
  if (mode == "weight") {
    result.config.mode = DetectionMode::weight;
  } else if (mode == "betweenness") {
    result.config.mode = DetectionMode::vertex_betweenness;
  } else {
    schema_error("$.config.mode", "expected \"weight\" or \"betweenness\"");
  }
  result.config.lambda = as_number(member(config, "lambda", "$.config"), "$.config.lambda");
  if (result.source == ResultSource::graph) {
    for (const auto& k : as_array(member(config, "keys", "$.config"), "$.config.keys")) {
      try {
        result.config.keys.push_back(ContextKey::parse(as_string(k, "$.config.keys")));
      } catch (const InvalidArgument& e) {
        schema_error("$.config.keys", e.what());
      }
    }
    result.config.thresholds.rho_min =
        as_number(member(config, "rho_min", "$.config"), "$.config.rho_min");
    result.config.thresholds.beta = as_number(member(config, "beta", "$.config"), "$.config.beta");
    const auto& bins = as_object(member(config, "bins", "$.config"), "$.config.bins");
    result.config.bins.origin =
        as_integer<std::int64_t>(member(bins, "origin", "$.config.bins"), "$.config.bins.origin");
    result.config.bins.bin_width =
        as_integer<std::int64_t>(member(bins, "width", "$.config.bins"), "$.config.bins.width");
    result.config.bins.bin_count =
        as_integer<std::size_t>(member(bins, "count", "$.config.bins"), "$.config.bins.count");
  }

  const auto& matrix = as_object(member(doc, "matrix", "$"), "$.matrix");
  std::vector<VertexId> order;
  for (const auto& v : as_array(member(matrix, "order", "$.matrix"), "$.matrix.order")) {
    order.push_back(as_vertex_id(v, "$.matrix.order"));
  }
  std::vector<Weight> weights;
  const auto& rows = as_array(member(matrix, "weights", "$.matrix"), "$.matrix.weights");
  if (rows.size() != order.size()) schema_error("$.matrix.weights", "row count does not match order");
  for (const auto& row : rows) {
    as_array(row, "$.matrix.weights");
    if (row.size() != order.size()) schema_error("$.matrix.weights", "ragged row");
    for (const auto& cell : row) weights.push_back(as_integer<Weight>(cell, "$.matrix.weights"));
  }
  try {
    result.matrix = WeightedAdjacency(std::move(order), std::move(weights));
  } catch (const InvalidArgument& e) {
    schema_error("$.matrix", e.what());
  }

  std::size_t k = 0;
  for (const auto& node : as_array(member(doc, "communities", "$"), "$.communities")) {
    const auto path = "$.communities[" + std::to_string(k++) + "]";
    as_object(node, path);
    Community c;
    c.id = as_integer<std::size_t>(member(node, "id", path), path + ".id");
    for (const auto& v : as_array(member(node, "vertices", path), path + ".vertices")) {
      c.vertices.push_back(as_vertex_id(v, path + ".vertices"));
    }
    for (const auto& e : as_array(member(node, "edges", path), path + ".edges")) {
      as_object(e, path + ".edges");
      CommunityEdge ce{EdgeKey(as_vertex_id(member(e, "source", path), path + ".source"),
                               as_vertex_id(member(e, "target", path), path + ".target")),
                       as_integer<Weight>(member(e, "weight", path), path + ".weight"),
                       {}};
      for (const auto& w : as_array(member(e, "burst_words", path), path + ".burst_words")) {
        ce.burst_words.push_back(as_string(w, path + ".burst_words"));
      }
      c.edges.push_back(std::move(ce));
    }
    result.communities.push_back(std::move(c));
  }
  return result;
}

WeightedAdjacency parse_adjacency_csv(std::string_view text) {
  auto lines = split_lines(text);
  while (!lines.empty() && lines.back().empty() && lines.size() > 1) lines.pop_back();
  if (lines.empty()) throw ParseError("adjacency CSV is empty");

  std::vector<VertexId> order;
  if (!lines.front().empty()) {
    for (auto cell : split(lines.front(), ',')) {
      try {
        order.emplace_back(std::string(trim(cell)));
      } catch (const IntegrityError& e) {
        throw ParseError(std::string("adjacency CSV header: ") + e.what());
      }
    }
  }
  const std::size_t n = order.size();
  if (lines.size() - 1 != n) {
    throw ParseError("adjacency CSV has " + std::to_string(lines.size() - 1) + " rows, expected " +
                     std::to_string(n));
  }
  std::vector<Weight> weights;
  weights.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto where = "adjacency CSV line " + std::to_string(i + 2);
    auto cells = split(lines[i + 1], ',');
    if (cells.size() != n) {
      throw ParseError(where + ": expected " + std::to_string(n) + " cells, got " +
                       std::to_string(cells.size()));
    }
    for (auto cell : cells) weights.push_back(parse_weight(cell, where));
  }
  try {
    return WeightedAdjacency(std::move(order), std::move(weights));
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("adjacency CSV: ") + e.what());
  }
}

WeightedAdjacency parse_weight_triples(std::string_view text) {
  std::map<EdgeKey, Weight> triples;
  std::set<VertexId> vertices;
  std::size_t line_no = 0;
  for (auto raw : split_lines(text)) {
    ++line_no;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto where = "weights line " + std::to_string(line_no);
    std::istringstream in{std::string(line)};
    std::string u, v, w, extra;
    if (!(in >> u >> v >> w) || (in >> extra)) {
      throw ParseError(where + ": expected 'source target weight'");
    }
    try {
      EdgeKey key{VertexId(u), VertexId(v)};
      if (!triples.emplace(key, parse_weight(w, where)).second) {
        throw ParseError(where + ": duplicate edge " + key.str());
      }
      vertices.insert(key.first());
      vertices.insert(key.second());
    } catch (const IntegrityError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  std::vector<VertexId> order(vertices.begin(), vertices.end());
  const std::size_t n = order.size();
  std::vector<Weight> weights(n * n, 0);
  auto index = [&](const VertexId& id) {
    return static_cast<std::size_t>(std::lower_bound(order.begin(), order.end(), id) - order.begin());
  };
  for (const auto& [key, w] : triples) {
    const auto i = index(key.first());
    const auto j = index(key.second());
    weights[i * n + j] = w;
    weights[j * n + i] = w;
  }
  return WeightedAdjacency(std::move(order), std::move(weights));
}

std::int64_t parse_timestamp(std::string_view s) {
  using namespace std::chrono;
  auto fail = [&]() -> std::int64_t {
    throw ParseError("invalid ISO-8601 timestamp '" + std::string(s) + "'");
  };
  if (s.size() < 20 || s[4] != '-' || s[7] != '-' || s[10] != 'T' || s[13] != ':' || s[16] != ':') {
    return fail();
  }
  int year = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return fail();
    year = year * 10 + (s[i] - '0');
  }
  const int month = two_digits(s, 5), day = two_digits(s, 8);
  const int hour = two_digits(s, 11), minute = two_digits(s, 14), second = two_digits(s, 17);
  if (month < 0 || day < 0 || hour < 0 || minute < 0 || second < 0) return fail();
  if (hour > 23 || minute > 59 || second > 59) return fail();
  const year_month_day date{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
                            std::chrono::day{static_cast<unsigned>(day)}};
  if (!date.ok()) return fail();

  std::size_t pos = 19;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    const std::size_t digits = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits) return fail();
  }
  std::int64_t offset = 0;
  if (pos < s.size() && s[pos] == 'Z') {
    ++pos;
  } else if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    const int sign = s[pos] == '-' ? -1 : 1;
    const int oh = two_digits(s, pos + 1);
    if (pos + 3 >= s.size() || s[pos + 3] != ':') return fail();
    const int om = two_digits(s, pos + 4);
    if (oh < 0 || om < 0 || oh > 23 || om > 59) return fail();
    offset = sign * (oh * 3600 + om * 60);
    pos += 6;
  } else {
    return fail();
  }
  if (pos != s.size()) return fail();

  const std::int64_t days = sys_days(date).time_since_epoch().count();
  const std::int64_t t = days * 86400 + hour * 3600 + minute * 60 + second - offset;
  if (t < 0) throw ParseError("timestamp '" + std::string(s) + "' precedes 1970-01-01T00:00:00Z");
  return t;
}

std::string format_timestamp(std::int64_t seconds) {
  using namespace std::chrono;
  const sys_seconds tp{std::chrono::seconds{seconds}};
  const auto day_point = floor<days>(tp);
  const year_month_day date{day_point};
  const hh_mm_ss clock{tp - day_point};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()),
                static_cast<int>(clock.hours().count()), static_cast<int>(clock.minutes().count()),
                static_cast<int>(clock.seconds().count()));
  return buf;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write '" + path.string() + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw ParseError("failed writing '" + path.string() + "'");
}

}  // namespace ilscm
