#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ilscm/community.hpp"
#include "ilscm/graph.hpp"
#include "ilscm/text.hpp"

namespace ilscm {

// Graph document (JSON):
//
//   {"vertices": [{"id": "...", "name": "...", ...}],
//    "edges": [{"source": "...", "target": "...",
//               "interactions": [{"kind": "comment", "text": "...",
//                                 "timestamp": "2017-03-26T10:00:00Z"}]}]}
//
// Vertex attributes other than "id" are optional strings drawn from the
// profile fields name, first_name, last_name, link, username, gender, type,
// locale, hometown and email.

/// Throws ParseError (syntax, with line and column; schema, with a JSON
/// path) or IntegrityError (dangling endpoint, self-loop, duplicate id).
SocialGraph parse_graph(std::string_view document);

/// Canonical graph document: vertices by id, edges by key, two-space indent,
/// trailing newline.
std::string export_graph(const SocialGraph& graph);

/// One key per line. Blank lines and '#' lines are skipped, each remaining
/// line must tokenize to exactly one token. Keys are deduplicated keeping
/// first occurrence. Throws ParseError when nothing usable remains.
std::vector<ContextKey> parse_keys(std::string_view text,
                                   const Tokenizer& tokenizer = Tokenizer::standard());

enum class ExportFormat { communities_json, dot, adjacency_csv };

std::optional<ExportFormat> parse_export_format(std::string_view name) noexcept;

/// Byte-deterministic rendering of a detection result, newline-terminated.
std::string export_result(const DetectionResult& result, ExportFormat format);

/// Inverse of export_result(..., communities_json).
DetectionResult parse_result(std::string_view document);

/// Header line of vertex ids, then one row of integers per vertex.
WeightedAdjacency parse_adjacency_csv(std::string_view text);

/// Edge triples "u v weight", whitespace separated, one per line; '#'
/// comments. The vertex order is the sorted set of endpoints.
WeightedAdjacency parse_weight_triples(std::string_view text);

/// ISO-8601 timestamp ("YYYY-MM-DDTHH:MM:SS[.fff](Z|+HH:MM|-HH:MM)") to
/// UTC seconds. Fractions are truncated. Throws ParseError.
std::int64_t parse_timestamp(std::string_view text);

/// UTC seconds to "YYYY-MM-DDTHH:MM:SSZ".
std::string format_timestamp(std::int64_t seconds);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace ilscm
