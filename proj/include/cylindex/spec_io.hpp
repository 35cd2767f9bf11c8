#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "cylindex/oracle.hpp"
#include "cylindex/symbol_core.hpp"
#include "cylindex/symbol_grid.hpp"

namespace cylindex {

using Json = nlohmann::ordered_json;

/// Operator spec document:
///   {"base": "point"|"circle", "k": int, "N": int,
///    "terms": [{"j": int, "alpha": int, "lambda": int,
///               "plus":  [{"p": int, "q": int, "re": [[...]], "im": [[...]]}],
///               "minus": [...]}]}
/// "alpha", "q" and "im" may be omitted (0); "lambda" defaults to N.
/// Matrices are row-major k×k. Any unknown key is a SchemaError naming its path.
OperatorSpec parse_operator_spec(std::string_view text);
OperatorSpec operator_spec_from_json(const Json& doc);
Json to_json(const OperatorSpec& spec);

/// Raw symbol grid: nested arrays [θ][x][ψ][row][col][re, im].
SymbolGrid3 parse_symbol_grid(std::string_view text);
SymbolGrid3 symbol_grid_from_json(const Json& doc);
Json to_json(const SymbolGrid3& grid);

Json to_json(const RadiusRecord& record);

/// Reads a whole file; InvalidArgument when it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

/// FNV-1a 64-bit hash of the canonical (compact, key-ordered) spec JSON, as 16 hex digits.
std::string spec_hash(const OperatorSpec& spec);

}  // namespace cylindex
