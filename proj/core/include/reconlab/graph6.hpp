#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "reconlab/graph.hpp"

namespace reconlab {

/// graph6 encoding: size header (n+63 for n <= 62, '~' + 18 bits up to
/// 258047, '~~' + 36 bits beyond) followed by the upper triangle in column
/// order packed into 6-bit big-endian groups offset by 63.
std::string encode_graph6(const Graph& g);

/// Accepts an optional ">>graph6<<" header and trailing whitespace.
/// Throws ParseError on malformed input.
Graph decode_graph6(std::string_view text);

/// Reads every non-empty line of a graph6 file.
std::vector<Graph> read_graph6_file(const std::filesystem::path& path);
void write_graph6_file(const std::filesystem::path& path, const std::vector<Graph>& graphs);

/// Edit sets as JSON arrays of [u, v] pairs.
std::string edit_set_to_json(const EditSet& s);
/// Parses pairs for an ambient vertex count n. Repeats are allowed in tuple mode.
EditSet edit_set_from_json(std::string_view text, std::size_t n, EditMode mode = EditMode::subset);

}  // namespace reconlab
