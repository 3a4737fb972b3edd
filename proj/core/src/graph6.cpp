#include "reconlab/graph6.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "reconlab/error.hpp"

namespace reconlab {

namespace {

void put_size(std::string& out, std::size_t n) {
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back('~');
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  } else {
    out += "~~";
    for (int shift = 30; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  }
}

}  // namespace

std::string encode_graph6(const Graph& g) {
  const auto n = g.vertex_count();
  std::string out;
  put_size(out, n);
  int acc = 0;
  int filled = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge_unchecked(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + 63));
  return out;
}

Graph decode_graph6(std::string_view text) {
  constexpr std::string_view header = ">>graph6<<";
  if (text.substr(0, header.size()) == header) text.remove_prefix(header.size());
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) text.remove_suffix(1);
  if (text.empty()) throw ParseError("graph6: empty input");

  std::size_t pos = 0;
  auto next6 = [&]() -> int {
    if (pos >= text.size()) throw ParseError("graph6: truncated input");
    const int c = static_cast<unsigned char>(text[pos++]) - 63;
    if (c < 0 || c > 63) throw ParseError("graph6: byte out of range at offset " + std::to_string(pos - 1));
    return c;
  };

  std::size_t n = 0;
  if (text[0] != '~') {
    n = static_cast<std::size_t>(next6());
  } else if (text.size() > 1 && text[1] == '~') {
    pos = 2;
    for (int k = 0; k < 6; ++k) n = (n << 6) | static_cast<std::size_t>(next6());
  } else {
    pos = 1;
    for (int k = 0; k < 3; ++k) n = (n << 6) | static_cast<std::size_t>(next6());
  }
  if (n > 10000) throw ParseError("graph6: vertex count " + std::to_string(n) + " beyond supported range");

  const std::size_t bits = n * (n > 0 ? n - 1 : 0) / 2;
  const std::size_t bytes = (bits + 5) / 6;
  if (text.size() - pos != bytes)
    throw ParseError("graph6: expected " + std::to_string(bytes) + " data bytes, found " + std::to_string(text.size() - pos));

  Graph g(n);
  std::size_t k = 0;
  int cur = 0;
  int left = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i, ++k) {
      if (left == 0) {
        cur = next6();
        left = 6;
      }
      --left;
      if ((cur >> left) & 1) g.toggle_edge_unchecked(i, j);
    }
  }
  if (left > 0 && (cur & ((1 << left) - 1)) != 0) throw ParseError("graph6: nonzero padding bits");
  return g;
}

std::vector<Graph> read_graph6_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::vector<Graph> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    try {
      out.push_back(decode_graph6(line));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  return out;
}

void write_graph6_file(const std::filesystem::path& path, const std::vector<Graph>& graphs) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  for (const auto& g : graphs) out << encode_graph6(g) << '\n';
}

std::string edit_set_to_json(const EditSet& s) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& p : s.pairs()) j.push_back({p.u, p.v});
  return j.dump();
}

EditSet edit_set_from_json(std::string_view text, std::size_t n, EditMode mode) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("edit set JSON: ") + e.what());
  }
  if (!j.is_array()) throw ParseError("edit set JSON must be an array of [u, v] pairs");
  std::vector<VertexPair> pairs;
  for (const auto& item : j) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number_unsigned() || !item[1].is_number_unsigned())
      throw ParseError("edit set JSON: each element must be [u, v] with non-negative integers");
    pairs.emplace_back(item[0].get<Vertex>(), item[1].get<Vertex>());
  }
  return EditSet(n, std::move(pairs), mode);
}

}  // namespace reconlab
