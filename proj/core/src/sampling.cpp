#include "reconlab/sampling.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>

#include <nlohmann/json.hpp>

#include "reconlab/error.hpp"

namespace reconlab {

namespace {

std::size_t pair_count(std::size_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

constexpr char kMagic[8] = {'R', 'L', 'P', 'R', 'O', 'B', '0', '1'};

void put_u64(std::ostream& out, std::uint64_t x) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((x >> (8 * i)) & 0xff);
  out.write(b, 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8)) throw ParseError("probabilities file truncated");
  std::uint64_t x = 0;
  for (int i = 0; i < 8; ++i) x |= std::uint64_t{b[i]} << (8 * i);
  return x;
}

}  // namespace

EdgeProbabilities::EdgeProbabilities(std::size_t n, std::vector<double> values) : n_(n), values_(std::move(values)) {
  if (values_.size() != pair_count(n))
    throw InputError("edge probabilities: expected " + std::to_string(pair_count(n)) + " entries, got " +
                     std::to_string(values_.size()));
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!(values_[i] >= 0.0 && values_[i] <= 1.0))
      throw InputError("edge probability at index " + std::to_string(i) + " outside [0,1]");
}

EdgeProbabilities EdgeProbabilities::constant(std::size_t n, double p) {
  return EdgeProbabilities(n, std::vector<double>(pair_count(n), p));
}

double beta_value(BetaPreset preset, std::size_t n, double c) {
  const auto x = static_cast<double>(n);
  switch (preset) {
    case BetaPreset::log_over_n:
      return std::log(x) / x;
    case BetaPreset::inv_sqrt:
      return 1.0 / std::sqrt(x);
    case BetaPreset::constant:
      return c;
  }
  return c;
}

BetaPreset parse_beta_preset(std::string_view name) {
  if (name == "log") return BetaPreset::log_over_n;
  if (name == "sqrt") return BetaPreset::inv_sqrt;
  if (name == "const") return BetaPreset::constant;
  throw InputError("unknown beta preset '" + std::string(name) + "' (expected log, sqrt or const)");
}

std::string to_string(BetaPreset preset) {
  switch (preset) {
    case BetaPreset::log_over_n:
      return "log";
    case BetaPreset::inv_sqrt:
      return "sqrt";
    case BetaPreset::constant:
      return "const";
  }
  return "?";
}

EdgeProbabilities uniform_box_probabilities(std::size_t n, double beta, double alpha, BoxFill fill, SeedSpec seed) {
  const double lo = alpha * beta;
  if (!(lo >= 0.0)) throw InputError("probability box: alpha*beta must be non-negative");
  if (lo > 0.5) throw InputError("probability box [alpha*beta, 1-alpha*beta] is empty: alpha*beta = " + std::to_string(lo));
  const double hi = 1.0 - lo;
  std::vector<double> v(pair_count(n), lo);
  if (fill == BoxFill::uniform) {
    Philox4x32 rng(seed);
    for (auto& x : v) x = lo + (hi - lo) * rng.next_double();
  }
  return EdgeProbabilities(n, std::move(v));
}

void write_probabilities_binary(const std::filesystem::path& path, const EdgeProbabilities& p) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out.write(kMagic, 8);
  put_u64(out, p.vertex_count());
  for (double x : p.values()) put_u64(out, std::bit_cast<std::uint64_t>(x));
}

EdgeProbabilities read_probabilities_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  char magic[8];
  if (!in.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0) throw ParseError("probabilities file: bad magic");
  const auto n = get_u64(in);
  if (n > 10000) throw ParseError("probabilities file: vertex count out of range");
  std::vector<double> v(pair_count(n));
  for (auto& x : v) x = std::bit_cast<double>(get_u64(in));
  if (in.peek() != std::char_traits<char>::eof()) throw ParseError("probabilities file: trailing bytes");
  return EdgeProbabilities(n, std::move(v));
}

std::string probabilities_to_json(const EdgeProbabilities& p) {
  nlohmann::json j;
  j["n"] = p.vertex_count();
  j["p"] = p.values();
  return j.dump();
}

EdgeProbabilities probabilities_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    return EdgeProbabilities(j.at("n").get<std::size_t>(), j.at("p").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("probabilities JSON: ") + e.what());
  }
}

Graph sample_graph(const EdgeProbabilities& p, SeedSpec seed) {
  Philox4x32 rng(seed);
  return sample_graph(p, rng);
}

Graph sample_graph(const EdgeProbabilities& p, Philox4x32& rng) {
  const auto n = p.vertex_count();
  Graph g(n);
  std::size_t i = 0;
  for (Vertex v = 1; v < n; ++v)
    for (Vertex u = 0; u < v; ++u, ++i)
      if (rng.bernoulli(p[i])) g.toggle_edge_unchecked(u, v);
  return g;
}

EditSet sample_edit_tuple(std::size_t n, std::size_t eps, SeedSpec seed) {
  Philox4x32 rng(seed);
  return sample_edit_tuple(n, eps, rng);
}

EditSet sample_edit_tuple(std::size_t n, std::size_t eps, Philox4x32& rng) {
  const auto big_n = pair_count(n);
  if (eps > 0 && big_n == 0) throw InputError("edit tuple needs n >= 2");
  std::vector<VertexPair> pairs;
  pairs.reserve(eps);
  const PairIndex pi(std::max<std::size_t>(n, 2));
  for (std::size_t k = 0; k < eps; ++k) pairs.push_back(pi.pair(rng.uniform_below(big_n)));
  return EditSet(n, std::move(pairs), EditMode::tuple);
}

EditSet sample_edit_subset(std::size_t n, std::size_t eps, SeedSpec seed) {
  Philox4x32 rng(seed);
  return sample_edit_subset(n, eps, rng);
}

EditSet sample_edit_subset(std::size_t n, std::size_t eps, Philox4x32& rng) {
  const auto big_n = pair_count(n);
  if (eps > big_n)
    throw InputError("edit subset of size " + std::to_string(eps) + " exceeds C(n,2) = " + std::to_string(big_n));
  std::vector<std::uint32_t> idx(big_n);
  std::iota(idx.begin(), idx.end(), 0u);
  std::vector<VertexPair> pairs;
  pairs.reserve(eps);
  const PairIndex pi(std::max<std::size_t>(n, 2));
  for (std::size_t k = 0; k < eps; ++k) {
    const auto j = k + rng.uniform_below(big_n - k);
    std::swap(idx[k], idx[j]);
    pairs.push_back(pi.pair(idx[k]));
  }
  return EditSet(n, std::move(pairs), EditMode::subset);
}

std::vector<Vertex> sample_vertex_subset(std::size_t n, std::size_t k, Philox4x32& rng) {
  if (k > n) throw InputError("vertex subset larger than the vertex set");
  std::vector<Vertex> v(n);
  std::iota(v.begin(), v.end(), Vertex{0});
  for (std::size_t i = 0; i < k; ++i) std::swap(v[i], v[i + rng.uniform_below(n - i)]);
  v.resize(k);
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<Vertex> sample_permutation(std::size_t n, Philox4x32& rng) {
  std::vector<Vertex> v(n);
  std::iota(v.begin(), v.end(), Vertex{0});
  for (std::size_t i = 0; i + 1 < n; ++i) std::swap(v[i], v[i + rng.uniform_below(n - i)]);
  return v;
}

}  // namespace reconlab
