#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "reconlab/graph.hpp"
#include "reconlab/rng.hpp"

namespace reconlab {

/// Per-pair edge probabilities indexed by the colex pair order.
class EdgeProbabilities {
 public:
  EdgeProbabilities() = default;
  /// Throws InputError if the length is not C(n,2) or an entry leaves [0,1].
  EdgeProbabilities(std::size_t n, std::vector<double> values);

  static EdgeProbabilities constant(std::size_t n, double p);

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_.at(i); }
  double at(VertexPair e) const { return values_.at(PairIndex::index_unchecked(e.u, e.v)); }
  const std::vector<double>& values() const noexcept { return values_; }

  friend bool operator==(const EdgeProbabilities&, const EdgeProbabilities&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

enum class BetaPreset { log_over_n, inv_sqrt, constant };

/// log n / n, n^{-1/2}, or the constant c.
double beta_value(BetaPreset preset, std::size_t n, double c = 0.0);
BetaPreset parse_beta_preset(std::string_view name);
std::string to_string(BetaPreset preset);

enum class BoxFill { constant, uniform };

/// Entries in [αβ, 1-αβ]. Constant fill puts every entry at αβ, the lower
/// edge of the box; uniform fill draws each entry independently from the box.
/// Throws InputError when αβ > 1/2 or αβ < 0.
EdgeProbabilities uniform_box_probabilities(std::size_t n, double beta, double alpha, BoxFill fill,
                                            SeedSpec seed = {});

/// Binary form: the 8 bytes "RLPROB01", n as little-endian u64, then C(n,2)
/// little-endian IEEE doubles.
void write_probabilities_binary(const std::filesystem::path& path, const EdgeProbabilities& p);
EdgeProbabilities read_probabilities_binary(const std::filesystem::path& path);
/// JSON form {"n": n, "p": [...]} for small instances.
std::string probabilities_to_json(const EdgeProbabilities& p);
EdgeProbabilities probabilities_from_json(std::string_view text);

/// Each pair e present independently with probability p[π(e)], drawn in pair
/// index order from the stream `seed`.
Graph sample_graph(const EdgeProbabilities& p, SeedSpec seed);
Graph sample_graph(const EdgeProbabilities& p, Philox4x32& rng);

/// ε independent uniform pairs, with replacement.
EditSet sample_edit_tuple(std::size_t n, std::size_t eps, SeedSpec seed);
EditSet sample_edit_tuple(std::size_t n, std::size_t eps, Philox4x32& rng);

/// A uniform ε-subset of pairs by partial Fisher-Yates over pair indices.
/// Throws InputError when ε > C(n,2).
EditSet sample_edit_subset(std::size_t n, std::size_t eps, SeedSpec seed);
EditSet sample_edit_subset(std::size_t n, std::size_t eps, Philox4x32& rng);

/// A uniform k-subset of vertices, ascending.
std::vector<Vertex> sample_vertex_subset(std::size_t n, std::size_t k, Philox4x32& rng);

/// Uniform permutation of 0..n-1.
std::vector<Vertex> sample_permutation(std::size_t n, Philox4x32& rng);

}  // namespace reconlab
