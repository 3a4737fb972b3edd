#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "reconlab/graph.hpp"
#include "reconlab/sampling.hpp"

namespace reconlab {

/// Proof that E_δ fails on `member`: an injection φ from W (|W| = v - δ) into
/// V that moves some vertex and induces member[W] ≅ member[φ(W)].
struct EventWitness {
  std::vector<Vertex> domain;  // W, ascending
  std::vector<Vertex> image;   // image[i] = φ(domain[i])
  /// Position of the violating graph in the examined collection: the input
  /// index for collections, the Gray-code step for enumerated balls, 0 for a
  /// single graph or a search result.
  std::uint64_t member_index = 0;
  Graph member;
};

/// How far an outcome can be trusted. Violations always carry a verified
/// witness; "holds" is certified only when exact.
enum class Exactness { exact, search_lower_bound, sampled_lower_bound };
std::string to_string(Exactness e);

struct EventResult {
  bool holds = true;
  std::optional<EventWitness> witness;
  Exactness exactness = Exactness::exact;
  /// Members examined (enumeration) or search nodes expanded.
  std::uint64_t work = 0;
};

/// True iff w is a well-formed witness for E_δ failing on w.member.
bool verify_witness(const EventWitness& w, std::size_t delta);

/// E_δ(G) from the certificates of all (v-δ)-vertex induced subgraphs: holds
/// iff they are pairwise non-isomorphic and each is asymmetric. On violation
/// the witness is the lexicographically least (W, then φ(W) as a sequence).
/// Throws InputError when δ >= v(G).
EventResult check_event(const Graph& g, std::size_t delta);

/// Conjunction over a collection; stops at the first violating member.
/// Throws InputError on mixed vertex counts.
EventResult check_event_collection(std::span<const Graph> graphs, std::size_t delta);

enum class BallStrategy { automatic, enumerate, search };

struct BallOptions {
  BallStrategy strategy = BallStrategy::automatic;
  /// Automatic mode enumerates when the ball has at most 2^this members.
  std::size_t enumerate_max_log2 = 8;
  /// Search node limit; 0 means unlimited. When the limit is hit without a
  /// violation the result is "holds" with exactness search_lower_bound.
  std::uint64_t node_budget = 0;
};

/// E_δ(B_S(G)). Tuple-mode S is reduced to its distinct pairs.
///
/// Enumeration walks the Gray-code stream and recomputes only the subgraph
/// certificates containing the toggled pair; it throws ResourceError when
/// 2^|S| exceeds the ball cap. The search decides the same predicate without
/// listing members (see events.cpp) and has no cap. On violation both return
/// a verified witness whose member lies in B_S(G).
EventResult check_event_ball(const Graph& g, const EditSet& s, std::size_t delta, const BallOptions& options = {});

/// E_δ(B_r(G)), all graphs within Hamming distance r. Enumeration throws
/// ResourceError above the radius-ball cap.
EventResult check_event_radius(const Graph& g, std::size_t r, std::size_t delta, const BallOptions& options = {});

enum class EditSampling { none, tuple, subset };

inline constexpr std::uint64_t kExactProbabilityMaxPairs = 18;
inline constexpr std::uint64_t kExactProbabilityMaxWork = std::uint64_t{1} << 32;

/// Pr[E_δ(B_S(G)) fails] for G ~ 𝒢(n+δ, p) and S drawn as ε uniform pairs
/// with replacement (tuple), a uniform ε-subset (subset), or S = ∅ (none).
/// Exact: every graph is weighted by its product-Bernoulli probability and
/// every edit set by its probability. Throws ResourceError when C(n+δ, 2) > 18
/// or the work would exceed kExactProbabilityMaxWork; InputError when p is not
/// on n+δ vertices.
double exact_event_failure_probability(std::size_t n, std::size_t delta, const EdgeProbabilities& p, std::size_t eps,
                                       EditSampling mode);

}  // namespace reconlab
