#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "reconlab/graph.hpp"
#include "reconlab/isomorphism.hpp"

namespace reconlab {

/// Multiset of card certificates, sorted by certificate.
struct Deck {
  std::vector<std::pair<Certificate, std::size_t>> cards;

  std::size_t size() const noexcept;
  /// JSON list of [certificate-hex, multiplicity].
  std::string to_json() const;
  static Deck from_json(std::string_view text);

  friend bool operator==(const Deck&, const Deck&) = default;
};

/// Certificate of G - v for every v, indexed by v.
std::vector<Certificate> card_certificates(const Graph& g);

/// Throws InputError when v(G) = 0.
Deck deck(const Graph& g);

/// True iff sigma is a bijection with G - v ≅ H - sigma(v) for every v.
bool is_hypomorphism(const Graph& g, const Graph& h, const VertexMap& sigma);

/// Vertices with equal card certificates are paired in ascending order; any
/// pairing inside a class works. Throws InputError on a vertex-count mismatch.
std::optional<VertexMap> find_hypomorphism(const Graph& g, const Graph& h);

struct Lemma31Witness {
  Vertex x = 0;
  Vertex y = 0;
  VertexMap phi_x;  // G - x -> H - sigma(x), indexed by G - x labels
  VertexMap phi_y;
  /// phi_x extended by x -> sigma(x), in the labels of G and H.
  VertexMap isomorphism;
};

/// Searches ordered pairs (x, y) lexicographically for isomorphisms
/// phi_x: G-x ≅ H-σ(x) with phi_x(y) = σ(y) and phi_y: G-y ≅ H-σ(y) with
/// phi_y(x) = σ(x), such that N(x) - y is a fixed set of G - {x, y}. The
/// extension of phi_x is re-verified edge by edge. Empty means no such pair
/// exists, which says nothing about G ≅ H.
///
/// Throws InputError when v(G) < 3, the vertex counts differ or sigma is not
/// a hypomorphism.
std::optional<Lemma31Witness> reconstruct_lemma31(const Graph& g, const Graph& h, const VertexMap& sigma);

/// Least pair {x < y} such that G - {x, y} is asymmetric and isomorphic to no
/// other two-vertex-deleted subgraph. Throws InputError when v(G) < 3.
std::optional<std::pair<Vertex, Vertex>> farhadian_condition(const Graph& g);

struct DeckCollision {
  Certificate first;
  Certificate second;
};

struct ReconstructibilityReport {
  std::size_t n = 0;
  std::uint64_t labeled_graphs = 0;
  std::size_t classes = 0;
  /// Pairs of non-isomorphic classes with equal decks, sorted.
  std::vector<DeckCollision> collisions;
  /// Deck hash matches that turned out to be different decks.
  std::size_t hash_false_matches = 0;

  std::string to_json() const;
};

inline constexpr std::size_t kExhaustiveReconstructionMaxN = 7;

/// Enumerates all 2^C(n,2) labeled graphs, keeps one per isomorphism class
/// and groups the classes by deck. `threads` splits the mask range; the report
/// does not depend on it. Throws ResourceError when n > 7.
ReconstructibilityReport verify_reconstructibility_exhaustive(std::size_t n, unsigned threads = 1);

}  // namespace reconlab
