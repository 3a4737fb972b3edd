#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "reconlab/graph.hpp"

namespace reconlab {

/// Canonical form of a graph: the vertex count plus the canonically relabeled
/// upper triangle packed in colex pair order. Equal certificates mean
/// isomorphic graphs and vice versa. The ordering is total but otherwise
/// meaningless.
class Certificate {
 public:
  Certificate() = default;
  Certificate(std::size_t n, std::vector<std::uint64_t> bits) : n_(n), bits_(std::move(bits)) {}

  std::size_t vertex_count() const noexcept { return n_; }
  const std::vector<std::uint64_t>& bits() const noexcept { return bits_; }

  /// 8 hex digits of n followed by the triangle bytes, most significant
  /// pair index last.
  std::string to_hex() const;
  static Certificate from_hex(std::string_view hex);

  /// The canonical representative itself.
  Graph to_graph() const;

  friend bool operator==(const Certificate&, const Certificate&) = default;
  friend std::strong_ordering operator<=>(const Certificate& a, const Certificate& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> bits_;
};

struct CertificateHash {
  std::size_t operator()(const Certificate& c) const noexcept;
};

/// Injective map from {0..domain-1} into {0..target_size-1}.
class VertexMap {
 public:
  VertexMap() = default;
  /// Throws InputError if the images are not injective or exceed the target.
  VertexMap(std::vector<Vertex> image, std::size_t target_size);

  static VertexMap identity(std::size_t n);

  std::size_t domain_size() const noexcept { return image_.size(); }
  std::size_t target_size() const noexcept { return target_size_; }
  Vertex operator()(Vertex v) const { return image_.at(v); }
  const std::vector<Vertex>& image() const noexcept { return image_; }

  bool is_identity() const noexcept;
  /// Valid only for permutations (domain == target).
  VertexMap inverse() const;
  /// (this ∘ other)(v) = this(other(v)).
  VertexMap compose(const VertexMap& other) const;

  friend bool operator==(const VertexMap&, const VertexMap&) = default;
  friend auto operator<=>(const VertexMap& a, const VertexMap& b) { return a.image_ <=> b.image_; }

 private:
  std::vector<Vertex> image_;
  std::size_t target_size_ = 0;
};

/// Result of the individualization-refinement search.
struct CanonicalLabeling {
  Certificate certificate;
  /// labeling[v] = canonical position of v.
  std::vector<Vertex> labeling;
  /// Generators of the (colour-preserving) automorphism group found while
  /// searching; empty exactly when the group is trivial.
  std::vector<VertexMap> generators;
};

/// Colour refinement to an equitable partition, then individualization of the
/// smallest non-singleton cell (lowest vertex first) with automorphism
/// pruning. `colors`, when given, is an initial vertex colouring that
/// isomorphisms must preserve; the certificate then only identifies graphs up
/// to colour-preserving isomorphism among graphs coloured the same way.
CanonicalLabeling canonical_labeling(const Graph& g, std::span<const std::uint32_t> colors = {});

Certificate canonical_form(const Graph& g);

/// True iff m is a bijection V(G) -> V(H) preserving edges and non-edges.
bool is_isomorphism(const Graph& g, const Graph& h, const VertexMap& m);

/// A witness of G ≅ H, or empty.
std::optional<VertexMap> find_isomorphism(const Graph& g, const Graph& h);

/// A witness of G ≅ H with m(x) = y for every pinned (x, y), or empty.
std::optional<VertexMap> find_isomorphism(const Graph& g, const Graph& h,
                                          std::span<const std::pair<Vertex, Vertex>> pins);

/// Generators of Aut G, any n.
std::vector<VertexMap> automorphism_generators(const Graph& g);

inline constexpr std::size_t kAutomorphismEnumerationMaxN = 12;
inline constexpr std::size_t kAutomorphismEnumerationMaxSize = 1'000'000;

/// Every automorphism, identity first then ascending by image. Throws
/// ResourceError when n > 12 or the group exceeds 10^6 elements.
std::vector<VertexMap> automorphisms(const Graph& g);

bool is_asymmetric(const Graph& g);

/// True iff some automorphism maps x to y. Throws InputError on bad vertices.
bool are_similar(const Graph& g, Vertex x, Vertex y);

/// True iff every automorphism maps U onto U. Throws InputError on bad vertices.
bool is_fixed_set(const Graph& g, std::span<const Vertex> u);

/// Thread-safe memo of certificates keyed by labeled edge set.
class CertificateCache {
 public:
  explicit CertificateCache(std::size_t capacity = 1 << 16) : capacity_(capacity) {}

  Certificate get(const Graph& g);
  std::size_t size() const;
  std::uint64_t hits() const;
  void clear();

 private:
  struct Key {
    std::size_t n;
    std::vector<std::uint64_t> rows;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  mutable std::mutex mu_;
  std::size_t capacity_;
  std::uint64_t hits_ = 0;
  std::unordered_map<Key, Certificate, KeyHash> memo_;
};

}  // namespace reconlab
