#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "reconlab/detail/bits.hpp"

namespace reconlab {

using Vertex = std::uint32_t;

/// Unordered vertex pair, stored normalized with u < v.
struct VertexPair {
  Vertex u = 0;
  Vertex v = 1;

  VertexPair() = default;
  /// Throws InputError when a == b.
  VertexPair(Vertex a, Vertex b);

  friend bool operator==(const VertexPair&, const VertexPair&) = default;
  friend auto operator<=>(const VertexPair&, const VertexPair&) = default;
};

/// The fixed colexicographic bijection between V^(2) and [0, C(n,2)):
/// (u, v) with u < v maps to v(v-1)/2 + u.
class PairIndex {
 public:
  /// Throws InputError when n < 2.
  explicit PairIndex(std::size_t n);

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t size() const noexcept { return n_ * (n_ - 1) / 2; }

  std::size_t index(VertexPair p) const;
  VertexPair pair(std::size_t index) const;

  static std::size_t index_unchecked(Vertex u, Vertex v) noexcept {
    return u < v ? static_cast<std::size_t>(v) * (v - 1) / 2 + u
                 : static_cast<std::size_t>(u) * (u - 1) / 2 + v;
  }

 private:
  std::size_t n_;
};

/// Undirected simple graph on vertices 0..n-1 with packed bit rows.
///
/// Rows are symmetric and the diagonal stays clear; every mutator keeps both
/// halves in sync. The vertex count is fixed at construction.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);

  static Graph complete(std::size_t n);
  static Graph from_edges(std::size_t n, std::span<const VertexPair> edges);

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t words_per_row() const noexcept { return words_; }
  std::size_t edge_count() const noexcept;

  bool has_edge(Vertex u, Vertex v) const;
  bool has_edge_unchecked(Vertex u, Vertex v) const noexcept {
    return (rows_[u * words_ + (v >> 6)] >> (v & 63)) & 1u;
  }

  void set_edge(Vertex u, Vertex v, bool present);
  void add_edge(Vertex u, Vertex v) { set_edge(u, v, true); }
  void remove_edge(Vertex u, Vertex v) { set_edge(u, v, false); }
  void toggle_edge(Vertex u, Vertex v);
  void toggle_edge_unchecked(Vertex u, Vertex v) noexcept {
    rows_[u * words_ + (v >> 6)] ^= std::uint64_t{1} << (v & 63);
    rows_[v * words_ + (u >> 6)] ^= std::uint64_t{1} << (u & 63);
  }

  std::span<const std::uint64_t> row(Vertex v) const noexcept {
    return {rows_.data() + static_cast<std::size_t>(v) * words_, words_};
  }
  std::size_t degree(Vertex v) const noexcept { return detail::popcount(row(v)); }

  std::vector<VertexPair> edges() const;

  friend bool operator==(const Graph& a, const Graph& b) noexcept {
    return a.n_ == b.n_ && a.rows_ == b.rows_;
  }

 private:
  void check_pair(Vertex u, Vertex v) const;

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> rows_;
};

enum class EditMode { subset, tuple };

/// Ordered collection of vertex pairs for an ambient vertex count. In subset
/// mode the pairs are distinct; tuple mode allows repeats and answers
/// membership ("e equals some coordinate") from a bitset over pair indices.
class EditSet {
 public:
  EditSet() = default;
  /// Throws InputError on an invalid pair or, in subset mode, a repeat.
  EditSet(std::size_t n, std::vector<VertexPair> pairs, EditMode mode);

  std::size_t vertex_count() const noexcept { return n_; }
  EditMode mode() const noexcept { return mode_; }
  const std::vector<VertexPair>& pairs() const noexcept { return pairs_; }
  std::size_t size() const noexcept { return pairs_.size(); }

  bool contains(VertexPair p) const;
  std::size_t distinct_count() const noexcept { return detail::popcount(membership_); }
  /// Membership bitset over colex pair indices.
  std::span<const std::uint64_t> membership() const noexcept { return membership_; }

  /// The distinct pairs in first-occurrence order, as a subset-mode set.
  EditSet distinct() const;

 private:
  std::size_t n_ = 0;
  std::vector<VertexPair> pairs_;
  EditMode mode_ = EditMode::subset;
  std::vector<std::uint64_t> membership_;
};

/// G[U] relabeled to 0..|U|-1 by ascending original label.
Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);

/// G - v.
Graph delete_vertex(const Graph& g, Vertex v);

/// G + add - remove. Throws InputError when add and remove overlap.
Graph apply_edits(const Graph& g, std::span<const VertexPair> add,
                  std::span<const VertexPair> remove);

inline constexpr std::uint64_t kBallCap = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kRadiusBallCap = std::uint64_t{1} << 22;

/// Visitor for ball enumeration. `toggled` is the pair flipped relative to the
/// previous member (empty for the first). Return false to stop early.
using BallVisitor = std::function<bool(const Graph& member, std::optional<VertexPair> toggled)>;

/// Enumerates B_S(G) in Gray-code order over presence/absence assignments on
/// S, starting from G itself. Yields exactly 2^|S| labeled graphs. Returns the
/// number of members visited. Throws ResourceError when 2^|S| > kBallCap and
/// InputError when S is not in subset mode.
std::uint64_t enumerate_ball(const Graph& g, const EditSet& s, const BallVisitor& visit);

/// Sum_{k<=r} C(N, k), saturating at UINT64_MAX.
std::uint64_t radius_ball_size(std::size_t n, std::size_t r);

/// Enumerates B_r(G): every labeled graph at edge-set Hamming distance <= r,
/// each once, by increasing distance and lexicographic toggle set. `toggled`
/// is always empty. Throws ResourceError above kRadiusBallCap members.
std::uint64_t enumerate_radius_ball(const Graph& g, std::size_t r, const BallVisitor& visit);

}  // namespace reconlab
