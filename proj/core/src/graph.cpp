#include "reconlab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "reconlab/error.hpp"

namespace reconlab {

VertexPair::VertexPair(Vertex a, Vertex b) {
  if (a == b) throw InputError("vertex pair needs two distinct vertices, got " + std::to_string(a) + " twice");
  u = std::min(a, b);
  v = std::max(a, b);
}

PairIndex::PairIndex(std::size_t n) : n_(n) {
  if (n < 2) throw InputError("pair index needs n >= 2");
}

std::size_t PairIndex::index(VertexPair p) const {
  if (p.v >= n_) throw InputError("pair (" + std::to_string(p.u) + "," + std::to_string(p.v) + ") out of range");
  return index_unchecked(p.u, p.v);
}

VertexPair PairIndex::pair(std::size_t i) const {
  if (i >= size()) throw InputError("pair index " + std::to_string(i) + " out of range");
  auto v = static_cast<std::size_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(i))) / 2.0);
  while (v * (v - 1) / 2 > i) --v;
  while ((v + 1) * v / 2 <= i) ++v;
  const std::size_t u = i - v * (v - 1) / 2;
  return {static_cast<Vertex>(u), static_cast<Vertex>(v)};
}

Graph::Graph(std::size_t n) : n_(n), words_(detail::words_for(n)), rows_(n * detail::words_for(n), 0) {}

Graph Graph::complete(std::size_t n) {
  Graph g(n);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex u = 0; u < v; ++u) g.toggle_edge_unchecked(u, v);
  return g;
}

Graph Graph::from_edges(std::size_t n, std::span<const VertexPair> edges) {
  Graph g(n);
  for (const auto& e : edges) g.add_edge(e.u, e.v);
  return g;
}

std::size_t Graph::edge_count() const noexcept { return detail::popcount(rows_) / 2; }

void Graph::check_pair(Vertex u, Vertex v) const {
  if (u >= n_ || v >= n_)
    throw InputError("vertex out of range: (" + std::to_string(u) + "," + std::to_string(v) + ") with n=" +
                     std::to_string(n_));
  if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u >= n_ || v >= n_) throw InputError("vertex out of range");
  return u != v && has_edge_unchecked(u, v);
}

void Graph::set_edge(Vertex u, Vertex v, bool present) {
  check_pair(u, v);
  if (has_edge_unchecked(u, v) != present) toggle_edge_unchecked(u, v);
}

void Graph::toggle_edge(Vertex u, Vertex v) {
  check_pair(u, v);
  toggle_edge_unchecked(u, v);
}

std::vector<VertexPair> Graph::edges() const {
  std::vector<VertexPair> out;
  for (Vertex v = 0; v < n_; ++v)
    for (Vertex u = 0; u < v; ++u)
      if (has_edge_unchecked(u, v)) out.emplace_back(u, v);
  return out;
}

EditSet::EditSet(std::size_t n, std::vector<VertexPair> pairs, EditMode mode)
    : n_(n), pairs_(std::move(pairs)), mode_(mode), membership_(detail::words_for(n * (n > 0 ? n - 1 : 0) / 2), 0) {
  for (const auto& p : pairs_) {
    if (p.v >= n) throw InputError("edit pair (" + std::to_string(p.u) + "," + std::to_string(p.v) + ") out of range for n=" + std::to_string(n));
    const auto i = PairIndex::index_unchecked(p.u, p.v);
    if (mode == EditMode::subset && detail::test_bit(membership_, i))
      throw InputError("repeated pair (" + std::to_string(p.u) + "," + std::to_string(p.v) + ") in subset-mode edit set");
    detail::set_bit(membership_, i);
  }
}

bool EditSet::contains(VertexPair p) const {
  if (p.v >= n_) return false;
  return detail::test_bit(membership_, PairIndex::index_unchecked(p.u, p.v));
}

EditSet EditSet::distinct() const {
  std::vector<VertexPair> out;
  std::vector<std::uint64_t> seen(membership_.size(), 0);
  for (const auto& p : pairs_) {
    const auto i = PairIndex::index_unchecked(p.u, p.v);
    if (detail::test_bit(seen, i)) continue;
    detail::set_bit(seen, i);
    out.push_back(p);
  }
  return EditSet(n_, std::move(out), EditMode::subset);
}

Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  std::vector<Vertex> u(vertices.begin(), vertices.end());
  std::sort(u.begin(), u.end());
  if (std::adjacent_find(u.begin(), u.end()) != u.end()) throw InputError("induced_subgraph: repeated vertex");
  if (!u.empty() && u.back() >= g.vertex_count())
    throw InputError("induced_subgraph: vertex " + std::to_string(u.back()) + " out of range");
  Graph h(u.size());
  for (std::size_t j = 0; j < u.size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (g.has_edge_unchecked(u[i], u[j])) h.toggle_edge_unchecked(static_cast<Vertex>(i), static_cast<Vertex>(j));
  return h;
}

Graph delete_vertex(const Graph& g, Vertex v) {
  if (v >= g.vertex_count()) throw InputError("delete_vertex: vertex out of range");
  std::vector<Vertex> keep;
  keep.reserve(g.vertex_count() - 1);
  for (Vertex w = 0; w < g.vertex_count(); ++w)
    if (w != v) keep.push_back(w);
  return induced_subgraph(g, keep);
}

Graph apply_edits(const Graph& g, std::span<const VertexPair> add, std::span<const VertexPair> remove) {
  for (const auto& a : add)
    for (const auto& r : remove)
      if (a == r)
        throw InputError("apply_edits: pair (" + std::to_string(a.u) + "," + std::to_string(a.v) +
                         ") both added and removed");
  Graph h = g;
  for (const auto& a : add) h.add_edge(a.u, a.v);
  for (const auto& r : remove) h.remove_edge(r.u, r.v);
  return h;
}

std::uint64_t enumerate_ball(const Graph& g, const EditSet& s, const BallVisitor& visit) {
  if (s.mode() != EditMode::subset) throw InputError("enumerate_ball needs a subset-mode edit set");
  if (s.vertex_count() != g.vertex_count()) throw InputError("edit set and graph disagree on vertex count");
  const auto k = s.size();
  if (k > 20) throw ResourceError("ball B_S(G) with |S|=" + std::to_string(k) + " exceeds cap 2^20", k >= 64 ? 0 : std::uint64_t{1} << k);
  Graph cur = g;
  const std::uint64_t total = std::uint64_t{1} << k;
  if (!visit(cur, std::nullopt)) return 1;
  for (std::uint64_t i = 1; i < total; ++i) {
    const auto& p = s.pairs()[static_cast<std::size_t>(std::countr_zero(i))];
    cur.toggle_edge_unchecked(p.u, p.v);
    if (!visit(cur, p)) return i + 1;
  }
  return total;
}

namespace {
__extension__ typedef unsigned __int128 u128;
}  // namespace

std::uint64_t radius_ball_size(std::size_t n, std::size_t r) {
  const std::uint64_t big_n = n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) / 2;
  std::uint64_t total = 0;
  std::uint64_t c = 1;  // C(N, k)
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  for (std::uint64_t k = 0; k <= r && k <= big_n; ++k) {
    if (total > kMax - c) return kMax;
    total += c;
    if (k == big_n) break;
    const u128 next = static_cast<u128>(c) * (big_n - k) / (k + 1);
    if (next > kMax) return kMax;
    c = static_cast<std::uint64_t>(next);
  }
  return total;
}

std::uint64_t enumerate_radius_ball(const Graph& g, std::size_t r, const BallVisitor& visit) {
  const auto n = g.vertex_count();
  const auto total = radius_ball_size(n, r);
  if (total > kRadiusBallCap)
    throw ResourceError("radius ball of size " + std::to_string(total) + " exceeds cap 2^22", total);
  const std::size_t big_n = n < 2 ? 0 : n * (n - 1) / 2;
  std::vector<VertexPair> pairs;
  pairs.reserve(big_n);
  for (std::size_t i = 0; i < big_n; ++i) pairs.push_back(PairIndex(n).pair(i));

  std::uint64_t visited = 0;
  Graph cur = g;
  ++visited;
  if (!visit(cur, std::nullopt)) return visited;
  std::vector<std::size_t> comb;
  for (std::size_t k = 1; k <= r && k <= big_n; ++k) {
    comb.resize(k);
    for (std::size_t i = 0; i < k; ++i) comb[i] = i;
    while (true) {
      for (auto i : comb) cur.toggle_edge_unchecked(pairs[i].u, pairs[i].v);
      ++visited;
      const bool go_on = visit(cur, std::nullopt);
      for (auto i : comb) cur.toggle_edge_unchecked(pairs[i].u, pairs[i].v);
      if (!go_on) return visited;
      // next k-combination of [0, big_n)
      std::size_t pos = k;
      while (pos > 0 && comb[pos - 1] == big_n - k + pos - 1) --pos;
      if (pos == 0) break;
      ++comb[pos - 1];
      for (std::size_t j = pos; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  return visited;
}

}  // namespace reconlab
