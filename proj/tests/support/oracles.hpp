#pragma once

// Brute-force reference implementations. Deliberately naive: they share no
// code with the library beyond the Graph container.

#include <algorithm>
#include <functional>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <optional>
#include <vector>

#include "reconlab/graph.hpp"

namespace oracle {

using reconlab::Graph;
using reconlab::Vertex;

inline bool edge(const Graph& g, Vertex a, Vertex b) { return a != b && g.has_edge(a, b); }

/// Permutation p preserves adjacency from g onto h.
inline bool maps_onto(const Graph& g, const Graph& h, const std::vector<Vertex>& p) {
  const auto n = g.vertex_count();
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      if (edge(g, a, b) != edge(h, p[a], p[b])) return false;
  return true;
}

inline std::optional<std::vector<Vertex>> isomorphism(const Graph& g, const Graph& h) {
  if (g.vertex_count() != h.vertex_count()) return std::nullopt;
  std::vector<Vertex> p(g.vertex_count());
  std::iota(p.begin(), p.end(), Vertex{0});
  do {
    if (maps_onto(g, h, p)) return p;
  } while (std::next_permutation(p.begin(), p.end()));
  return std::nullopt;
}

inline std::vector<std::vector<Vertex>> automorphisms(const Graph& g) {
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> p(g.vertex_count());
  std::iota(p.begin(), p.end(), Vertex{0});
  do {
    if (maps_onto(g, g, p)) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Graph from a bitmask over colex pair indices.
inline Graph from_mask(std::size_t n, std::uint64_t mask) {
  Graph g(n);
  std::size_t i = 0;
  for (Vertex v = 1; v < n; ++v)
    for (Vertex u = 0; u < v; ++u, ++i)
      if ((mask >> i) & 1u) g.add_edge(u, v);
  return g;
}

inline Graph permuted(const Graph& g, const std::vector<Vertex>& p) {
  Graph h(g.vertex_count());
  for (Vertex a = 0; a < g.vertex_count(); ++a)
    for (Vertex b = a + 1; b < g.vertex_count(); ++b)
      if (edge(g, a, b)) h.add_edge(p[a], p[b]);
  return h;
}

/// All k-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<Vertex>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<Vertex>> out;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    std::vector<Vertex> s;
    for (Vertex v = 0; v < n; ++v)
      if (pick[v]) s.push_back(v);
    out.push_back(s);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

/// E_delta by direct quantification: every W of size v(G)-delta and every
/// injection phi: W -> V with G[W] ≅ G[phi(W)] via phi must be the identity.
inline bool event_holds(const Graph& g, std::size_t delta) {
  const auto total = g.vertex_count();
  const auto n = total - delta;
  for (const auto& w : subsets(total, n))
    for (const auto& u : subsets(total, n)) {
      std::vector<Vertex> img = u;
      do {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
          for (std::size_t j = i + 1; j < n && ok; ++j)
            ok = edge(g, w[i], w[j]) == edge(g, img[i], img[j]);
        if (!ok) continue;
        for (std::size_t i = 0; i < n; ++i)
          if (img[i] != w[i]) return false;
      } while (std::next_permutation(img.begin(), img.end()));
    }
  return true;
}


/// Every graph of B_S(G) for distinct pairs S, by brute force over 2^|S|
/// presence choices.
inline std::vector<Graph> ball(const Graph& g, const std::vector<reconlab::VertexPair>& s) {
  std::vector<Graph> out;
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << s.size()); ++c) {
    Graph h = g;
    for (std::size_t i = 0; i < s.size(); ++i) h.set_edge(s[i].u, s[i].v, (c >> i) & 1u);
    out.push_back(h);
  }
  return out;
}

inline bool ball_event_holds(const Graph& g, const std::vector<reconlab::VertexPair>& s, std::size_t delta) {
  for (const auto& h : ball(g, s))
    if (!event_holds(h, delta)) return false;
  return true;
}

/// Every graph within Hamming distance r of g.
inline std::vector<Graph> radius_ball(const Graph& g, std::size_t r) {
  const auto n = g.vertex_count();
  std::vector<reconlab::VertexPair> all;
  for (Vertex v = 1; v < n; ++v)
    for (Vertex u = 0; u < v; ++u) all.emplace_back(u, v);
  std::vector<Graph> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << all.size()); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) > r) continue;
    Graph h = g;
    for (std::size_t i = 0; i < all.size(); ++i)
      if ((mask >> i) & 1u) h.toggle_edge(all[i].u, all[i].v);
    out.push_back(h);
  }
  return out;
}

/// Induced subgraph by explicit relabelling in the given order.
inline Graph induced(const Graph& g, const std::vector<Vertex>& keep) {
  Graph h(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = i + 1; j < keep.size(); ++j)
      if (edge(g, keep[i], keep[j])) h.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
  return h;
}

inline bool isomorphic(const Graph& g, const Graph& h) { return isomorphism(g, h).has_value(); }

/// Decks compared as multisets by pairwise brute-force isomorphism.
inline bool same_deck(const Graph& g, const Graph& h) {
  const auto n = g.vertex_count();
  if (h.vertex_count() != n) return false;
  std::vector<Graph> a, b;
  for (Vertex v = 0; v < n; ++v) {
    std::vector<Vertex> ka, kb;
    for (Vertex u = 0; u < n; ++u)
      if (u != v) ka.push_back(u);
    a.push_back(induced(g, ka));
    b.push_back(induced(h, ka));
  }
  std::vector<bool> used(n, false);
  for (const auto& card : a) {
    bool found = false;
    for (std::size_t j = 0; j < n && !found; ++j)
      if (!used[j] && isomorphic(card, b[j])) used[j] = found = true;
    if (!found) return false;
  }
  return true;
}

/// All injections of {0..k-1} into {0..t-1}.
inline std::vector<std::vector<Vertex>> injections(std::size_t k, std::size_t t) {
  std::vector<std::vector<Vertex>> out;
  for (const auto& img : subsets(t, k)) {
    auto p = img;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
  }
  return out;
}

/// Orbit lengths of e -> phi(e) via union-find over the pairs touched.
inline std::map<std::size_t, std::size_t> orbit_lengths(const std::vector<Vertex>& domain,
                                                        const std::vector<Vertex>& image) {
  std::map<std::pair<Vertex, Vertex>, std::pair<Vertex, Vertex>> parent;
  auto norm = [](Vertex a, Vertex b) { return a < b ? std::make_pair(a, b) : std::make_pair(b, a); };
  std::function<std::pair<Vertex, Vertex>(std::pair<Vertex, Vertex>)> find = [&](auto e) {
    auto it = parent.find(e);
    if (it == parent.end()) { parent[e] = e; return e; }
    if (it->second == e) return e;
    auto r = find(it->second);
    parent[e] = r;
    return r;
  };
  for (std::size_t i = 0; i < domain.size(); ++i)
    for (std::size_t j = i + 1; j < domain.size(); ++j) {
      auto a = find(norm(domain[i], domain[j]));
      auto b = find(norm(image[i], image[j]));
      if (a != b) parent[a] = b;
    }
  std::map<std::pair<Vertex, Vertex>, std::size_t> size;
  std::vector<std::pair<Vertex, Vertex>> keys;
  for (auto& kv : parent) keys.push_back(kv.first);
  for (auto& k : keys) ++size[find(k)];
  std::map<std::size_t, std::size_t> out;
  for (auto& kv : size) ++out[kv.second];
  return out;
}

}  // namespace oracle
