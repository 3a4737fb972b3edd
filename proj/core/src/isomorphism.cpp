#include "reconlab/isomorphism.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <string>

#include "reconlab/error.hpp"

namespace reconlab {

namespace {

using Colors = std::vector<std::uint32_t>;

/// Colour refinement in place. Each round recolours every vertex by the rank
/// of (old colour, neighbour counts per old colour); rounds repeat until the
/// number of cells stops growing. Colours stay dense in [0, k) and a cell
/// never moves ahead of a cell that preceded it, so the result refines the
/// input ordering.
class Refiner {
 public:
  explicit Refiner(const Graph& g) : g_(g), n_(g.vertex_count()), w_(g.words_per_row()) {}

  std::uint32_t refine(Colors& color, std::uint32_t k) {
    while (k < n_) {
      const std::size_t stride = std::size_t{k} + 1;
      masks_.assign(std::size_t{k} * w_, 0);
      for (Vertex v = 0; v < n_; ++v) masks_[color[v] * w_ + (v >> 6)] |= std::uint64_t{1} << (v & 63);
      keys_.resize(n_ * stride);
      for (Vertex v = 0; v < n_; ++v) {
        std::uint32_t* key = keys_.data() + v * stride;
        key[0] = color[v];
        const auto row = g_.row(v);
        for (std::uint32_t c = 0; c < k; ++c)
          key[1 + c] = static_cast<std::uint32_t>(
              detail::popcount_and(row, std::span<const std::uint64_t>(masks_.data() + c * w_, w_)));
      }
      order_.resize(n_);
      std::iota(order_.begin(), order_.end(), Vertex{0});
      auto key_of = [&](Vertex v) { return keys_.data() + v * stride; };
      std::sort(order_.begin(), order_.end(), [&](Vertex a, Vertex b) {
        return std::lexicographical_compare(key_of(a), key_of(a) + stride, key_of(b), key_of(b) + stride);
      });
      std::uint32_t next = 0;
      for (std::size_t i = 0; i < n_; ++i) {
        if (i > 0 && !std::equal(key_of(order_[i - 1]), key_of(order_[i - 1]) + stride, key_of(order_[i]))) ++next;
        color[order_[i]] = next;
      }
      const std::uint32_t nk = n_ == 0 ? 0 : next + 1;
      if (nk == k) return k;
      k = nk;
    }
    return k;
  }

 private:
  const Graph& g_;
  std::size_t n_;
  std::size_t w_;
  std::vector<std::uint64_t> masks_;
  std::vector<std::uint32_t> keys_;
  std::vector<Vertex> order_;
};

/// Gives v its own cell just ahead of the rest of its old cell.
void individualize(Colors& color, Vertex v) {
  const auto c = color[v];
  for (Vertex u = 0; u < color.size(); ++u)
    if (color[u] > c || (color[u] == c && u != v)) ++color[u];
}

std::uint32_t dense_ranks(std::span<const std::uint32_t> in, Colors& out) {
  std::vector<std::uint32_t> values(in.begin(), in.end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  out.resize(in.size());
  for (std::size_t i = 0; i < in.size(); ++i)
    out[i] = static_cast<std::uint32_t>(std::lower_bound(values.begin(), values.end(), in[i]) - values.begin());
  return static_cast<std::uint32_t>(values.size());
}

struct UnionFind {
  std::vector<Vertex> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), Vertex{0}); }
  Vertex find(Vertex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

/// Individualization-refinement search for the least leaf.
///
/// Every leaf is compared with the first and the best leaf found so far. An
/// equal leaf yields an automorphism, and the search resumes at the deepest
/// common ancestor of the two paths. At each node, children in the same orbit
/// of the automorphisms found so far that fix the node's path are skipped.
class Searcher {
 public:
  Searcher(const Graph& g, bool stop_at_first_automorphism)
      : g_(g), n_(g.vertex_count()), w_(g.words_per_row()), refiner_(g), stop_at_first_(stop_at_first_automorphism) {}

  void run(std::span<const std::uint32_t> initial) {
    Colors color;
    std::uint32_t k = 0;
    if (initial.empty()) {
      color.assign(n_, 0);
      k = n_ == 0 ? 0 : 1;
    } else {
      k = dense_ranks(initial, color);
    }
    k = refiner_.refine(color, k);
    dfs(color, k);
  }

  std::vector<std::uint64_t> best_leaf;
  Colors best_lab;
  std::vector<std::vector<Vertex>> gens;

 private:
  static constexpr std::size_t kContinue = std::numeric_limits<std::size_t>::max();

  std::size_t dfs(const Colors& color, std::uint32_t k) {
    if (k == n_) return leaf(color);

    // Target: smallest non-singleton cell, lowest colour on ties.
    sizes_.assign(k, 0);
    for (auto c : color) ++sizes_[c];
    std::uint32_t target = 0;
    std::size_t best_size = std::numeric_limits<std::size_t>::max();
    for (std::uint32_t c = 0; c < k; ++c)
      if (sizes_[c] >= 2 && sizes_[c] < best_size) {
        best_size = sizes_[c];
        target = c;
      }
    std::vector<Vertex> cell;
    for (Vertex v = 0; v < n_; ++v)
      if (color[v] == target) cell.push_back(v);

    const std::size_t depth = path_.size();
    std::vector<Vertex> explored;
    Colors child;
    // Orbits of the generators fixing the path, grown as generators arrive.
    UnionFind orbits(gens.empty() ? 0 : n_);
    std::size_t absorbed = 0;
    for (Vertex w : cell) {
      if (!explored.empty() && absorbed < gens.size()) {
        if (orbits.parent.empty()) orbits = UnionFind(n_);
        for (; absorbed < gens.size(); ++absorbed) {
          const auto& gamma = gens[absorbed];
          if (!std::all_of(path_.begin(), path_.end(), [&](Vertex p) { return gamma[p] == p; })) continue;
          for (Vertex v = 0; v < n_; ++v) orbits.unite(v, gamma[v]);
        }
      }
      if (!orbits.parent.empty()) {
        const auto root = orbits.find(w);
        if (std::any_of(explored.begin(), explored.end(), [&](Vertex e) { return orbits.find(e) == root; })) continue;
      }
      explored.push_back(w);
      child = color;
      individualize(child, w);
      const auto k2 = refiner_.refine(child, k + 1);
      path_.push_back(w);
      const auto r = dfs(child, k2);
      path_.pop_back();
      if (stop_) return 0;
      if (r != kContinue && r < depth) return r;
    }
    return kContinue;
  }

  void make_leaf(const Colors& color, std::vector<std::uint64_t>& out) const {
    out.assign(n_ * w_, 0);
    for (Vertex v = 0; v < n_; ++v) {
      std::uint64_t* row = out.data() + color[v] * w_;
      detail::for_each_bit(g_.row(v), [&](std::size_t u) {
        const auto p = color[u];
        row[p >> 6] |= std::uint64_t{1} << (p & 63);
      });
    }
  }

  static std::size_t common_prefix(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    std::size_t i = 0;
    while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
    return i;
  }

  void record(const Colors& color, const std::vector<Vertex>& inv) {
    std::vector<Vertex> gamma(n_);
    for (Vertex v = 0; v < n_; ++v) gamma[v] = inv[color[v]];
    gens.push_back(std::move(gamma));
    if (stop_at_first_) stop_ = true;
  }

  static std::vector<Vertex> inverse_of(const Colors& color) {
    std::vector<Vertex> inv(color.size());
    for (Vertex v = 0; v < color.size(); ++v) inv[color[v]] = v;
    return inv;
  }

  std::size_t leaf(const Colors& color) {
    make_leaf(color, scratch_);
    if (!have_first_) {
      have_first_ = true;
      first_leaf_ = best_leaf = scratch_;
      best_lab = color;
      first_path_ = best_path_ = path_;
      first_inv_ = best_inv_ = inverse_of(color);
      return kContinue;
    }
    if (scratch_ == first_leaf_) {
      record(color, first_inv_);
      return common_prefix(path_, first_path_);
    }
    if (scratch_ == best_leaf) {
      record(color, best_inv_);
      return common_prefix(path_, best_path_);
    }
    if (scratch_ < best_leaf) {
      best_leaf = scratch_;
      best_lab = color;
      best_path_ = path_;
      best_inv_ = inverse_of(color);
    }
    return kContinue;
  }

  const Graph& g_;
  std::size_t n_;
  std::size_t w_;
  Refiner refiner_;
  bool stop_at_first_;
  bool stop_ = false;
  bool have_first_ = false;
  std::vector<Vertex> path_, first_path_, best_path_;
  std::vector<Vertex> first_inv_, best_inv_;
  std::vector<std::uint64_t> first_leaf_, scratch_;
  std::vector<std::size_t> sizes_;
};

Certificate leaf_to_certificate(std::size_t n, std::size_t w, const std::vector<std::uint64_t>& leaf) {
  const std::size_t pairs = n < 2 ? 0 : n * (n - 1) / 2;
  std::vector<std::uint64_t> bits(detail::words_for(pairs), 0);
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if ((leaf[i * w + (j >> 6)] >> (j & 63)) & 1u) detail::set_bit(bits, i * (i - 1) / 2 + j);
  return Certificate(n, std::move(bits));
}

void check_vertex(const Graph& g, Vertex v) {
  if (v >= g.vertex_count())
    throw InputError("vertex " + std::to_string(v) + " out of range for n=" + std::to_string(g.vertex_count()));
}

std::vector<VertexMap> to_maps(std::vector<std::vector<Vertex>> gens, std::size_t n) {
  std::vector<VertexMap> out;
  out.reserve(gens.size());
  for (auto& gamma : gens) out.emplace_back(std::move(gamma), n);
  return out;
}

std::vector<std::vector<Vertex>> raw_generators(const Graph& g, bool stop_at_first) {
  Searcher s(g, stop_at_first);
  s.run({});
  return std::move(s.gens);
}

}  // namespace

std::string Certificate::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (int shift = 28; shift >= 0; shift -= 4) out.push_back(kDigits[(n_ >> shift) & 15]);
  const std::size_t pairs = n_ < 2 ? 0 : n_ * (n_ - 1) / 2;
  const std::size_t bytes = (pairs + 7) / 8;
  for (std::size_t b = 0; b < bytes; ++b) {
    const auto byte = (bits_[b / 8] >> (8 * (b % 8))) & 0xff;
    out.push_back(kDigits[byte >> 4]);
    out.push_back(kDigits[byte & 15]);
  }
  return out;
}

Certificate Certificate::from_hex(std::string_view hex) {
  auto nibble = [](char c) -> unsigned {
    if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
    if (c >= 'a' && c <= 'f') return static_cast<unsigned>(c - 'a' + 10);
    if (c >= 'A' && c <= 'F') return static_cast<unsigned>(c - 'A' + 10);
    throw ParseError("certificate hex: invalid digit '" + std::string(1, c) + "'");
  };
  if (hex.size() < 8) throw ParseError("certificate hex: too short");
  std::size_t n = 0;
  for (int i = 0; i < 8; ++i) n = (n << 4) | nibble(hex[static_cast<std::size_t>(i)]);
  const std::size_t pairs = n < 2 ? 0 : n * (n - 1) / 2;
  const std::size_t bytes = (pairs + 7) / 8;
  if (hex.size() != 8 + 2 * bytes) throw ParseError("certificate hex: length does not match vertex count");
  std::vector<std::uint64_t> bits(detail::words_for(pairs), 0);
  for (std::size_t b = 0; b < bytes; ++b) {
    const std::uint64_t byte = (nibble(hex[8 + 2 * b]) << 4) | nibble(hex[9 + 2 * b]);
    bits[b / 8] |= byte << (8 * (b % 8));
  }
  if (pairs % 64 != 0 && !bits.empty() && (bits.back() >> (pairs % 64)) != 0)
    throw ParseError("certificate hex: nonzero padding bits");
  return Certificate(n, std::move(bits));
}

Graph Certificate::to_graph() const {
  Graph g(n_);
  for (Vertex v = 1; v < n_; ++v)
    for (Vertex u = 0; u < v; ++u)
      if (detail::test_bit(bits_, PairIndex::index_unchecked(u, v))) g.toggle_edge_unchecked(u, v);
  return g;
}

std::size_t CertificateHash::operator()(const Certificate& c) const noexcept {
  std::uint64_t h = 1469598103934665603ull ^ c.vertex_count();
  for (auto w : c.bits()) {
    h ^= w;
    h *= 1099511628211ull;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

VertexMap::VertexMap(std::vector<Vertex> image, std::size_t target_size)
    : image_(std::move(image)), target_size_(target_size) {
  std::vector<bool> seen(target_size, false);
  for (auto v : image_) {
    if (v >= target_size) throw InputError("vertex map image " + std::to_string(v) + " out of range");
    if (seen[v]) throw InputError("vertex map is not injective at image " + std::to_string(v));
    seen[v] = true;
  }
}

VertexMap VertexMap::identity(std::size_t n) {
  std::vector<Vertex> image(n);
  std::iota(image.begin(), image.end(), Vertex{0});
  return VertexMap(std::move(image), n);
}

bool VertexMap::is_identity() const noexcept {
  for (Vertex v = 0; v < image_.size(); ++v)
    if (image_[v] != v) return false;
  return true;
}

VertexMap VertexMap::inverse() const {
  if (image_.size() != target_size_) throw InputError("inverse needs a permutation");
  std::vector<Vertex> inv(image_.size());
  for (Vertex v = 0; v < image_.size(); ++v) inv[image_[v]] = v;
  return VertexMap(std::move(inv), target_size_);
}

VertexMap VertexMap::compose(const VertexMap& other) const {
  if (other.target_size_ != image_.size()) throw InputError("compose: size mismatch");
  std::vector<Vertex> out(other.image_.size());
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = image_[other.image_[v]];
  return VertexMap(std::move(out), target_size_);
}

CanonicalLabeling canonical_labeling(const Graph& g, std::span<const std::uint32_t> colors) {
  if (!colors.empty() && colors.size() != g.vertex_count())
    throw InputError("canonical_labeling: colour vector length differs from vertex count");
  Searcher s(g, false);
  s.run(colors);
  CanonicalLabeling out;
  out.certificate = leaf_to_certificate(g.vertex_count(), g.words_per_row(), s.best_leaf);
  out.labeling.assign(s.best_lab.begin(), s.best_lab.end());
  out.generators = to_maps(std::move(s.gens), g.vertex_count());
  return out;
}

Certificate canonical_form(const Graph& g) {
  Searcher s(g, false);
  s.run({});
  return leaf_to_certificate(g.vertex_count(), g.words_per_row(), s.best_leaf);
}

bool is_isomorphism(const Graph& g, const Graph& h, const VertexMap& m) {
  const auto n = g.vertex_count();
  if (h.vertex_count() != n || m.domain_size() != n || m.target_size() != n) return false;
  const auto& img = m.image();
  for (Vertex v = 1; v < n; ++v)
    for (Vertex u = 0; u < v; ++u)
      if (g.has_edge_unchecked(u, v) != h.has_edge_unchecked(img[u], img[v])) return false;
  return true;
}

std::optional<VertexMap> find_isomorphism(const Graph& g, const Graph& h) {
  return find_isomorphism(g, h, {});
}

std::optional<VertexMap> find_isomorphism(const Graph& g, const Graph& h,
                                          std::span<const std::pair<Vertex, Vertex>> pins) {
  const auto n = g.vertex_count();
  if (h.vertex_count() != n || g.edge_count() != h.edge_count()) return std::nullopt;
  for (const auto& [x, y] : pins) {
    check_vertex(g, x);
    check_vertex(h, y);
  }
  // Pinned vertices get private colours 1, 2, ... in both graphs, so a
  // colour-preserving isomorphism is exactly one honouring the pins.
  Colors cg(n, 0);
  Colors ch(n, 0);
  std::uint32_t next = 1;
  for (const auto& [x, y] : pins) {
    if (cg[x] != 0 || ch[y] != 0) {
      if (cg[x] == ch[y]) continue;  // repeated pin
      return std::nullopt;           // x or y pinned twice inconsistently
    }
    cg[x] = ch[y] = next++;
  }
  const auto lg = canonical_labeling(g, pins.empty() ? std::span<const std::uint32_t>{} : cg);
  const auto lh = canonical_labeling(h, pins.empty() ? std::span<const std::uint32_t>{} : ch);
  if (lg.certificate != lh.certificate) return std::nullopt;
  std::vector<Vertex> h_inv(n);
  for (Vertex v = 0; v < n; ++v) h_inv[lh.labeling[v]] = v;
  std::vector<Vertex> image(n);
  for (Vertex v = 0; v < n; ++v) image[v] = h_inv[lg.labeling[v]];
  VertexMap m(std::move(image), n);
  // Equal coloured certificates with equal colour classes: the composed map
  // must be an isomorphism that honours the pins. Check anyway.
  if (!is_isomorphism(g, h, m)) return std::nullopt;
  for (const auto& [x, y] : pins)
    if (m(x) != y) return std::nullopt;
  return m;
}

std::vector<VertexMap> automorphism_generators(const Graph& g) {
  return to_maps(raw_generators(g, false), g.vertex_count());
}

std::vector<VertexMap> automorphisms(const Graph& g) {
  const auto n = g.vertex_count();
  if (n > kAutomorphismEnumerationMaxN)
    throw ResourceError("full automorphism enumeration is limited to n <= 12 (use automorphism_generators)", n);
  const auto gens = raw_generators(g, false);
  std::vector<Vertex> id(n);
  std::iota(id.begin(), id.end(), Vertex{0});
  std::set<std::vector<Vertex>> group{id};
  std::vector<std::vector<Vertex>> frontier{id};
  while (!frontier.empty()) {
    std::vector<std::vector<Vertex>> next;
    for (const auto& e : frontier)
      for (const auto& gamma : gens) {
        std::vector<Vertex> prod(n);
        for (Vertex v = 0; v < n; ++v) prod[v] = gamma[e[v]];
        if (group.insert(prod).second) {
          if (group.size() > kAutomorphismEnumerationMaxSize)
            throw ResourceError("automorphism group exceeds 10^6 elements", group.size());
          next.push_back(std::move(prod));
        }
      }
    frontier = std::move(next);
  }
  std::vector<VertexMap> out;
  out.reserve(group.size());
  for (const auto& p : group) out.emplace_back(p, n);
  return out;
}

bool is_asymmetric(const Graph& g) { return raw_generators(g, true).empty(); }

bool are_similar(const Graph& g, Vertex x, Vertex y) {
  check_vertex(g, x);
  check_vertex(g, y);
  if (x == y) return true;
  UnionFind uf(g.vertex_count());
  for (const auto& gamma : raw_generators(g, false))
    for (Vertex v = 0; v < g.vertex_count(); ++v) uf.unite(v, gamma[v]);
  return uf.find(x) == uf.find(y);
}

bool is_fixed_set(const Graph& g, std::span<const Vertex> u) {
  std::vector<bool> in(g.vertex_count(), false);
  for (auto v : u) {
    check_vertex(g, v);
    in[v] = true;
  }
  for (const auto& gamma : raw_generators(g, false))
    for (auto v : u)
      if (!in[gamma[v]]) return false;
  return true;
}

std::size_t CertificateCache::KeyHash::operator()(const Key& k) const noexcept {
  std::uint64_t h = 1469598103934665603ull ^ k.n;
  for (auto w : k.rows) {
    h ^= w;
    h *= 1099511628211ull;
    h ^= h >> 31;
  }
  return static_cast<std::size_t>(h);
}

Certificate CertificateCache::get(const Graph& g) {
  Key key{g.vertex_count(), {}};
  key.rows.reserve(g.vertex_count() * g.words_per_row());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const auto r = g.row(v);
    key.rows.insert(key.rows.end(), r.begin(), r.end());
  }
  {
    std::lock_guard lock(mu_);
    if (auto it = memo_.find(key); it != memo_.end()) {
      ++hits_;
      return it->second;
    }
  }
  auto cert = canonical_form(g);
  std::lock_guard lock(mu_);
  if (memo_.size() >= capacity_) memo_.clear();
  memo_.emplace(std::move(key), cert);
  return cert;
}

std::size_t CertificateCache::size() const {
  std::lock_guard lock(mu_);
  return memo_.size();
}

std::uint64_t CertificateCache::hits() const {
  std::lock_guard lock(mu_);
  return hits_;
}

void CertificateCache::clear() {
  std::lock_guard lock(mu_);
  memo_.clear();
  hits_ = 0;
}

}  // namespace reconlab
