#include "reconlab/events.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "reconlab/error.hpp"
#include "reconlab/isomorphism.hpp"

namespace reconlab {

namespace {

std::size_t pair_count(std::size_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

/// All k-subsets of [0, n) in lexicographic order.
std::vector<std::vector<Vertex>> lex_subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = static_cast<Vertex>(i);
  while (true) {
    out.push_back(cur);
    std::size_t pos = k;
    while (pos > 0 && cur[pos - 1] == n - k + pos - 1) --pos;
    if (pos == 0) break;
    ++cur[pos - 1];
    for (std::size_t j = pos; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

void check_delta(const Graph& g, std::size_t delta) {
  if (delta >= g.vertex_count())
    throw InputError("E_delta needs delta < v(G); got delta=" + std::to_string(delta) + ", v(G)=" +
                     std::to_string(g.vertex_count()));
}

std::size_t position_in(const std::vector<Vertex>& sorted, Vertex v) {
  return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin());
}

/// Greedy lexicographically least φ with domain w: each coordinate takes the
/// smallest image that still admits a completion into some target set.
std::optional<EventWitness> least_witness(const Graph& g, const std::vector<Vertex>& w,
                                          const std::vector<const std::vector<Vertex>*>& targets) {
  const auto n = w.size();
  const Graph gw = induced_subgraph(g, w);
  std::vector<Graph> gt;
  gt.reserve(targets.size());
  for (const auto* u : targets) gt.push_back(induced_subgraph(g, *u));

  std::vector<Vertex> img;
  std::vector<bool> used(g.vertex_count(), false);

  auto completable = [&]() {
    bool moved = false;
    for (std::size_t j = 0; j < img.size(); ++j) moved |= img[j] != w[j];
    for (std::size_t t = 0; t < targets.size(); ++t) {
      const auto& u = *targets[t];
      std::vector<std::pair<Vertex, Vertex>> pins;
      bool inside = true;
      for (std::size_t j = 0; j < img.size() && inside; ++j) {
        const auto pos = position_in(u, img[j]);
        inside = pos < u.size() && u[pos] == img[j];
        pins.emplace_back(static_cast<Vertex>(j), static_cast<Vertex>(pos));
      }
      if (!inside) continue;
      if (u == w && !moved) {
        // Need a non-identity automorphism of G[W] fixing the pinned prefix.
        std::vector<std::uint32_t> colors(n, 0);
        for (std::size_t j = 0; j < img.size(); ++j) colors[j] = static_cast<std::uint32_t>(j + 1);
        if (!canonical_labeling(gw, colors).generators.empty()) return true;
      } else if (find_isomorphism(gw, gt[t], pins)) {
        return true;
      }
    }
    return false;
  };

  for (std::size_t i = 0; i < n; ++i) {
    bool found = false;
    for (Vertex c = 0; c < g.vertex_count() && !found; ++c) {
      if (used[c]) continue;
      img.push_back(c);
      if (completable()) {
        used[c] = true;
        found = true;
      } else {
        img.pop_back();
      }
    }
    if (!found) return std::nullopt;
  }
  EventWitness out;
  out.domain = w;
  out.image = std::move(img);
  out.member = g;
  return out;
}

/// Certificates of every (v-δ)-subgraph, kept current under single toggles.
class IncrementalEvent {
 public:
  IncrementalEvent(const Graph& g, std::size_t delta)
      : cur_(g), subsets_(lex_subsets(g.vertex_count(), g.vertex_count() - delta)) {
    const auto words = detail::words_for(g.vertex_count());
    member_.assign(subsets_.size() * words, 0);
    certs_.resize(subsets_.size());
    symmetric_.assign(subsets_.size(), 0);
    for (std::size_t i = 0; i < subsets_.size(); ++i) {
      for (auto v : subsets_[i]) member_[i * words + (v >> 6)] |= std::uint64_t{1} << (v & 63);
      insert(i);
    }
  }

  void toggle(VertexPair p) {
    cur_.toggle_edge_unchecked(p.u, p.v);
    const auto words = detail::words_for(cur_.vertex_count());
    for (std::size_t i = 0; i < subsets_.size(); ++i) {
      const std::uint64_t* m = member_.data() + i * words;
      if (!((m[p.u >> 6] >> (p.u & 63)) & 1u) || !((m[p.v >> 6] >> (p.v & 63)) & 1u)) continue;
      erase(i);
      insert(i);
    }
  }

  bool holds() const { return duplicates_ == 0 && symmetric_count_ == 0; }
  const Graph& graph() const { return cur_; }

 private:
  void insert(std::size_t i) {
    auto lab = canonical_labeling(induced_subgraph(cur_, subsets_[i]));
    symmetric_[i] = lab.generators.empty() ? 0 : 1;
    symmetric_count_ += symmetric_[i];
    if (counts_[lab.certificate]++ > 0) ++duplicates_;
    certs_[i] = std::move(lab.certificate);
  }

  void erase(std::size_t i) {
    symmetric_count_ -= symmetric_[i];
    auto it = counts_.find(certs_[i]);
    if (--it->second > 0) --duplicates_;
    else counts_.erase(it);
  }

  Graph cur_;
  std::vector<std::vector<Vertex>> subsets_;
  std::vector<std::uint64_t> member_;
  std::vector<Certificate> certs_;
  std::vector<std::uint8_t> symmetric_;
  std::unordered_map<Certificate, std::uint32_t, CertificateHash> counts_;
  std::size_t duplicates_ = 0;
  std::size_t symmetric_count_ = 0;
};

/// Exact search for a violation of E_δ somewhere in a ball, without listing
/// the ball's members.
///
/// A violation is a member G' plus an injection φ on W that moves a vertex and
/// preserves adjacency inside W. For fixed φ the requirement
/// G'(u,w) = G'(φu, φw) merges vertex pairs into equality classes. In a B_S
/// ball a class is satisfiable iff its pairs outside S agree in G; in a radius
/// ball the cheapest fix of a class flips its minority, and the sum of those
/// costs must stay within r. Both tests are monotone as classes merge, so a
/// union-find with rollback prunes partial maps.
///
/// Allowing fewer than δ exclusions changes nothing: a witness on a larger
/// domain restricts to one of size v - δ that keeps a moved vertex.
///
/// Symmetry breaking: of φ and φ⁻¹ (on φ(W)) take the one whose least moved
/// vertex x is smaller. Then vertices below x are fixed or excluded, every
/// moved vertex maps to [x, v), and y = φ(x) > x. The search runs one
/// subproblem per pair x < y.
class BallSearch {
 public:
  BallSearch(const Graph& g, std::span<const std::uint64_t> free_pairs, std::optional<std::size_t> radius,
             std::size_t delta, std::uint64_t node_budget)
      : g_(g),
        v_(g.vertex_count()),
        w_(detail::words_for(g.vertex_count())),
        radius_mode_(radius.has_value()),
        r_(radius.value_or(0)),
        delta_(delta),
        budget_(node_budget) {
    const auto np = pair_count(v_);
    free_.assign(detail::words_for(np), 0);
    if (!radius_mode_)
      for (std::size_t i = 0; i < free_.size() && i < free_pairs.size(); ++i) free_[i] = free_pairs[i];
    adj_.assign(v_ * w_, 0);
    nonadj_.assign(v_ * w_, 0);
    free_rows_.assign(v_ * w_, 0);
    for (Vertex a = 0; a < v_; ++a)
      for (Vertex b = 0; b < v_; ++b) {
        if (a == b) continue;
        auto* target = g.has_edge_unchecked(a, b) ? adj_.data() : nonadj_.data();
        target[a * w_ + (b >> 6)] |= std::uint64_t{1} << (b & 63);
        if (!radius_mode_ && detail::test_bit(free_, PairIndex::index_unchecked(a, b)))
          free_rows_[a * w_ + (b >> 6)] |= std::uint64_t{1} << (b & 63);
      }
    parent_.resize(np);
    size_.assign(np, 1);
    c0_.assign(np, 0);
    c1_.assign(np, 0);
    for (std::size_t i = 0; i < np; ++i) {
      parent_[i] = static_cast<std::uint32_t>(i);
      if (!radius_mode_ && detail::test_bit(free_, i)) continue;
      (pair_value(i) ? c1_ : c0_)[i] = 1;
    }
    img_.assign(v_, kUnassigned);
    used_.assign(w_, 0);
    dom_.assign((v_ + 2) * v_ * w_, 0);
    if (radius_mode_) mism_.assign((v_ + 2) * v_ * v_, 0);
  }

  enum class Status { holds, violated, unknown };

  Status run() {
    if (v_ < 2) return Status::holds;
    const std::size_t limit = delta_ + (radius_mode_ ? r_ : 0);
    for (Vertex x = 0; x < v_; ++x)
      for (Vertex y = x + 1; y < v_; ++y) {
        // Vertices below x that x and y tell apart must be excluded (or, in
        // a radius ball, paid for).
        std::size_t forced = 0;
        for (Vertex f = 0; f < x && forced <= limit; ++f) {
          const auto ex = PairIndex::index_unchecked(x, f);
          const auto ey = PairIndex::index_unchecked(y, f);
          if (!radius_mode_ && (detail::test_bit(free_, ex) || detail::test_bit(free_, ey))) continue;
          if (pair_value(ex) != pair_value(ey)) ++forced;
        }
        if (forced > limit) continue;
        if (solve(x, y)) return Status::violated;
        if (hit_budget_) return Status::unknown;
      }
    return Status::holds;
  }

  std::uint64_t nodes() const { return nodes_; }

  /// Valid after run() returned violated.
  EventWitness witness() const { return witness_; }

 private:
  static constexpr std::int32_t kUnassigned = -1;
  static constexpr std::int32_t kExcluded = -2;

  struct LogEntry {
    std::uint32_t child;
    std::uint32_t root;
    std::uint32_t old_size;
    std::uint32_t old_c0;
    std::uint32_t old_c1;
    std::uint64_t old_cost;
  };

  bool pair_value(std::size_t i) const {
    const auto p = pairs_at(i);
    return g_.has_edge_unchecked(p.u, p.v);
  }

  static VertexPair pairs_at(std::size_t i) {
    auto v = static_cast<std::size_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(i))) / 2.0);
    while (v * (v - 1) / 2 > i) --v;
    while ((v + 1) * v / 2 <= i) ++v;
    return {static_cast<Vertex>(i - v * (v - 1) / 2), static_cast<Vertex>(v)};
  }

  bool is_free(Vertex a, Vertex b) const {
    return !radius_mode_ && detail::test_bit(free_, PairIndex::index_unchecked(a, b));
  }

  std::uint32_t find(std::uint32_t x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }

  bool unite(std::size_t e, std::size_t f) {
    auto a = find(static_cast<std::uint32_t>(e));
    auto b = find(static_cast<std::uint32_t>(f));
    if (a == b) return true;
    const auto n0 = c0_[a] + c0_[b];
    const auto n1 = c1_[a] + c1_[b];
    std::uint64_t cost = cost_;
    if (radius_mode_) {
      cost = cost_ - std::min(c0_[a], c1_[a]) - std::min(c0_[b], c1_[b]) + std::min(n0, n1);
      if (cost > r_) return false;
    } else if (n0 > 0 && n1 > 0) {
      return false;
    }
    if (size_[a] < size_[b]) std::swap(a, b);
    log_.push_back({b, a, size_[a], c0_[a], c1_[a], cost_});
    parent_[b] = a;
    size_[a] += size_[b];
    c0_[a] = n0;
    c1_[a] = n1;
    cost_ = cost;
    return true;
  }

  void rollback(std::size_t mark) {
    while (log_.size() > mark) {
      const auto e = log_.back();
      log_.pop_back();
      parent_[e.child] = e.child;
      size_[e.root] = e.old_size;
      c0_[e.root] = e.old_c0;
      c1_[e.root] = e.old_c1;
      cost_ = e.old_cost;
    }
  }

  std::uint64_t* dom(std::size_t level, Vertex v) { return dom_.data() + (level * v_ + v) * w_; }
  std::uint8_t* mism(std::size_t level, Vertex v) { return mism_.data() + (level * v_ + v) * v_; }

  void copy_level(std::size_t level) {
    std::copy(dom(level, 0), dom(level, 0) + v_ * w_, dom(level + 1, 0));
    if (radius_mode_) std::copy(mism(level, 0), mism(level, 0) + v_ * v_, mism(level + 1, 0));
  }

  bool assign(Vertex a, Vertex b) {
    for (auto u : mapped_) {
      const auto iu = static_cast<Vertex>(img_[u]);
      const auto e = PairIndex::index_unchecked(a, u);
      const auto f = PairIndex::index_unchecked(b, iu);
      if (e == f) continue;
      if (!unite(e, f)) return false;
      if (radius_mode_ && g_.has_edge_unchecked(a, u) != g_.has_edge_unchecked(b, iu) && ++mismatches_ > 2 * r_)
        return false;
    }
    mapped_.push_back(a);
    img_[a] = static_cast<std::int32_t>(b);
    used_[b >> 6] |= std::uint64_t{1} << (b & 63);
    return true;
  }

  void unassign(Vertex a) {
    const auto b = static_cast<Vertex>(img_[a]);
    mapped_.pop_back();
    img_[a] = kUnassigned;
    used_[b >> 6] &= ~(std::uint64_t{1} << (b & 63));
  }

  /// Narrows level domains after a -> b: b is taken, and in a B_S ball each
  /// unassigned w may only go where its fixed relation to a is reproduced.
  ///
  /// In a radius ball nothing is forbidden outright. Each φ links a pair to
  /// its image pair, so the links form paths and cycles, and a path or cycle
  /// with k links joining an edge to a non-edge needs at least k/2 flips.
  /// Hence at most 2r such links overall; per candidate image the count is
  /// tracked and candidates beyond it are dropped.
  void forward_check(std::size_t level, Vertex a, Vertex b) {
    const std::uint64_t bit = std::uint64_t{1} << (b & 63);
    for (Vertex w = 0; w < v_; ++w) {
      if (img_[w] != kUnassigned) continue;
      std::uint64_t* d = dom(level, w);
      d[b >> 6] &= ~bit;
      if (radius_mode_) {
        std::uint8_t* m = mism(level, w);
        const bool wa = g_.has_edge_unchecked(w, a);
        for (std::size_t k = 0; k < w_; ++k) {
          std::uint64_t bits = d[k];
          while (bits) {
            const auto c = static_cast<Vertex>(k * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
            bits &= bits - 1;
            if (g_.has_edge_unchecked(c, b) != wa && ++m[c] + mismatches_ > 2 * r_)
              d[k] &= ~(std::uint64_t{1} << (c & 63));
          }
        }
        continue;
      }
      if (is_free(w, a)) continue;
      const std::uint64_t* keep = (g_.has_edge_unchecked(w, a) ? adj_.data() : nonadj_.data()) + b * w_;
      const std::uint64_t* fr = free_rows_.data() + b * w_;
      for (std::size_t k = 0; k < w_; ++k) d[k] &= keep[k] | fr[k];
    }
  }

  bool solve(Vertex x, Vertex y) {
    for (Vertex v = 0; v < v_; ++v) {
      std::uint64_t* d = dom(0, v);
      std::fill(d, d + w_, 0);
      if (v < x) {
        d[v >> 6] |= std::uint64_t{1} << (v & 63);
      } else if (v > x) {
        for (Vertex c = x; c < v_; ++c) d[c >> 6] |= std::uint64_t{1} << (c & 63);
      }
    }
    excl_left_ = delta_;
    mismatches_ = 0;
    if (radius_mode_) std::fill(mism(0, 0), mism(0, 0) + v_ * v_, 0);
    assign(x, y);
    forward_check(0, x, y);
    const bool found = dfs(0);
    if (found) {
      build_witness();
    }
    // Undo everything, including a successful branch left in place.
    for (Vertex v = 0; v < v_; ++v) img_[v] = kUnassigned;
    mapped_.clear();
    std::fill(used_.begin(), used_.end(), 0);
    rollback(0);
    return found;
  }

  bool dfs(std::size_t level) {
    if (budget_ != 0 && nodes_ >= budget_) {
      hit_budget_ = true;
      return false;
    }
    ++nodes_;
    std::int32_t best = -1;
    std::size_t best_size = std::numeric_limits<std::size_t>::max();
    std::size_t empties = 0;
    for (Vertex v = 0; v < v_; ++v) {
      if (img_[v] != kUnassigned) continue;
      const auto s = detail::popcount(std::span<const std::uint64_t>(dom(level, v), w_));
      if (s == 0) ++empties;
      if (s < best_size) {
        best_size = s;
        best = static_cast<std::int32_t>(v);
      }
    }
    if (best < 0) return true;
    if (empties > excl_left_) return false;
    const auto v = static_cast<Vertex>(best);
    const std::uint64_t* d = dom(level, v);

    auto try_image = [&](Vertex c) {
      const auto mark = log_.size();
      const auto mismatches = mismatches_;
      if (!assign(v, c)) {
        rollback(mark);
        mismatches_ = mismatches;
        return false;
      }
      copy_level(level);
      forward_check(level + 1, v, c);
      if (dfs(level + 1)) return true;
      unassign(v);
      rollback(mark);
      mismatches_ = mismatches;
      return false;
    };

    if ((d[v >> 6] >> (v & 63)) & 1u)
      if (try_image(v)) return true;
    for (std::size_t k = 0; k < w_ && !hit_budget_; ++k) {
      std::uint64_t bits = d[k];
      while (bits && !hit_budget_) {
        const auto c = static_cast<Vertex>(k * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
        if (c == v) continue;
        if (try_image(c)) return true;
      }
    }
    if (excl_left_ > 0 && !hit_budget_) {
      img_[v] = kExcluded;
      --excl_left_;
      copy_level(level);
      if (dfs(level + 1)) return true;
      ++excl_left_;
      img_[v] = kUnassigned;
    }
    return false;
  }

  void build_witness() {
    Graph member = g_;
    const auto np = pair_count(v_);
    for (std::size_t i = 0; i < np; ++i) {
      const auto r = find(static_cast<std::uint32_t>(i));
      if (size_[r] == 1) continue;
      bool value = pair_value(r);
      if (c1_[r] > c0_[r]) value = true;
      else if (c0_[r] > c1_[r]) value = false;
      const auto p = pairs_at(i);
      if (member.has_edge_unchecked(p.u, p.v) != value) member.toggle_edge_unchecked(p.u, p.v);
    }
    // Domain: mapped vertices, trimmed to v - δ by dropping fixed points
    // first and never the least moved vertex.
    std::vector<Vertex> dom_v;
    for (Vertex v = 0; v < v_; ++v)
      if (img_[v] >= 0) dom_v.push_back(v);
    const std::size_t target = v_ - delta_;
    for (std::size_t pass = 0; pass < 2 && dom_v.size() > target; ++pass) {
      for (std::size_t i = dom_v.size(); i-- > 0 && dom_v.size() > target;) {
        const auto v = dom_v[i];
        const bool fixed = img_[v] == static_cast<std::int32_t>(v);
        const bool keep = pass == 0 ? !fixed : v == first_moved();
        if (!keep) dom_v.erase(dom_v.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
    witness_ = EventWitness{};
    witness_.domain = dom_v;
    for (auto v : dom_v) witness_.image.push_back(static_cast<Vertex>(img_[v]));
    witness_.member = std::move(member);
  }

  Vertex first_moved() const {
    for (Vertex v = 0; v < v_; ++v)
      if (img_[v] >= 0 && img_[v] != static_cast<std::int32_t>(v)) return v;
    return 0;
  }

  const Graph& g_;
  std::size_t v_;
  std::size_t w_;
  bool radius_mode_;
  std::uint64_t r_;
  std::size_t delta_;
  std::uint64_t budget_;
  std::vector<std::uint64_t> free_;
  std::vector<std::uint64_t> adj_, nonadj_, free_rows_;
  std::vector<std::uint32_t> parent_, size_, c0_, c1_;
  std::uint64_t cost_ = 0;
  std::vector<LogEntry> log_;
  std::vector<std::int32_t> img_;
  std::vector<Vertex> mapped_;
  std::vector<std::uint64_t> used_;
  std::vector<std::uint64_t> dom_;
  std::vector<std::uint8_t> mism_;
  std::uint64_t mismatches_ = 0;
  std::size_t excl_left_ = 0;
  std::uint64_t nodes_ = 0;
  bool hit_budget_ = false;
  EventWitness witness_;
};

bool in_ball(const Graph& g, std::span<const std::uint64_t> free, const Graph& member) {
  for (Vertex v = 1; v < g.vertex_count(); ++v)
    for (Vertex u = 0; u < v; ++u)
      if (g.has_edge_unchecked(u, v) != member.has_edge_unchecked(u, v) &&
          !detail::test_bit(free, PairIndex::index_unchecked(u, v)))
        return false;
  return true;
}

std::size_t hamming(const Graph& a, const Graph& b) {
  std::size_t d = 0;
  for (Vertex v = 1; v < a.vertex_count(); ++v)
    for (Vertex u = 0; u < v; ++u) d += a.has_edge_unchecked(u, v) != b.has_edge_unchecked(u, v);
  return d;
}

EventResult from_search(BallSearch& s, BallSearch::Status status, std::size_t delta) {
  EventResult out;
  out.work = s.nodes();
  if (status == BallSearch::Status::violated) {
    out.holds = false;
    out.witness = s.witness();
    if (!verify_witness(*out.witness, delta)) throw std::logic_error("ball search produced an invalid witness");
  } else if (status == BallSearch::Status::unknown) {
    out.exactness = Exactness::search_lower_bound;
  }
  return out;
}

}  // namespace

std::string to_string(Exactness e) {
  switch (e) {
    case Exactness::exact:
      return "exact";
    case Exactness::search_lower_bound:
      return "search-lower-bound";
    case Exactness::sampled_lower_bound:
      return "sampled-lower-bound";
  }
  return "?";
}

bool verify_witness(const EventWitness& w, std::size_t delta) {
  const auto& g = w.member;
  const auto v = g.vertex_count();
  if (delta >= v || w.domain.size() != v - delta || w.image.size() != w.domain.size()) return false;
  std::vector<bool> seen(v, false);
  bool moved = false;
  for (std::size_t i = 0; i < w.domain.size(); ++i) {
    if (w.domain[i] >= v || w.image[i] >= v || seen[w.image[i]]) return false;
    if (i > 0 && w.domain[i] <= w.domain[i - 1]) return false;
    seen[w.image[i]] = true;
    moved |= w.domain[i] != w.image[i];
  }
  if (!moved) return false;
  for (std::size_t i = 0; i < w.domain.size(); ++i)
    for (std::size_t j = i + 1; j < w.domain.size(); ++j)
      if (g.has_edge_unchecked(w.domain[i], w.domain[j]) != g.has_edge_unchecked(w.image[i], w.image[j]))
        return false;
  return true;
}

EventResult check_event(const Graph& g, std::size_t delta) {
  check_delta(g, delta);
  const auto n = g.vertex_count() - delta;
  const auto subsets = lex_subsets(g.vertex_count(), n);
  std::vector<Certificate> certs(subsets.size());
  std::vector<bool> symmetric(subsets.size());
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    auto lab = canonical_labeling(induced_subgraph(g, subsets[i]));
    symmetric[i] = !lab.generators.empty();
    certs[i] = std::move(lab.certificate);
  }
  std::vector<std::size_t> order(subsets.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return certs[a] < certs[b]; });
  std::vector<bool> duplicated(subsets.size(), false);
  for (std::size_t i = 1; i < order.size(); ++i)
    if (certs[order[i]] == certs[order[i - 1]]) duplicated[order[i]] = duplicated[order[i - 1]] = true;

  EventResult out;
  out.work = 1;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    if (!symmetric[i] && !duplicated[i]) continue;
    std::vector<const std::vector<Vertex>*> targets;
    for (std::size_t j = 0; j < subsets.size(); ++j)
      if (certs[j] == certs[i]) targets.push_back(&subsets[j]);
    out.holds = false;
    out.witness = least_witness(g, subsets[i], targets);
    if (!out.witness || !verify_witness(*out.witness, delta))
      throw std::logic_error("check_event: failed to build a witness for a detected violation");
    return out;
  }
  return out;
}

EventResult check_event_collection(std::span<const Graph> graphs, std::size_t delta) {
  for (const auto& g : graphs)
    if (g.vertex_count() != graphs.front().vertex_count())
      throw InputError("check_event_collection: members have different vertex counts");
  EventResult out;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    auto r = check_event(graphs[i], delta);
    ++out.work;
    if (!r.holds) {
      out.holds = false;
      out.witness = std::move(r.witness);
      out.witness->member_index = i;
      return out;
    }
  }
  return out;
}

EventResult check_event_ball(const Graph& g, const EditSet& s, std::size_t delta, const BallOptions& options) {
  check_delta(g, delta);
  if (s.vertex_count() != g.vertex_count()) throw InputError("edit set and graph disagree on vertex count");
  const EditSet set = s.mode() == EditMode::tuple ? s.distinct() : s;
  bool enumerate = options.strategy == BallStrategy::enumerate;
  if (options.strategy == BallStrategy::automatic) enumerate = set.size() <= options.enumerate_max_log2;

  if (!enumerate) {
    BallSearch search(g, set.membership(), std::nullopt, delta, options.node_budget);
    const auto status = search.run();
    auto out = from_search(search, status, delta);
    if (out.witness && !in_ball(g, set.membership(), out.witness->member))
      throw std::logic_error("ball search witness lies outside B_S(G)");
    return out;
  }

  if (set.size() > 20)
    throw ResourceError("ball B_S(G) with |S|=" + std::to_string(set.size()) + " exceeds cap 2^20",
                        set.size() >= 64 ? 0 : std::uint64_t{1} << set.size());
  EventResult out;
  std::optional<IncrementalEvent> state;
  std::uint64_t step = 0;
  enumerate_ball(g, set, [&](const Graph& member, std::optional<VertexPair> toggled) {
    if (!toggled) state.emplace(member, delta);
    else state->toggle(*toggled);
    ++out.work;
    if (state->holds()) {
      ++step;
      return true;
    }
    auto r = check_event(state->graph(), delta);
    out.holds = false;
    out.witness = std::move(r.witness);
    out.witness->member_index = step;
    return false;
  });
  return out;
}

EventResult check_event_radius(const Graph& g, std::size_t r, std::size_t delta, const BallOptions& options) {
  check_delta(g, delta);
  bool enumerate = options.strategy == BallStrategy::enumerate;
  if (options.strategy == BallStrategy::automatic)
    enumerate = radius_ball_size(g.vertex_count(), r) <= (std::uint64_t{1} << options.enumerate_max_log2);

  if (!enumerate) {
    BallSearch search(g, {}, r, delta, options.node_budget);
    const auto status = search.run();
    auto out = from_search(search, status, delta);
    if (out.witness && hamming(g, out.witness->member) > r)
      throw std::logic_error("radius search witness lies outside B_r(G)");
    return out;
  }

  EventResult out;
  std::uint64_t step = 0;
  enumerate_radius_ball(g, r, [&](const Graph& member, std::optional<VertexPair>) {
    ++out.work;
    auto res = check_event(member, delta);
    if (res.holds) {
      ++step;
      return true;
    }
    out.holds = false;
    out.witness = std::move(res.witness);
    out.witness->member_index = step;
    return false;
  });
  return out;
}

double exact_event_failure_probability(std::size_t n, std::size_t delta, const EdgeProbabilities& p, std::size_t eps,
                                       EditSampling mode) {
  const std::size_t v = n + delta;
  if (n < 1) throw InputError("exact_event_failure_probability needs n >= 1");
  if (p.vertex_count() != v)
    throw InputError("edge probabilities are on " + std::to_string(p.vertex_count()) + " vertices, expected " +
                     std::to_string(v));
  const std::size_t np = pair_count(v);
  if (np > kExactProbabilityMaxPairs)
    throw ResourceError("exact probability needs C(n+delta,2) <= 18, got " + std::to_string(np), np);
  if (mode == EditSampling::subset && eps > np) throw InputError("subset size exceeds C(n+delta,2)");
  if (mode == EditSampling::none) eps = 0;

  const std::size_t masks = std::size_t{1} << np;
  const std::size_t kmax = mode == EditSampling::tuple ? std::min(eps, np) : eps;
  const std::size_t kmin = mode == EditSampling::subset ? eps : 0;

  // Work estimate before doing anything expensive.
  {
    long double work = 0;
    long double binom = 1;  // C(np, k)
    for (std::size_t k = 0; k <= kmax; ++k) {
      if (k >= kmin) work += binom * static_cast<long double>(k + 1) * static_cast<long double>(masks);
      binom = binom * static_cast<long double>(np - k) / static_cast<long double>(k + 1);
    }
    if (work > static_cast<long double>(kExactProbabilityMaxWork))
      throw ResourceError("exact probability: S-average too large to enumerate",
                          static_cast<std::uint64_t>(std::min<long double>(work, 1.8e19L)));
  }

  std::vector<VertexPair> pairs;
  for (Vertex b = 1; b < v; ++b)
    for (Vertex a = 0; a < b; ++a) pairs.emplace_back(a, b);

  std::vector<std::uint8_t> fail(masks);
  std::vector<double> weight(masks);
  for (std::size_t m = 0; m < masks; ++m) {
    Graph g(v);
    double w = 1.0;
    for (std::size_t i = 0; i < np; ++i) {
      const bool present = (m >> i) & 1u;
      if (present) g.toggle_edge_unchecked(pairs[i].u, pairs[i].v);
      w *= present ? p[i] : 1.0 - p[i];
    }
    weight[m] = w;
    fail[m] = check_event(g, delta).holds ? 0 : 1;
  }

  // Probability that the tuple's set of distinct pairs is one given k-set.
  std::vector<double> set_weight(kmax + 1, 0.0);
  if (mode == EditSampling::tuple) {
    // Distribution of the number of distinct pairs among eps draws.
    std::vector<double> cur(kmax + 1, 0.0);
    cur[0] = 1.0;
    for (std::size_t step = 0; step < eps; ++step) {
      std::vector<double> nxt(kmax + 1, 0.0);
      for (std::size_t k = 0; k <= kmax; ++k) {
        if (cur[k] == 0.0) continue;
        nxt[k] += cur[k] * static_cast<double>(k) / static_cast<double>(np);
        if (k + 1 <= kmax) nxt[k + 1] += cur[k] * static_cast<double>(np - k) / static_cast<double>(np);
      }
      cur = std::move(nxt);
    }
    // cur[k] is Pr[exactly k distinct]; spread evenly over the C(np,k) sets.
    double binom = 1.0;
    for (std::size_t k = 0; k <= kmax; ++k) {
      set_weight[k] = cur[k] / binom;
      binom = binom * static_cast<double>(np - k) / static_cast<double>(k + 1);
    }
  } else {
    double binom = 1.0;
    for (std::size_t k = 0; k < eps; ++k) binom = binom * static_cast<double>(np - k) / static_cast<double>(k + 1);
    set_weight[eps] = 1.0 / binom;
  }

  double total = 0.0;
  std::vector<std::uint8_t> closed(masks);
  for (std::size_t k = kmin; k <= kmax; ++k) {
    if (set_weight[k] == 0.0) continue;
    for (const auto& t : lex_subsets(np, k)) {
      closed = fail;
      for (auto bit_index : t) {
        const std::size_t bit = std::size_t{1} << bit_index;
        for (std::size_t m = 0; m < masks; ++m)
          if (!(m & bit)) closed[m] = closed[m | bit] = closed[m] | closed[m | bit];
      }
      double sum = 0.0;
      for (std::size_t m = 0; m < masks; ++m)
        if (closed[m]) sum += weight[m];
      total += set_weight[k] * sum;
    }
  }
  return std::min(1.0, total);
}

}  // namespace reconlab
