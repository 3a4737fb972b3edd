#include "reconlab/reconstruction.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "reconlab/error.hpp"
#include "reconlab/rng.hpp"

namespace reconlab {

namespace {

/// Label of v in G - removed.
Vertex shrink(Vertex v, Vertex removed) { return v > removed ? v - 1 : v; }
Vertex grow(Vertex v, Vertex removed) { return v >= removed ? v + 1 : v; }

struct Hash128 {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  friend bool operator==(const Hash128&, const Hash128&) = default;
  friend auto operator<=>(const Hash128&, const Hash128&) = default;
};

Hash128 hash_deck(const Deck& d) {
  Hash128 h{0x243f6a8885a308d3ULL, 0x13198a2e03707344ULL};
  auto feed = [&](std::uint64_t x) {
    h.lo = mix64(h.lo ^ x);
    h.hi = mix64(h.hi + x * 0x9e3779b97f4a7c15ULL);
  };
  for (const auto& [cert, mult] : d.cards) {
    feed(cert.vertex_count());
    for (auto w : cert.bits()) feed(w);
    feed(mult);
  }
  return h;
}

}  // namespace

std::size_t Deck::size() const noexcept {
  std::size_t s = 0;
  for (const auto& c : cards) s += c.second;
  return s;
}

std::string Deck::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& [cert, mult] : cards) j.push_back({cert.to_hex(), mult});
  return j.dump();
}

Deck Deck::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("deck JSON: ") + e.what());
  }
  if (!j.is_array()) throw ParseError("deck JSON must be a list of [certificate-hex, multiplicity]");
  Deck d;
  for (const auto& item : j) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_string() || !item[1].is_number_unsigned())
      throw ParseError("deck JSON: each card must be [certificate-hex, multiplicity]");
    d.cards.emplace_back(Certificate::from_hex(item[0].get<std::string>()), item[1].get<std::size_t>());
  }
  if (!std::is_sorted(d.cards.begin(), d.cards.end(), [](const auto& a, const auto& b) { return a.first < b.first; }))
    throw ParseError("deck JSON: cards not sorted by certificate");
  return d;
}

std::vector<Certificate> card_certificates(const Graph& g) {
  std::vector<Certificate> out;
  out.reserve(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) out.push_back(canonical_form(delete_vertex(g, v)));
  return out;
}

Deck deck(const Graph& g) {
  if (g.vertex_count() == 0) throw InputError("deck: graph has no vertices");
  auto certs = card_certificates(g);
  std::sort(certs.begin(), certs.end());
  Deck d;
  for (auto& c : certs) {
    if (!d.cards.empty() && d.cards.back().first == c)
      ++d.cards.back().second;
    else
      d.cards.emplace_back(std::move(c), 1);
  }
  return d;
}

bool is_hypomorphism(const Graph& g, const Graph& h, const VertexMap& sigma) {
  const auto n = g.vertex_count();
  if (h.vertex_count() != n || sigma.domain_size() != n || sigma.target_size() != n) return false;
  const auto cg = card_certificates(g);
  const auto ch = card_certificates(h);
  for (Vertex v = 0; v < n; ++v)
    if (cg[v] != ch[sigma(v)]) return false;
  return true;
}

std::optional<VertexMap> find_hypomorphism(const Graph& g, const Graph& h) {
  const auto n = g.vertex_count();
  if (h.vertex_count() != n) throw InputError("find_hypomorphism: vertex counts differ");
  const auto cg = card_certificates(g);
  const auto ch = card_certificates(h);
  std::map<Certificate, std::vector<Vertex>> pool;
  for (Vertex v = 0; v < n; ++v) pool[ch[v]].push_back(v);
  for (auto& [cert, vs] : pool) std::reverse(vs.begin(), vs.end());
  std::vector<Vertex> image(n);
  for (Vertex v = 0; v < n; ++v) {
    auto it = pool.find(cg[v]);
    if (it == pool.end() || it->second.empty()) return std::nullopt;
    image[v] = it->second.back();
    it->second.pop_back();
  }
  return VertexMap(std::move(image), n);
}

std::optional<Lemma31Witness> reconstruct_lemma31(const Graph& g, const Graph& h, const VertexMap& sigma) {
  const auto n = g.vertex_count();
  if (n < 3) throw InputError("reconstruct_lemma31: needs at least 3 vertices");
  if (h.vertex_count() != n) throw InputError("reconstruct_lemma31: vertex counts differ");
  if (!is_hypomorphism(g, h, sigma)) throw InputError("reconstruct_lemma31: sigma is not a hypomorphism");

  std::vector<Graph> gx(n);
  std::vector<Graph> hx(n);
  for (Vertex v = 0; v < n; ++v) {
    gx[v] = delete_vertex(g, v);
    hx[v] = delete_vertex(h, v);
  }

  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = 0; y < n; ++y) {
      if (x == y) continue;
      // Condition (iii) on A = G - {x, y}, labelled as (G - x) - y.
      const Vertex yx = shrink(y, x);
      const Graph a = delete_vertex(gx[x], yx);
      std::vector<Vertex> sx;
      for (Vertex v = 0; v < n; ++v)
        if (v != x && v != y && g.has_edge_unchecked(x, v)) sx.push_back(shrink(shrink(v, x), yx));
      if (!is_fixed_set(a, sx)) continue;

      const std::pair<Vertex, Vertex> pin_x{yx, shrink(sigma(y), sigma(x))};
      auto phi_x = find_isomorphism(gx[x], hx[sigma(x)], std::span(&pin_x, 1));
      if (!phi_x) continue;
      const std::pair<Vertex, Vertex> pin_y{shrink(x, y), shrink(sigma(x), sigma(y))};
      auto phi_y = find_isomorphism(gx[y], hx[sigma(y)], std::span(&pin_y, 1));
      if (!phi_y) continue;

      std::vector<Vertex> image(n);
      for (Vertex v = 0; v < n; ++v)
        image[v] = v == x ? sigma(x) : grow((*phi_x)(shrink(v, x)), sigma(x));
      VertexMap iso(std::move(image), n);
      if (!is_isomorphism(g, h, iso))
        throw std::logic_error("reconstruct_lemma31: extension failed to verify");
      return Lemma31Witness{x, y, std::move(*phi_x), std::move(*phi_y), std::move(iso)};
    }
  }
  return std::nullopt;
}

std::optional<std::pair<Vertex, Vertex>> farhadian_condition(const Graph& g) {
  const auto n = g.vertex_count();
  if (n < 3) throw InputError("farhadian_condition: needs at least 3 vertices");
  std::vector<std::pair<Vertex, Vertex>> pairs;
  std::vector<Certificate> certs;
  std::unordered_map<Certificate, std::size_t, CertificateHash> count;
  for (Vertex y = 1; y < n; ++y) {
    for (Vertex x = 0; x < y; ++x) {
      pairs.emplace_back(x, y);
      certs.push_back(canonical_form(delete_vertex(delete_vertex(g, y), x)));
      ++count[certs.back()];
    }
  }
  std::vector<std::size_t> order(pairs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pairs[a] < pairs[b]; });
  for (auto i : order) {
    if (count[certs[i]] != 1) continue;
    if (is_asymmetric(certs[i].to_graph())) return pairs[i];
  }
  return std::nullopt;
}

std::string ReconstructibilityReport::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["labeled_graphs"] = labeled_graphs;
  j["classes"] = classes;
  j["hash_false_matches"] = hash_false_matches;
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : collisions) cs.push_back({c.first.to_hex(), c.second.to_hex()});
  j["collisions"] = cs;
  return j.dump();
}

ReconstructibilityReport verify_reconstructibility_exhaustive(std::size_t n, unsigned threads) {
  if (n > kExhaustiveReconstructionMaxN)
    throw ResourceError("exhaustive reconstructibility is limited to n <= 7", n);
  if (n == 0) throw InputError("verify_reconstructibility_exhaustive: n must be positive");
  const std::size_t pairs = n * (n - 1) / 2;
  const std::uint64_t total = std::uint64_t{1} << pairs;
  threads = std::max(1u, threads);

  std::vector<std::unordered_set<Certificate, CertificateHash>> found(threads);
  auto work = [&](unsigned t) {
    for (std::uint64_t mask = t; mask < total; mask += threads) {
      Graph gr(n);
      std::size_t i = 0;
      for (Vertex v = 1; v < n; ++v)
        for (Vertex u = 0; u < v; ++u, ++i)
          if ((mask >> i) & 1) gr.toggle_edge_unchecked(u, v);
      found[t].insert(canonical_form(gr));
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  for (unsigned t = 1; t < threads; ++t) found[0].insert(found[t].begin(), found[t].end());
  std::vector<Certificate> classes(found[0].begin(), found[0].end());
  std::sort(classes.begin(), classes.end());

  std::map<Hash128, std::vector<std::size_t>> by_hash;
  std::vector<Deck> decks;
  decks.reserve(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    decks.push_back(deck(classes[i].to_graph()));
    by_hash[hash_deck(decks.back())].push_back(i);
  }

  ReconstructibilityReport report;
  report.n = n;
  report.labeled_graphs = total;
  report.classes = classes.size();
  for (const auto& [hash, members] : by_hash) {
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        if (decks[members[a]] == decks[members[b]])
          report.collisions.push_back({classes[members[a]], classes[members[b]]});
        else
          ++report.hash_false_matches;
      }
    }
  }
  std::sort(report.collisions.begin(), report.collisions.end(), [](const auto& l, const auto& r) {
    return std::tie(l.first, l.second) < std::tie(r.first, r.second);
  });
  return report;
}

}  // namespace reconlab
