#include "reconlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "reconlab/error.hpp"

namespace reconlab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log Σ exp(x_i) with a Neumaier-compensated inner sum.
class LogSum {
 public:
  void add(double x) { xs_.push_back(x); }

  double value() const {
    if (xs_.empty()) return kNegInf;
    const double hi = *std::max_element(xs_.begin(), xs_.end());
    if (hi == kNegInf) return kNegInf;
    double sum = 0.0;
    double comp = 0.0;
    for (double x : xs_) {
      const double t = std::exp(x - hi);
      const double s = sum + t;
      comp += std::abs(sum) >= std::abs(t) ? (sum - s) + t : (t - s) + sum;
      sum = s;
    }
    return hi + std::log(sum + comp);
  }

 private:
  std::vector<double> xs_;
};

long double falling(long double x, std::size_t k) {
  long double r = 1;
  for (std::size_t i = 0; i < k; ++i) r *= x - static_cast<long double>(i);
  return r;
}

long double choose_ld(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  long double r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<long double>(n - k + i) / static_cast<long double>(i);
  return r;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

std::uint64_t pair_key(Vertex a, Vertex b) {
  if (a > b) std::swap(a, b);
  return (std::uint64_t{a} << 32) | b;
}

}  // namespace

double f_bound(double x, double y, double c0) {
  require(x >= 0 && x <= 1 && y >= 0 && y <= 1, "f_bound: x and y must lie in [0,1]");
  require(c0 > 0 && c0 <= 1, "f_bound: c0 must lie in (0,1]");
  return x * y + (1 - x) * (1 - y) + (x * (1 - y) + (1 - x) * y) * c0;
}

SubsetContainment subset_containment_bound(std::size_t n, std::size_t m, std::size_t k) {
  require(k <= m && m <= n, "subset_containment_bound: need k <= m <= n");
  SubsetContainment r;
  if (n == 0) return {1.0, 1.0};
  // Chain rule: Π_{i=1..k} (m-i+1)/(n-i+1).
  double exact = 1.0;
  for (std::size_t i = 1; i <= k; ++i) exact *= static_cast<double>(m - i + 1) / static_cast<double>(n - i + 1);
  r.exact = exact;
  r.lower = std::pow(static_cast<double>(m - k) / static_cast<double>(n), static_cast<double>(k));
  return r;
}

std::size_t OrbitStats::count(std::size_t length) const {
  auto it = orbits.find(length);
  return it == orbits.end() ? 0 : it->second;
}

OrbitStats orbit_stats(std::span<const Vertex> domain, std::span<const Vertex> image) {
  require(domain.size() == image.size(), "orbit_stats: domain and image differ in length");
  std::unordered_map<Vertex, Vertex> phi;
  std::unordered_set<Vertex> img;
  OrbitStats st;
  st.n = domain.size();
  for (std::size_t i = 0; i < domain.size(); ++i) {
    require(phi.emplace(domain[i], image[i]).second, "orbit_stats: repeated domain vertex");
    require(img.insert(image[i]).second, "orbit_stats: map is not injective");
    if (domain[i] != image[i]) ++st.m;
  }

  // Pairs of W^(2) map forward; pairs of φ(W)^(2) have exactly one preimage.
  std::unordered_map<std::uint64_t, std::uint64_t> next;
  std::set<std::uint64_t> all;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    for (std::size_t j = i + 1; j < domain.size(); ++j) {
      const auto e = pair_key(domain[i], domain[j]);
      const auto f = pair_key(image[i], image[j]);
      next[e] = f;
      all.insert(e);
      all.insert(f);
    }
  }
  std::unordered_set<std::uint64_t> has_pred;
  for (const auto& [e, f] : next) has_pred.insert(f);

  std::unordered_set<std::uint64_t> seen;
  auto chase = [&](std::uint64_t start) {
    std::size_t len = 0;
    auto e = start;
    while (seen.insert(e).second) {
      ++len;
      auto it = next.find(e);
      if (it == next.end()) break;
      e = it->second;
    }
    ++st.orbits[len];
    st.total_pairs += len;
  };
  for (auto e : all)
    if (!has_pred.count(e)) chase(e);
  for (auto e : all)
    if (!seen.count(e)) chase(e);
  return st;
}

OrbitStats orbit_stats(const VertexMap& phi) {
  std::vector<Vertex> domain(phi.domain_size());
  for (std::size_t i = 0; i < domain.size(); ++i) domain[i] = static_cast<Vertex>(i);
  return orbit_stats(domain, phi.image());
}

InjectionCensus injection_census(std::size_t n, std::size_t m, std::size_t delta) {
  require(m <= n, "injection_census: need m <= n");
  long double moved = 0;
  for (std::size_t j = 0; j <= m; ++j) {
    const long double term = choose_ld(m, j) * falling(static_cast<long double>(m + delta - j), m - j);
    moved += j % 2 == 0 ? term : -term;
  }
  InjectionCensus c;
  c.exact = static_cast<double>(choose_ld(n, m) * moved);
  c.binomial = static_cast<double>(choose_ld(n, m) * falling(static_cast<long double>(m + delta), m));
  c.bound = 2.0 * std::pow(static_cast<double>(n), static_cast<double>(m)) *
            std::pow(static_cast<double>(m), static_cast<double>(delta));
  c.within_bound = c.exact <= c.bound * (1 + 1e-9);
  return c;
}

std::optional<std::size_t> injection_census_threshold(std::size_t m, std::size_t delta, std::size_t n_max) {
  std::optional<std::size_t> n0;
  for (std::size_t n = n_max + 1; n-- > std::max<std::size_t>(m, 1);) {
    if (!injection_census(n, m, delta).within_bound) break;
    n0 = n;
  }
  return n0;
}

std::string to_string(Regime r) { return r == Regime::vanishing_beta ? "vanishing-beta" : "constant-beta"; }

Regime parse_regime(const std::string& name) {
  if (name == "vanishing-beta" || name == "vanishing") return Regime::vanishing_beta;
  if (name == "constant-beta" || name == "constant") return Regime::constant_beta;
  throw InputError("unknown regime '" + name + "' (expected vanishing-beta or constant-beta)");
}

void validate(const BoundParams& p, Regime regime) {
  require(p.n >= 2, "n must be at least 2");
  require(p.c > 0 && p.c < 1, "c must lie in (0,1)");
  require(p.c0 > 1 - std::exp(-2 * p.c) && p.c0 < 1, "c0 must lie in (1 - exp(-2c), 1)");
  require(p.c2 > 0 && p.c2 < 1, "c2 must lie in (0,1)");
  require(p.beta > 0, "beta must be positive");
  require(p.rho > 0, "rho must be positive");
  const double big_n = static_cast<double>(p.n) * static_cast<double>(p.n - 1) / 2;
  require(p.eps >= 0 && p.eps <= p.c * big_n, "eps must lie in [0, c·C(n,2)]");
  if (regime == Regime::vanishing_beta) {
    require(p.alpha > 0, "alpha must be positive");
    require(p.alpha * p.beta <= 0.5, "box alpha·beta must not exceed 1/2");
    if (p.c1) require(*p.c1 > 0 && *p.c1 < 2 - 2 * p.c0, "c1 must lie in (0, 2 - 2c0)");
  } else {
    require(p.beta <= 0.5, "beta must lie in (0, 1/2]");
  }
}

UnionBound union_bound_failure(const BoundParams& p, Regime regime) {
  validate(p, regime);
  const double n = static_cast<double>(p.n);
  const double d = static_cast<double>(p.delta);
  const double ln_n = std::log(n);

  UnionBound r;
  double k = 0.0;  // exponent rate per unit of n in term 1 is k/2
  if (regime == Regime::vanishing_beta) {
    r.c1 = p.c1.value_or(1 - p.c0);
    k = r.c1 * p.c2 * p.alpha * p.beta;
    r.final_bound = std::exp(-p.rho * p.beta * n);
  } else {
    const double b = p.beta;
    r.c1 = -std::log(b * b + (1 - b) * (1 - b) + 2 * b * (1 - b) * p.c0);
    k = r.c1 * p.c2;
    r.final_bound = std::exp(-p.rho * n);
  }

  r.log_term1 = std::log(4.0) + (d + 1) * ln_n - k * n / 2;

  const auto root = static_cast<std::size_t>(std::floor(std::sqrt(n)));
  LogSum s2;
  for (std::size_t m = 2; m <= root; ++m) {
    const double md = static_cast<double>(m);
    s2.add(std::log(2.0) + md * ln_n + d * std::log(md) - k * md * n / 4);
  }
  r.log_term2 = std::log(2.0) + d * ln_n + s2.value();

  LogSum s3;
  for (std::size_t m = std::max<std::size_t>(root, 1); m <= p.n; ++m) {
    const double md = static_cast<double>(m);
    s3.add(std::log(2.0) + md * ln_n + d * std::log(md) - k * md * n / 8);
  }
  r.log_term3 = std::log(2.0) + d * ln_n + s3.value();

  LogSum tot;
  tot.add(r.log_term1);
  tot.add(r.log_term2);
  tot.add(r.log_term3);
  r.log_total = tot.value();
  r.term1 = std::exp(r.log_term1);
  r.term2 = std::exp(r.log_term2);
  r.term3 = std::exp(r.log_term3);
  r.total = std::exp(r.log_total);
  return r;
}

AlphaChoice alpha_min(double c1, double c2, std::size_t delta, double rho_prime) {
  require(c1 > 0 && c2 > 0, "alpha_min: c1 and c2 must be positive");
  const double k = c1 * c2;
  const double d = static_cast<double>(delta);
  AlphaChoice a;
  a.term1 = (2 / k) * (rho_prime + d + 1);
  a.term2 = (4 / k) * (1.25 + 0.75 * d + rho_prime / 2);
  a.term3 = (8 / k) * (1.5 + d + rho_prime / 2);
  a.minimum = std::max({a.term1, a.term2, a.term3});
  return a;
}

Threshold union_bound_thresholds(const std::function<BoundParams(std::size_t)>& params, Regime regime,
                                 double rho_prime, std::size_t n_lo, std::size_t n_hi) {
  Threshold t;
  bool ok1 = true, ok2 = true, ok3 = true, okt = true;
  for (std::size_t n = n_hi + 1; n-- > n_lo;) {
    const auto p = params(n);
    const auto r = union_bound_failure(p, regime);
    const double rate = regime == Regime::vanishing_beta ? p.beta * static_cast<double>(n) : static_cast<double>(n);
    const double target = -rho_prime * rate;
    const double slack = 1e-9;
    ok1 = ok1 && r.log_term1 <= target + slack;
    ok2 = ok2 && r.log_term2 <= target + slack;
    ok3 = ok3 && r.log_term3 <= target + slack;
    okt = okt && r.log_total <= std::log(3.0) + target + slack;
    if (ok1) t.term1 = n;
    if (ok2) t.term2 = n;
    if (ok3) t.term3 = n;
    if (okt) t.total = n;
    if (!ok1 && !ok2 && !ok3 && !okt) break;
  }
  return t;
}

double gamma_of(double c) { return (1 + 1 / c) / 2; }

double eps_prime(std::size_t n, double eps, double c) {
  require(c > 0 && c < 1, "eps_prime: c must lie in (0,1)");
  const double big_n = static_cast<double>(n) * static_cast<double>(n > 0 ? n - 1 : 0) / 2;
  require(eps >= 0 && eps <= c * big_n, "eps_prime: eps exceeds c·C(n,2)");
  if (eps == 0) return 0.0;
  const double ratio = gamma_of(c) * eps / big_n;
  require(ratio < 1, "eps_prime: gamma·eps/N must stay below 1");
  return -big_n * std::log1p(-ratio);
}

double expected_distinct(double big_n, double t) {
  require(big_n >= 1, "expected_distinct: N must be at least 1");
  return big_n * -std::expm1(t * std::log1p(-1 / big_n));
}

double paley_zygmund_floor(double c) {
  require(c > 0 && c < 1, "paley_zygmund_floor: c must lie in (0,1)");
  const double g = gamma_of(c);
  return (1 - 1 / g) * (1 - 1 / g) / 2;
}

double miss_probability(std::size_t big_n, std::size_t t, std::size_t eps, EditSampling mode) {
  require(t <= big_n, "miss_probability: t exceeds N");
  switch (mode) {
    case EditSampling::none:
      return 1.0;
    case EditSampling::tuple:
      return std::pow(1 - static_cast<double>(t) / static_cast<double>(big_n), static_cast<double>(eps));
    case EditSampling::subset: {
      require(eps <= big_n, "miss_probability: subset size exceeds N");
      if (eps + t > big_n) return 0.0;
      double r = 1.0;
      for (std::size_t i = 0; i < eps; ++i)
        r *= static_cast<double>(big_n - t - i) / static_cast<double>(big_n - i);
      return r;
    }
  }
  return 1.0;
}

JointVsProduct containment_joint(std::size_t big_n, std::size_t f, std::size_t eps, EditSampling mode) {
  require(f <= big_n, "containment_joint: F larger than the pair set");
  JointVsProduct r;
  // Inclusion-exclusion over the members of F that S misses.
  double joint = 0.0;
  for (std::size_t j = 0; j <= f; ++j) {
    const double term = static_cast<double>(choose_ld(f, j)) * miss_probability(big_n, j, eps, mode);
    joint += j % 2 == 0 ? term : -term;
  }
  r.joint = std::max(0.0, joint);
  r.product = std::pow(1 - miss_probability(big_n, 1, eps, mode), static_cast<double>(f));
  return r;
}

JointVsProduct agreement_joint(std::span<const double> q, std::size_t big_n, std::size_t eps, EditSampling mode) {
  const std::size_t k = q.size();
  require(2 * k <= big_n, "agreement_joint: needs 2k distinct pairs");
  // weight[d] = Pr[exactly d of the k pair-pairs disagree in G].
  std::vector<double> weight(k + 1, 0.0);
  weight[0] = 1.0;
  for (std::size_t j = 0; j < k; ++j) {
    require(q[j] >= 0 && q[j] <= 1, "agreement_joint: q must lie in [0,1]");
    for (std::size_t d = j + 2; d-- > 0;) {
      weight[d] *= 1 - q[j];
      if (d > 0) weight[d] += weight[d - 1] * q[j];
    }
  }
  JointVsProduct r;
  for (std::size_t d = 0; d <= k; ++d) {
    // Every one of d disjoint pair-pairs touches S.
    double hit = 0.0;
    for (std::size_t j = 0; j <= d; ++j) {
      const double term = static_cast<double>(choose_ld(d, j)) * miss_probability(big_n, 2 * j, eps, mode);
      hit += j % 2 == 0 ? term : -term;
    }
    r.joint += weight[d] * std::max(0.0, hit);
  }
  const double miss2 = miss_probability(big_n, 2, eps, mode);
  r.product = 1.0;
  for (double qj : q) r.product *= 1 - qj * miss2;
  return r;
}

}  // namespace reconlab
