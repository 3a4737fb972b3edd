#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "reconlab/events.hpp"
#include "reconlab/graph.hpp"
#include "reconlab/isomorphism.hpp"

namespace reconlab {

/// xy + (1-x)(1-y) + (x(1-y) + (1-x)y)·c0. Throws InputError unless
/// x, y ∈ [0,1] and c0 ∈ (0,1].
double f_bound(double x, double y, double c0);

struct SubsetContainment {
  double exact = 0.0;  // C(n-k, m-k) / C(n, m)
  double lower = 0.0;  // ((m-k)/n)^k
};

/// Pr[T ⊂ S] for a fixed k-set T and S a uniform m-subset of an n-set.
/// Throws InputError unless k <= m <= n.
SubsetContainment subset_containment_bound(std::size_t n, std::size_t m, std::size_t k);

struct OrbitStats {
  std::size_t m = 0;             // moved vertices of W
  std::map<std::size_t, std::size_t> orbits;  // length i -> M_i
  std::size_t total_pairs = 0;   // Σ i·M_i = |W^(2) ∪ φ(W)^(2)|
  std::size_t n = 0;             // |W|

  std::size_t count(std::size_t length) const;
};

/// Orbits of e -> φ(e) on W^(2) ∪ φ(W)^(2), chased while the image is
/// defined. domain is W (any order), image[i] = φ(domain[i]). Throws
/// InputError on repeated domain entries or a non-injective image.
OrbitStats orbit_stats(std::span<const Vertex> domain, std::span<const Vertex> image);
/// W = {0, ..., domain_size - 1}.
OrbitStats orbit_stats(const VertexMap& phi);

struct InjectionCensus {
  double exact = 0.0;          // |S_n^(m)|: injections of an n-set into n+δ points moving exactly m
  double binomial = 0.0;       // C(n,m)·(m+δ)_m
  double bound = 0.0;          // 2·n^m·m^δ
  bool within_bound = false;   // exact <= bound
};

InjectionCensus injection_census(std::size_t n, std::size_t m, std::size_t delta);

/// Smallest n0 in [m, n_max] with exact <= 2n^m m^δ for every n in
/// [n0, n_max]; empty if it fails at n_max.
std::optional<std::size_t> injection_census_threshold(std::size_t m, std::size_t delta, std::size_t n_max);

enum class Regime { vanishing_beta, constant_beta };
std::string to_string(Regime r);
Regime parse_regime(const std::string& name);

struct BoundParams {
  std::size_t n = 0;
  std::size_t delta = 0;
  double alpha = 1.0;
  double rho = 1.0;
  double beta = 0.0;  // β(n) already evaluated
  double eps = 0.0;
  double c = 0.5;
  double c0 = 0.9;
  /// Vanishing regime only; the constant regime derives c1 from β and c0.
  /// Unset means the midpoint (2 - 2c0)/2.
  std::optional<double> c1;
  double c2 = 0.5;
};

/// Throws InputError naming the first violated constraint.
void validate(const BoundParams& p, Regime regime);

struct UnionBound {
  double c1 = 0.0;  // the value actually used
  double log_term1 = 0.0;
  double log_term2 = 0.0;
  double log_term3 = 0.0;
  double log_total = 0.0;
  double term1 = 0.0;
  double term2 = 0.0;
  double term3 = 0.0;
  double total = 0.0;
  /// exp(-ρβn) (vanishing) or exp(-ρn) (constant)
  double final_bound = 0.0;
};

/// The three union-bound summations for a single n, evaluated in log space.
/// Term 2 is empty (log = -inf) when ⌊√n⌋ < 2.
UnionBound union_bound_failure(const BoundParams& p, Regime regime);

struct AlphaChoice {
  double term1 = 0.0;  // (2/(c1c2))(ρ'+δ+1)
  double term2 = 0.0;  // (4/(c1c2))(5/4 + 3δ/4 + ρ'/2)
  double term3 = 0.0;  // (8/(c1c2))(3/2 + δ + ρ'/2)
  double minimum = 0.0;
};

AlphaChoice alpha_min(double c1, double c2, std::size_t delta, double rho_prime);

struct Threshold {
  std::optional<std::size_t> term1;
  std::optional<std::size_t> term2;
  std::optional<std::size_t> term3;
  std::optional<std::size_t> total;  // total <= 3 exp(-ρ'β(n)n)
};

/// Scans n in [n_lo, n_hi]; each threshold is the smallest n from which the
/// inequality holds through n_hi. params(n) supplies the constants at n.
Threshold union_bound_thresholds(const std::function<BoundParams(std::size_t)>& params, Regime regime,
                                 double rho_prime, std::size_t n_lo, std::size_t n_hi);

/// N·log(1/(1 - γε/N)), γ = (1+1/c)/2, N = C(n,2). Throws InputError when
/// ε > cN or c ∉ (0,1).
double eps_prime(std::size_t n, double eps, double c);
double gamma_of(double c);

/// E|S| for t uniform draws with replacement from N items.
double expected_distinct(double big_n, double t);

/// (1-1/γ)²/2. Throws InputError when c ∉ (0,1).
double paley_zygmund_floor(double c);

/// Pr[a fixed t-set of pairs misses S] for S over N pairs.
double miss_probability(std::size_t big_n, std::size_t t, std::size_t eps, EditSampling mode);

struct JointVsProduct {
  double joint = 0.0;
  double product = 0.0;
};

/// Pr[F ⊂ S] for |F| = f against Π Pr[e ∈ S].
JointVsProduct containment_joint(std::size_t big_n, std::size_t f, std::size_t eps, EditSampling mode);

/// Pr[∧ E_j] against Π Pr[E_j] where E_j says e_j and f_j agree in G, or
/// disagree with e_j or f_j in S. q[j] = Pr[e_j, f_j disagree in G].
/// The pairs are assumed distinct, so only |{e_j, f_j}| matters for S.
JointVsProduct agreement_joint(std::span<const double> q, std::size_t big_n, std::size_t eps, EditSampling mode);

/// q for independent pair probabilities a, b.
inline double disagreement(double a, double b) { return a * (1 - b) + (1 - a) * b; }

}  // namespace reconlab
