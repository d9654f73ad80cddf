#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gwmaj {

/// Default bound on the discarded tail mass when an infinite law is truncated.
inline constexpr double kDefaultTailEpsilon = 1e-14;
/// Largest offspring count a truncation may retain.
inline constexpr int kDefaultTruncationBudget = 5000;

enum class OffspringKind { NAry, ShiftedGeometric, Explicit };

enum class SupportParity { AllOdd, AllEven, Mixed };

std::string_view to_string(SupportParity parity);

/// Finite view of an offspring law: q_n for n <= max_n plus the mass left out.
struct Truncation {
  int max_n = 0;
  double tail_mass = 0.0;
  std::vector<double> pmf;  ///< pmf[n] = q_n, size max_n + 1
};

/// Reproduction law of a Galton-Watson tree with q_0 = q_1 = 0.
///
/// N-ary and explicit laws have finite support. The shifted geometric law
/// q_n = p (1-p)^{n-2}, n >= 2, carries closed forms for its generating
/// function so most queries avoid truncation.
class OffspringDistribution {
 public:
  static OffspringDistribution nary(int n);
  static OffspringDistribution shifted_geometric(double p);
  /// pmf[n] = q_n; entries 0 and 1 must vanish.
  static OffspringDistribution explicit_pmf(std::vector<double> pmf);

  /// Parses `nary:5`, `geom:0.25` or `pmf:2=0.3,3=0.7`.
  static OffspringDistribution parse(std::string_view spec);

  OffspringKind kind() const noexcept { return kind_; }
  /// Arity for NAry, parameter for ShiftedGeometric.
  int arity() const noexcept { return arity_; }
  double geometric_parameter() const noexcept { return p_; }

  double pmf(int n) const;
  /// Smallest n with q_n > 0.
  int min_support() const;
  /// Largest n with q_n > 0, or nullopt for infinite support.
  std::optional<int> max_support() const;

  double mean() const;
  /// E[N(N-1)].
  double second_factorial_moment() const;

  /// Smallest N* whose tail sum_{n > N*} q_n is below eps.
  Truncation truncate(double eps = kDefaultTailEpsilon, int budget = kDefaultTruncationBudget) const;

  std::string to_string() const;

 private:
  OffspringDistribution() = default;

  OffspringKind kind_ = OffspringKind::NAry;
  int arity_ = 2;
  double p_ = 0.0;
  std::vector<double> pmf_;
};

/// Generating function G(s) = E[s^N] on [0, 1].
double G(const OffspringDistribution& dist, double s);
/// k-th derivative E[N (N-1) ... (N-k+1) s^{N-k}].
double G_derivative(const OffspringDistribution& dist, int order, double s);

SupportParity support_parity(const OffspringDistribution& dist, double eps = kDefaultTailEpsilon);

/// Lower bound beta on p_1(m) along any canonical trajectory started from a
/// state whose major mass is p1 (k opinions).
///
/// Uses eta = u*/k where G'(1 - u*) = 1, so that G'(1 - x - y) >= 1 whenever
/// x <= eta and y <= (k-1) x; then beta = min(eta^a q_a, p1) with a the
/// smallest offspring count.
double persistence_floor(const OffspringDistribution& dist, int k, double p1);

/// The eta = u*/k used by persistence_floor.
double persistence_eta(const OffspringDistribution& dist, int k);

}  // namespace gwmaj
