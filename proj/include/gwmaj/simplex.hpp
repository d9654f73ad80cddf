#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "gwmaj/offspring.hpp"
#include "gwmaj/rational.hpp"

namespace gwmaj {

/// Tolerance on |sum - 1| accepted for a probability vector.
inline constexpr double kSimplexTolerance = 1e-12;

/// Point (p_0, p_1, ..., p_k) of the simplex: p_0 is the undecided mass,
/// p_1..p_k the opinion masses. Requires p_0 < 1.
class ProbabilityVector {
 public:
  explicit ProbabilityVector(std::vector<double> entries);

  int opinions() const noexcept { return static_cast<int>(entries_.size()) - 1; }
  std::size_t size() const noexcept { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  std::span<const double> entries() const noexcept { return entries_; }
  double undecided() const noexcept { return entries_[0]; }

  double max_abs_difference(const ProbabilityVector& other) const;

  friend bool operator==(const ProbabilityVector&, const ProbabilityVector&) = default;

 private:
  std::vector<double> entries_;
};

/// A state reordered so that p_1 >= p_2 >= ... >= p_k.
struct CanonicalState {
  ProbabilityVector vector;
  /// permutation[j] is the original label of canonical opinion j; permutation[0] = 0.
  std::vector<int> permutation;
  /// Number of opinions tied with the largest mass.
  int major_count;
};

CanonicalState canonicalize(const ProbabilityVector& p);

using Composition = std::vector<int>;

/// All (m_1..m_k) with sum n and m_j < m_i for j != i (opinion i is 1-based).
/// Memoized; the returned reference stays valid for the program lifetime.
const std::vector<Composition>& winning_compositions(int i, int n, int k);

/// One generation of the majority recursion, p(m) -> p(m+1).
///
/// Infinite-support laws are truncated once at construction; the discarded
/// mass is reported by tail_mass() and bounds the error of every H_i.
class MajorityMap {
 public:
  /// Largest offspring count the map will handle.
  static constexpr int kMaxArity = 1000;

  explicit MajorityMap(const OffspringDistribution& dist, double tail_eps = kDefaultTailEpsilon);

  const Truncation& truncation() const noexcept { return trunc_; }
  double tail_mass() const noexcept { return trunc_.tail_mass; }

  ProbabilityVector operator()(const ProbabilityVector& p) const;

  /// H_1..H_k on an arbitrary nonnegative vector with sum <= 1 (the domain of
  /// the polynomial extension); entry 0 of the result is 1 - sum H_i.
  std::vector<double> apply_raw(std::span<const double> p) const;

 private:
  Truncation trunc_;
};

ProbabilityVector step_H(const ProbabilityVector& p, const OffspringDistribution& dist,
                         double tail_eps = kDefaultTailEpsilon);

/// Exact H on rationals; pmf[n] = q_n over a finite support.
std::vector<Rational> step_H_exact(std::span<const Rational> p, std::span<const Rational> pmf);

/// H evaluated term by term as the double sum over undecided count and winning
/// compositions. Slow; used to cross-check the production path.
std::vector<double> step_H_by_compositions(std::span<const double> p, std::span<const double> pmf);
std::vector<Rational> step_H_by_compositions(std::span<const Rational> p, std::span<const Rational> pmf);

struct Trajectory {
  std::vector<ProbabilityVector> states;
  bool converged = false;
  std::optional<ProbabilityVector> limit_estimate;
};

inline constexpr double kDefaultIterationTol = 1e-12;
inline constexpr int kDefaultMaxSteps = 10000;

/// Applies H until successive states differ by less than tol in max-norm, or
/// max_steps applications have been made.
Trajectory iterate(const ProbabilityVector& p, const OffspringDistribution& dist, int max_steps = kDefaultMaxSteps,
                   double tol = kDefaultIterationTol);
Trajectory iterate(const ProbabilityVector& p, const MajorityMap& map, int max_steps = kDefaultMaxSteps,
                   double tol = kDefaultIterationTol);

/// w_m = p_{i+1}(m) / p_1(m) in the canonical labelling of the first state,
/// i = major_count. Stops once the minor mass leaves the normal double range.
std::vector<double> minor_decay_ratios(const Trajectory& traj, int major_count);

bool strictly_decreasing(std::span<const double> values);

/// exp of the least-squares slope of log(values[m]) over m in [first, last].
double geometric_decay_rate(std::span<const double> values, std::size_t first, std::size_t last);

/// Finite-difference Jacobian of (H_1, H_{i+1}, ..., H_k) with respect to
/// (x_1, x_{i+1}, ..., x_k), where p = (1 - i x_1 - sum x_j, x_1 (i times), x_{i+1}, ...).
///
/// Central differences where x +- h stays in the domain, second-order
/// one-sided differences on the boundary x_r = 0.
Eigen::MatrixXd jacobian_fd(const ProbabilityVector& p, const OffspringDistribution& dist, int major_count,
                            double h = 1e-5);

std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXd& m);

/// CSV with header m,p_0,...,p_k.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj, int digits = 17);

}  // namespace gwmaj
