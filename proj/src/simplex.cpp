#include "gwmaj/simplex.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <tuple>

#include "gwmaj/errors.hpp"

namespace gwmaj {

namespace {

template <class S>
S scalar_from(const BigInt& z) {
  if constexpr (std::is_same_v<S, Rational>) {
    return Rational(z);
  } else {
    return z.get_d();
  }
}

template <class S>
bool is_zero(const S& x) {
  if constexpr (std::is_same_v<S, Rational>) {
    return sgn(x) == 0;
  } else {
    return x == 0.0;
  }
}

template <class S>
S power(const S& base, int e) {
  S r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

template <class S>
std::vector<std::vector<S>> pascal(int n) {
  std::vector<std::vector<S>> c(n + 1);
  for (int r = 0; r <= n; ++r) {
    c[r].assign(r + 1, S(1));
    for (int j = 1; j < r; ++j) c[r][j] = c[r - 1][j - 1] + c[r - 1][j];
  }
  return c;
}

// H_i for every opinion i >= 1, split as: opinion i gets c votes and every
// other opinion gets fewer than c among the remaining n - c children.
// weights[r] accumulates sum over assignments of r children to
// {undecided} U {other opinions, each < c} of multinomial * probabilities.
template <class S>
std::vector<S> majority_dp(std::span<const S> p, std::span<const S> pmf) {
  const int k = static_cast<int>(p.size()) - 1;
  const int top = static_cast<int>(pmf.size()) - 1;
  std::vector<S> out(k + 1, S(0));
  const auto binom = pascal<S>(std::max(top, 0));

  for (int i = 1; i <= k; ++i) {
    if (is_zero(p[i])) continue;
    // Same multiset of other masses, same order -> bitwise-identical result for tied opinions.
    std::vector<S> others;
    for (int j = 1; j <= k; ++j)
      if (j != i && !is_zero(p[j])) others.push_back(p[j]);
    std::sort(others.begin(), others.end(), [](const S& a, const S& b) { return a > b; });

    std::vector<S> p0_pow(top + 1);
    std::vector<S> pi_pow(top + 1);
    p0_pow[0] = 1;
    pi_pow[0] = 1;
    for (int r = 1; r <= top; ++r) {
      p0_pow[r] = p0_pow[r - 1] * p[0];
      pi_pow[r] = pi_pow[r - 1] * p[i];
    }

    S total = 0;
    std::vector<S> weights(top + 1);
    std::vector<S> next(top + 1);
    std::vector<S> q_pow(top + 1);
    for (int c = 1; c <= top; ++c) {
      const int rmax = top - c;
      for (int r = 0; r <= rmax; ++r) weights[r] = p0_pow[r];
      for (const S& q : others) {
        q_pow[0] = 1;
        for (int m = 1; m < c && m <= rmax; ++m) q_pow[m] = q_pow[m - 1] * q;
        for (int r = 0; r <= rmax; ++r) {
          S acc = 0;
          const int mmax = std::min(c - 1, r);
          for (int m = 0; m <= mmax; ++m) acc += binom[r][m] * q_pow[m] * weights[r - m];
          next[r] = acc;
        }
        std::swap(weights, next);
      }
      for (int n = c; n <= top; ++n) {
        if (is_zero(pmf[n])) continue;
        total += pmf[n] * binom[n][c] * pi_pow[c] * weights[n - c];
      }
    }
    out[i] = total;
  }
  S decided = 0;
  for (int i = 1; i <= k; ++i) decided += out[i];
  out[0] = S(1) - decided;
  return out;
}

template <class S>
std::vector<S> majority_compositions(std::span<const S> p, std::span<const S> pmf) {
  const int k = static_cast<int>(p.size()) - 1;
  const int top = static_cast<int>(pmf.size()) - 1;
  std::vector<S> out(k + 1, S(0));
  for (int i = 1; i <= k; ++i) {
    S total = 0;
    for (int n = 1; n <= top; ++n) {
      if (is_zero(pmf[n])) continue;
      S inner = 0;
      for (int m0 = 0; m0 <= n - 1; ++m0) {
        S by_comp = 0;
        for (const auto& comp : winning_compositions(i, n - m0, k)) {
          BigInt multinomial = factorial(n - m0);
          S prod = 1;
          for (int j = 0; j < k; ++j) {
            multinomial /= factorial(comp[j]);
            prod *= power(p[j + 1], comp[j]);
          }
          by_comp += scalar_from<S>(multinomial) * prod;
        }
        inner += scalar_from<S>(binomial(n, m0)) * power(p[0], m0) * by_comp;
      }
      total += pmf[n] * inner;
    }
    out[i] = total;
  }
  S decided = 0;
  for (int i = 1; i <= k; ++i) decided += out[i];
  out[0] = S(1) - decided;
  return out;
}

void fill_compositions(int k, int winner, int cap, int remaining, int pos, Composition& current,
                       std::vector<Composition>& out) {
  if (pos == k) {
    if (remaining == 0) out.push_back(current);
    return;
  }
  if (pos == winner) {
    fill_compositions(k, winner, cap, remaining, pos + 1, current, out);
    return;
  }
  for (int m = 0; m <= std::min(cap, remaining); ++m) {
    current[pos] = m;
    fill_compositions(k, winner, cap, remaining - m, pos + 1, current, out);
  }
  current[pos] = 0;
}

}  // namespace

ProbabilityVector::ProbabilityVector(std::vector<double> entries) : entries_(std::move(entries)) {
  if (entries_.size() < 2) throw DomainError("probability vector needs at least one opinion");
  double total = 0.0;
  for (double e : entries_) {
    if (!(e >= 0.0) || !std::isfinite(e)) throw DomainError("probability vector has a negative or non-finite entry");
    total += e;
  }
  if (std::abs(total - 1.0) > kSimplexTolerance) throw DomainError("probability vector does not sum to 1");
  if (!(entries_[0] < 1.0)) throw DomainError("p_0 = 1: no opinion present");
}

double ProbabilityVector::max_abs_difference(const ProbabilityVector& other) const {
  if (other.size() != size()) throw DomainError("probability vectors of different dimension");
  double d = 0.0;
  for (std::size_t i = 0; i < size(); ++i) d = std::max(d, std::abs(entries_[i] - other.entries_[i]));
  return d;
}

CanonicalState canonicalize(const ProbabilityVector& p) {
  const int k = p.opinions();
  std::vector<int> perm(k + 1);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin() + 1, perm.end(), [&](int a, int b) { return p[a] > p[b]; });
  std::vector<double> sorted(k + 1);
  for (int j = 0; j <= k; ++j) sorted[j] = p[perm[j]];
  int major = 0;
  for (int j = 1; j <= k && sorted[j] == sorted[1]; ++j) ++major;
  return CanonicalState{ProbabilityVector(std::move(sorted)), std::move(perm), major};
}

const std::vector<Composition>& winning_compositions(int i, int n, int k) {
  if (k < 1 || i < 1 || i > k || n < 0) throw DomainError("winning_compositions needs 1 <= i <= k, n >= 0");
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, std::vector<Composition>> cache;
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.try_emplace({i, n, k});
  if (inserted) {
    auto& out = it->second;
    Composition current(k, 0);
    for (int mi = 1; mi <= n; ++mi) {
      current[i - 1] = mi;
      fill_compositions(k, i - 1, mi - 1, n - mi, 0, current, out);
    }
    std::sort(out.begin(), out.end());
  }
  return it->second;
}

MajorityMap::MajorityMap(const OffspringDistribution& dist, double tail_eps) : trunc_(dist.truncate(tail_eps)) {
  if (trunc_.max_n > kMaxArity) {
    throw TruncationError("offspring truncation N* = " + std::to_string(trunc_.max_n) + " exceeds the supported " +
                              std::to_string(kMaxArity),
                          trunc_.tail_mass);
  }
}

std::vector<double> MajorityMap::apply_raw(std::span<const double> p) const {
  return majority_dp<double>(p, trunc_.pmf);
}

ProbabilityVector MajorityMap::operator()(const ProbabilityVector& p) const {
  auto h = apply_raw(p.entries());
  if (h[0] < 0.0) {
    if (h[0] < -kSimplexTolerance) throw VerificationError("H produced a negative undecided mass");
    h[0] = 0.0;
  }
  return ProbabilityVector(std::move(h));
}

ProbabilityVector step_H(const ProbabilityVector& p, const OffspringDistribution& dist, double tail_eps) {
  return MajorityMap(dist, tail_eps)(p);
}

std::vector<Rational> step_H_exact(std::span<const Rational> p, std::span<const Rational> pmf) {
  return majority_dp<Rational>(p, pmf);
}

std::vector<double> step_H_by_compositions(std::span<const double> p, std::span<const double> pmf) {
  return majority_compositions<double>(p, pmf);
}

std::vector<Rational> step_H_by_compositions(std::span<const Rational> p, std::span<const Rational> pmf) {
  return majority_compositions<Rational>(p, pmf);
}

Trajectory iterate(const ProbabilityVector& p, const OffspringDistribution& dist, int max_steps, double tol) {
  return iterate(p, MajorityMap(dist), max_steps, tol);
}

Trajectory iterate(const ProbabilityVector& p, const MajorityMap& map, int max_steps, double tol) {
  if (max_steps < 0) throw DomainError("max_steps must be nonnegative");
  Trajectory traj;
  traj.states.push_back(p);
  for (int step = 0; step < max_steps; ++step) {
    traj.states.push_back(map(traj.states.back()));
    const auto& last = traj.states.back();
    if (last.max_abs_difference(traj.states[traj.states.size() - 2]) < tol) {
      traj.converged = true;
      traj.limit_estimate = last;
      break;
    }
  }
  return traj;
}

std::vector<double> minor_decay_ratios(const Trajectory& traj, int major_count) {
  std::vector<double> out;
  if (traj.states.empty()) return out;
  const auto canon = canonicalize(traj.states.front());
  const int k = traj.states.front().opinions();
  if (major_count < 1 || major_count > k) throw DomainError("major_count out of range");
  if (major_count == k) return out;
  const int major_label = canon.permutation[1];
  const int minor_label = canon.permutation[major_count + 1];
  for (const auto& s : traj.states) {
    if (s[minor_label] < DBL_MIN) break;
    if (s[major_label] < DBL_MIN) throw VerificationError("major opinion mass underflowed; persistence floor violated");
    out.push_back(s[minor_label] / s[major_label]);
  }
  return out;
}

bool strictly_decreasing(std::span<const double> values) {
  for (std::size_t i = 1; i < values.size(); ++i)
    if (!(values[i] < values[i - 1])) return false;
  return true;
}

double geometric_decay_rate(std::span<const double> values, std::size_t first, std::size_t last) {
  if (last >= values.size() || first >= last) throw DomainError("decay fit window out of range");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double cnt = static_cast<double>(last - first + 1);
  for (std::size_t m = first; m <= last; ++m) {
    if (!(values[m] > 0.0)) throw DomainError("decay fit needs positive values");
    const double x = static_cast<double>(m);
    const double y = std::log(values[m]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  return std::exp(slope);
}

Eigen::MatrixXd jacobian_fd(const ProbabilityVector& p, const OffspringDistribution& dist, int major_count, double h) {
  const int k = p.opinions();
  const int i = major_count;
  if (i < 1 || i > k) throw DomainError("major_count out of range");
  for (int j = 2; j <= i; ++j)
    if (p[j] != p[1]) throw DomainError("jacobian_fd needs p_1 = ... = p_i");
  if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");

  const MajorityMap map(dist);
  const int dim = k - i + 1;
  Eigen::VectorXd x(dim);
  x(0) = p[1];
  for (int r = 1; r < dim; ++r) x(r) = p[i + r];

  auto expand = [&](const Eigen::VectorXd& y) {
    std::vector<double> full(k + 1);
    double used = i * y(0);
    for (int j = 1; j <= i; ++j) full[j] = y(0);
    for (int r = 1; r < dim; ++r) {
      full[i + r] = y(r);
      used += y(r);
    }
    full[0] = 1.0 - used;
    return full;
  };
  auto inside = [&](const Eigen::VectorXd& y) {
    for (int r = 0; r < dim; ++r)
      if (y(r) < 0.0) return false;
    double used = i * y(0);
    for (int r = 1; r < dim; ++r) used += y(r);
    return used <= 1.0;
  };
  auto F = [&](const Eigen::VectorXd& y) {
    const auto hv = map.apply_raw(expand(y));
    Eigen::VectorXd out(dim);
    out(0) = hv[1];
    for (int r = 1; r < dim; ++r) out(r) = hv[i + r];
    return out;
  };

  if (!inside(x)) throw DomainError("jacobian_fd base point is outside the domain");
  Eigen::MatrixXd jac(dim, dim);
  for (int r = 0; r < dim; ++r) {
    Eigen::VectorXd plus = x, minus = x;
    plus(r) += h;
    minus(r) -= h;
    if (inside(plus) && inside(minus)) {
      jac.col(r) = (F(plus) - F(minus)) / (2.0 * h);
      continue;
    }
    Eigen::VectorXd plus2 = x;
    plus2(r) += 2.0 * h;
    if (inside(plus) && inside(plus2)) {
      jac.col(r) = (-3.0 * F(x) + 4.0 * F(plus) - F(plus2)) / (2.0 * h);
      continue;
    }
    Eigen::VectorXd minus2 = x;
    minus2(r) -= 2.0 * h;
    if (inside(minus) && inside(minus2)) {
      jac.col(r) = (3.0 * F(x) - 4.0 * F(minus) + F(minus2)) / (2.0 * h);
      continue;
    }
    throw DomainError("finite-difference step leaves the domain");
  }
  return jac;
}

std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
  const auto ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, int digits) {
  const auto old_precision = os.precision(digits);
  const int k = traj.states.empty() ? 0 : traj.states.front().opinions();
  os << "m";
  for (int j = 0; j <= k; ++j) os << ",p_" << j;
  os << '\n';
  for (std::size_t m = 0; m < traj.states.size(); ++m) {
    os << m;
    for (double v : traj.states[m].entries()) os << ',' << v;
    os << '\n';
  }
  os.precision(old_precision);
}

}  // namespace gwmaj
