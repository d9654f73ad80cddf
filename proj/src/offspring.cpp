#include "gwmaj/offspring.hpp"

#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "gwmaj/errors.hpp"

namespace gwmaj {

namespace {

double falling(int n, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= n - i;
  return r;
}

double parse_double(std::string_view text, std::string_view context) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw DomainError("cannot parse number '" + std::string(text) + "' in " + std::string(context));
  }
  return value;
}

int parse_int(std::string_view text, std::string_view context) {
  int value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw DomainError("cannot parse integer '" + std::string(text) + "' in " + std::string(context));
  }
  return value;
}

}  // namespace

std::string_view to_string(SupportParity parity) {
  switch (parity) {
    case SupportParity::AllOdd: return "AllOdd";
    case SupportParity::AllEven: return "AllEven";
    case SupportParity::Mixed: return "Mixed";
  }
  return "?";
}

OffspringDistribution OffspringDistribution::nary(int n) {
  if (n < 2) throw DomainError("n-ary tree needs n >= 2");
  OffspringDistribution d;
  d.kind_ = OffspringKind::NAry;
  d.arity_ = n;
  return d;
}

OffspringDistribution OffspringDistribution::shifted_geometric(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("geometric parameter must lie in (0,1)");
  OffspringDistribution d;
  d.kind_ = OffspringKind::ShiftedGeometric;
  d.p_ = p;
  return d;
}

OffspringDistribution OffspringDistribution::explicit_pmf(std::vector<double> pmf) {
  while (!pmf.empty() && pmf.back() == 0.0) pmf.pop_back();
  if (pmf.size() < 3) throw DomainError("explicit law needs mass on some n >= 2");
  for (double q : pmf) {
    if (!(q >= 0.0) || !std::isfinite(q)) throw DomainError("explicit law has a negative or non-finite entry");
  }
  if (pmf[0] != 0.0 || pmf[1] != 0.0) throw DomainError("offspring law must satisfy q_0 = q_1 = 0");
  const double total = std::accumulate(pmf.begin(), pmf.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-14) throw DomainError("explicit law does not sum to 1");
  OffspringDistribution d;
  d.kind_ = OffspringKind::Explicit;
  d.pmf_ = std::move(pmf);
  return d;
}

OffspringDistribution OffspringDistribution::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw DomainError("distribution spec needs a 'kind:' prefix");
  const auto kind = spec.substr(0, colon);
  const auto body = spec.substr(colon + 1);
  if (kind == "nary") return nary(parse_int(body, spec));
  if (kind == "geom") return shifted_geometric(parse_double(body, spec));
  if (kind == "pmf") {
    std::vector<double> pmf;
    std::size_t pos = 0;
    while (pos <= body.size()) {
      auto comma = body.find(',', pos);
      if (comma == std::string_view::npos) comma = body.size();
      const auto item = body.substr(pos, comma - pos);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) throw DomainError("pmf entry '" + std::string(item) + "' lacks '='");
      const int n = parse_int(item.substr(0, eq), spec);
      const double q = parse_double(item.substr(eq + 1), spec);
      if (n < 0 || n > kDefaultTruncationBudget) throw DomainError("pmf index out of range");
      if (pmf.size() <= static_cast<std::size_t>(n)) pmf.resize(n + 1, 0.0);
      pmf[n] += q;
      pos = comma + 1;
    }
    return explicit_pmf(std::move(pmf));
  }
  throw DomainError("unknown distribution kind '" + std::string(kind) + "'");
}

double OffspringDistribution::pmf(int n) const {
  if (n < 0) return 0.0;
  switch (kind_) {
    case OffspringKind::NAry: return n == arity_ ? 1.0 : 0.0;
    case OffspringKind::ShiftedGeometric: return n < 2 ? 0.0 : p_ * std::pow(1.0 - p_, n - 2);
    case OffspringKind::Explicit: return static_cast<std::size_t>(n) < pmf_.size() ? pmf_[n] : 0.0;
  }
  return 0.0;
}

int OffspringDistribution::min_support() const {
  switch (kind_) {
    case OffspringKind::NAry: return arity_;
    case OffspringKind::ShiftedGeometric: return 2;
    case OffspringKind::Explicit:
      for (std::size_t n = 0; n < pmf_.size(); ++n)
        if (pmf_[n] > 0.0) return static_cast<int>(n);
  }
  return 2;
}

std::optional<int> OffspringDistribution::max_support() const {
  switch (kind_) {
    case OffspringKind::NAry: return arity_;
    case OffspringKind::ShiftedGeometric: return std::nullopt;
    case OffspringKind::Explicit: return static_cast<int>(pmf_.size()) - 1;
  }
  return std::nullopt;
}

double OffspringDistribution::mean() const { return G_derivative(*this, 1, 1.0); }

double OffspringDistribution::second_factorial_moment() const { return G_derivative(*this, 2, 1.0); }

Truncation OffspringDistribution::truncate(double eps, int budget) const {
  Truncation t;
  if (kind_ == OffspringKind::ShiftedGeometric) {
    // tail beyond N is (1-p)^{N-1}
    const double r = 1.0 - p_;
    int n = 2;
    while (std::pow(r, n - 1) >= eps) {
      if (n >= budget) {
        throw TruncationError("geometric law needs more than " + std::to_string(budget) + " terms for tail < " +
                                  std::to_string(eps),
                              std::pow(r, n - 1));
      }
      ++n;
    }
    t.max_n = n;
    t.tail_mass = std::pow(r, n - 1);
  } else {
    t.max_n = *max_support();
    t.tail_mass = 0.0;
  }
  t.pmf.resize(t.max_n + 1);
  for (int n = 0; n <= t.max_n; ++n) t.pmf[n] = pmf(n);
  return t;
}

std::string OffspringDistribution::to_string() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case OffspringKind::NAry: os << "nary:" << arity_; break;
    case OffspringKind::ShiftedGeometric: os << "geom:" << p_; break;
    case OffspringKind::Explicit: {
      os << "pmf:";
      bool first = true;
      for (std::size_t n = 0; n < pmf_.size(); ++n) {
        if (pmf_[n] == 0.0) continue;
        if (!first) os << ',';
        os << n << '=' << pmf_[n];
        first = false;
      }
      break;
    }
  }
  return os.str();
}

double G(const OffspringDistribution& dist, double s) { return G_derivative(dist, 0, s); }

double G_derivative(const OffspringDistribution& dist, int order, double s) {
  if (order < 0) throw DomainError("derivative order must be nonnegative");
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("generating function evaluated outside [0,1]");
  switch (dist.kind()) {
    case OffspringKind::NAry: {
      const int n = dist.arity();
      if (order > n) return 0.0;
      return falling(n, order) * std::pow(s, n - order);
    }
    case OffspringKind::ShiftedGeometric: {
      // G(s) = p s^2 / (1 - r s), r = 1 - p
      const double p = dist.geometric_parameter();
      const double r = 1.0 - p;
      const double d = 1.0 - r * s;
      if (order == 0) return p * s * s / d;
      if (order == 1) return p * s * (2.0 - r * s) / (d * d);
      return p * std::tgamma(order + 1.0) * std::pow(r, order - 2) / std::pow(d, order + 1);
    }
    case OffspringKind::Explicit: {
      double acc = 0.0;
      const int top = *dist.max_support();
      for (int n = std::max(order, 0); n <= top; ++n) {
        const double q = dist.pmf(n);
        if (q != 0.0) acc += q * falling(n, order) * std::pow(s, n - order);
      }
      return acc;
    }
  }
  return 0.0;
}

SupportParity support_parity(const OffspringDistribution& dist, double eps) {
  const Truncation t = dist.truncate(eps);
  bool odd = false;
  bool even = false;
  for (int n = 0; n <= t.max_n; ++n) {
    if (t.pmf[n] == 0.0) continue;
    (n % 2 == 0 ? even : odd) = true;
  }
  if (odd && even) return SupportParity::Mixed;
  return odd ? SupportParity::AllOdd : SupportParity::AllEven;
}

double persistence_eta(const OffspringDistribution& dist, int k) {
  if (k < 1) throw DomainError("opinion count must be >= 1");
  // G' increases from G'(0) = 0 to G'(1) = E[N] >= 2: bisect G'(s) = 1.
  double lo = 0.0;
  double hi = 1.0;
  if (!(G_derivative(dist, 1, lo) < 1.0 && G_derivative(dist, 1, hi) > 1.0)) {
    throw NoBracketError("G'(s) = 1 is not bracketed on [0,1]");
  }
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (G_derivative(dist, 1, mid) < 1.0 ? lo : hi) = mid;
  }
  // u* = 1 - s*; taking s* = hi keeps G'(1 - u*) >= 1
  const double u_star = 1.0 - hi;
  return u_star / k;
}

double persistence_floor(const OffspringDistribution& dist, int k, double p1) {
  if (!(p1 > 0.0)) throw DomainError("persistence floor needs p1 > 0");
  if (!std::isfinite(dist.second_factorial_moment())) throw DomainError("G''(1) is not finite");
  const double eta = persistence_eta(dist, k);
  const int a = dist.min_support();
  return std::min(std::pow(eta, a) * dist.pmf(a), p1);
}

}  // namespace gwmaj
