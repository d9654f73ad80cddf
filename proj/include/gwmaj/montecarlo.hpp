#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "json.hpp"

#include "gwmaj/offspring.hpp"
#include "gwmaj/simplex.hpp"

namespace gwmaj {

/// z such that P(|Z| <= z) = 0.99 for a standard normal Z.
inline constexpr double kZ99 = 2.5758293035489004;

struct SimConfig {
  OffspringDistribution dist = OffspringDistribution::nary(2);
  int height = 0;
  ProbabilityVector leaf_probs{{0.0, 1.0}};
  long long samples = 1;
  std::uint64_t seed = 0;
  int parallel_batches = 1;
  /// Largest height accepted by the sampler.
  int max_height = 64;
  double tail_eps = kDefaultTailEpsilon;
};

struct SimResult {
  std::vector<long long> counts;
  std::vector<double> estimates;
  /// Half-width of the normal-approximation 99% interval per coordinate.
  std::vector<double> radii;
  /// Offspring mass folded into the largest retained count.
  double tail_mass = 0.0;
};

/// Draws offspring counts from a truncated law by inverse CDF; the discarded
/// tail is folded into the largest retained count.
class OffspringSampler {
 public:
  explicit OffspringSampler(const OffspringDistribution& dist, double tail_eps = kDefaultTailEpsilon);

  int operator()(std::mt19937_64& rng) const;
  double tail_mass() const noexcept { return tail_mass_; }

 private:
  int min_n_ = 0;
  std::vector<double> cdf_;
  double tail_mass_ = 0.0;
};

/// Opinion of the root of a GW tree of the given height whose leaves are
/// drawn i.i.d. from leaf_probs, under the majority rules. The tree is
/// explored depth first and never stored.
int sample_root(const OffspringSampler& offspring, int height, const ProbabilityVector& leaf_probs,
                std::mt19937_64& rng);

/// samples draws split over parallel_batches deterministic streams; the
/// result depends only on (config, seed, samples, parallel_batches).
SimResult estimate(const SimConfig& config);

nlohmann::json to_json(const SimConfig& config, const SimResult& result);

}  // namespace gwmaj
