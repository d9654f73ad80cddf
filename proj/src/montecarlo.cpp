#include "gwmaj/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

#include "gwmaj/errors.hpp"

namespace gwmaj {

namespace {

int draw_leaf(const ProbabilityVector& p, std::mt19937_64& rng) {
  const double u = std::generate_canonical<double, 64>(rng);
  double acc = 0.0;
  const int k = p.opinions();
  for (int j = 0; j < k; ++j) {
    acc += p[j];
    if (u < acc) return j;
  }
  for (int j = k; j > 0; --j)
    if (p[j] > 0.0) return j;
  return 0;
}

int sample_node(const OffspringSampler& offspring, int height, const ProbabilityVector& leaf_probs,
                std::mt19937_64& rng, std::vector<int>& tally) {
  if (height == 0) return draw_leaf(leaf_probs, rng);
  const int k = leaf_probs.opinions();
  const int children = offspring(rng);
  const std::size_t base = tally.size();
  tally.resize(base + k + 1, 0);
  for (int c = 0; c < children; ++c) {
    const int opinion = sample_node(offspring, height - 1, leaf_probs, rng, tally);
    ++tally[base + opinion];
  }
  int best = 0;
  int best_count = 0;
  bool tied = false;
  for (int j = 1; j <= k; ++j) {
    const int cnt = tally[base + j];
    if (cnt > best_count) {
      best = j;
      best_count = cnt;
      tied = false;
    } else if (cnt == best_count && cnt > 0) {
      tied = true;
    }
  }
  tally.resize(base);
  return (best_count == 0 || tied) ? 0 : best;
}

}  // namespace

OffspringSampler::OffspringSampler(const OffspringDistribution& dist, double tail_eps) {
  const auto trunc = dist.truncate(tail_eps);
  tail_mass_ = trunc.tail_mass;
  min_n_ = dist.min_support();
  double acc = 0.0;
  for (int n = min_n_; n <= trunc.max_n; ++n) {
    acc += trunc.pmf[n];
    cdf_.push_back(acc);
  }
  cdf_.back() = 2.0;
}

int OffspringSampler::operator()(std::mt19937_64& rng) const {
  const double u = std::generate_canonical<double, 64>(rng);
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return min_n_ + static_cast<int>(it - cdf_.begin());
}

int sample_root(const OffspringSampler& offspring, int height, const ProbabilityVector& leaf_probs,
                std::mt19937_64& rng) {
  if (height < 0) throw DomainError("height must be nonnegative");
  std::vector<int> tally;
  tally.reserve(static_cast<std::size_t>(height + 1) * (leaf_probs.size() + 1));
  return sample_node(offspring, height, leaf_probs, rng, tally);
}

SimResult estimate(const SimConfig& config) {
  if (config.samples < 1) throw DomainError("samples must be at least 1");
  if (config.parallel_batches < 1) throw DomainError("parallel_batches must be at least 1");
  if (config.height < 0 || config.height > config.max_height)
    throw DomainError("height outside [0, " + std::to_string(config.max_height) + "]");
  const OffspringSampler offspring(config.dist, config.tail_eps);
  const int k = config.leaf_probs.opinions();
  const int batches = config.parallel_batches;

  std::vector<std::vector<long long>> batch_counts(batches, std::vector<long long>(k + 1, 0));
  auto run_batch = [&](int b) {
    const long long share = config.samples / batches + (b < config.samples % batches ? 1 : 0);
    std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                      static_cast<std::uint32_t>(b)};
    std::mt19937_64 rng(seq);
    for (long long s = 0; s < share; ++s) ++batch_counts[b][sample_root(offspring, config.height, config.leaf_probs, rng)];
  };
  const int workers = std::min<int>(batches, std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::future<void>> jobs;
  for (int w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (int b = w; b < batches; b += workers) run_batch(b);
    }));
  }
  for (auto& j : jobs) j.get();

  SimResult result;
  result.tail_mass = offspring.tail_mass();
  result.counts.assign(k + 1, 0);
  for (const auto& bc : batch_counts)
    for (int j = 0; j <= k; ++j) result.counts[j] += bc[j];
  const double total = static_cast<double>(config.samples);
  for (int j = 0; j <= k; ++j) {
    const double p = result.counts[j] / total;
    result.estimates.push_back(p);
    result.radii.push_back(kZ99 * std::sqrt(p * (1.0 - p) / total));
  }
  return result;
}

nlohmann::json to_json(const SimConfig& config, const SimResult& result) {
  return {{"config",
           {{"dist", config.dist.to_string()},
            {"height", config.height},
            {"leaf_probs", std::vector<double>(config.leaf_probs.entries().begin(), config.leaf_probs.entries().end())},
            {"samples", config.samples},
            {"parallel_batches", config.parallel_batches}}},
          {"counts", result.counts},
          {"estimates", result.estimates},
          {"radii", result.radii},
          {"tail_mass", result.tail_mass},
          {"seed", config.seed}};
}

}  // namespace gwmaj
