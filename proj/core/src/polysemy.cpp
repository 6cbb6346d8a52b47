// Copyright 2026 The lexalign Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lexalign/polysemy.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <optional>

#include "lexalign/error.hpp"
#include "lexalign/random.hpp"
#include "lexalign/stats.hpp"
#include "parallel.hpp"

namespace lexalign {

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;  // ln(2 pi)
constexpr double kEmptyComponent = 1e-10;

struct Mixture {
  std::size_t m = 0;
  std::size_t d = 0;
  std::vector<double> weights;
  std::vector<double> means;      // m x d
  std::vector<double> variances;  // m x d
};

double squared_distance(std::span<const double> a, const double* b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

// k-means++ seeding of `m` centers drawn from the cloud.
std::vector<std::size_t> seed_centers(const PointCloud& cloud, std::size_t m, Rng& rng) {
  const std::size_t n = cloud.size();
  std::vector<std::size_t> centers{static_cast<std::size_t>(rng.below(n))};
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  while (centers.size() < m) {
    const auto c = cloud.vector(centers.back());
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], squared_distance(cloud.vector(i), c.data()));
      total += nearest[i];
    }
    std::size_t pick = n - 1;
    if (total > 0.0) {
      double target = rng.uniform() * total;
      for (std::size_t i = 0; i < n; ++i) {
        target -= nearest[i];
        if (target < 0.0) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<std::size_t>(rng.below(n));
    }
    centers.push_back(pick);
  }
  return centers;
}

}  // namespace

double self_similarity(const PointCloud& cloud) {
  const std::size_t n = cloud.size();
  if (n < 2) {
    throw Error(ErrorCode::kCloudTooSmall,
                fmt::format("self-similarity of '{}' needs 2 vectors, has {}", cloud.form(), n));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) sum += cosine(cloud.vector(i), cloud.vector(j));
    }
  }
  return sum / static_cast<double>(n * n - n);
}

GmmFit fit_diagonal_gmm(const PointCloud& cloud, std::size_t components, std::uint64_t seed,
                        const GmmConfig& config) {
  const std::size_t n = cloud.size();
  const std::size_t d = cloud.dim();
  if (components == 0 || n < components) {
    throw Error(ErrorCode::kCloudTooSmall,
                fmt::format("{} components for {} points", components, n));
  }
  Rng rng(seed);

  std::vector<double> global_mean(d, 0.0), global_var(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = cloud.vector(i);
    for (std::size_t k = 0; k < d; ++k) global_mean[k] += x[k];
  }
  for (double& v : global_mean) v /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = cloud.vector(i);
    for (std::size_t k = 0; k < d; ++k) {
      const double t = x[k] - global_mean[k];
      global_var[k] += t * t;
    }
  }
  for (double& v : global_var) v = std::max(v / static_cast<double>(n), config.variance_floor);

  Mixture mix;
  mix.m = components;
  mix.d = d;
  mix.weights.assign(components, 1.0 / static_cast<double>(components));
  mix.means.resize(components * d);
  mix.variances.resize(components * d);
  const auto centers = seed_centers(cloud, components, rng);
  for (std::size_t c = 0; c < components; ++c) {
    const auto x = cloud.vector(centers[c]);
    std::copy(x.begin(), x.end(), mix.means.begin() + static_cast<std::ptrdiff_t>(c * d));
    std::copy(global_var.begin(), global_var.end(),
              mix.variances.begin() + static_cast<std::ptrdiff_t>(c * d));
  }

  std::vector<double> resp(n * components);
  std::vector<double> log_norm(components);
  GmmFit fit;
  fit.components = components;
  double previous = 0.0;
  for (std::size_t iter = 1; iter <= config.max_iterations; ++iter) {
    // E-step.
    for (std::size_t c = 0; c < components; ++c) {
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) s += std::log(mix.variances[c * d + k]);
      log_norm[c] = std::log(mix.weights[c]) - 0.5 * (static_cast<double>(d) * kLog2Pi + s);
    }
    double ll = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto x = cloud.vector(i);
      double* r = resp.data() + i * components;
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < components; ++c) {
        const double* mu = mix.means.data() + c * d;
        const double* var = mix.variances.data() + c * d;
        double q = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
          const double t = x[k] - mu[k];
          q += t * t / var[k];
        }
        r[c] = log_norm[c] - 0.5 * q;
        best = std::max(best, r[c]);
      }
      double total = 0.0;
      for (std::size_t c = 0; c < components; ++c) {
        r[c] = std::exp(r[c] - best);
        total += r[c];
      }
      for (std::size_t c = 0; c < components; ++c) r[c] /= total;
      ll += best + std::log(total);
    }
    fit.log_likelihood = ll;
    fit.iterations = iter;
    if (iter > 1 && std::abs(ll - previous) <= config.tolerance * std::abs(previous)) {
      fit.converged = true;
      break;
    }
    previous = ll;

    // M-step.
    for (std::size_t c = 0; c < components; ++c) {
      double nk = 0.0;
      for (std::size_t i = 0; i < n; ++i) nk += resp[i * components + c];
      double* mu = mix.means.data() + c * d;
      double* var = mix.variances.data() + c * d;
      if (nk < kEmptyComponent) {
        const auto x = cloud.vector(static_cast<std::size_t>(rng.below(n)));
        std::copy(x.begin(), x.end(), mu);
        std::copy(global_var.begin(), global_var.end(), var);
        mix.weights[c] = 1.0 / static_cast<double>(n);
        continue;
      }
      std::fill(mu, mu + d, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const double w = resp[i * components + c];
        const auto x = cloud.vector(i);
        for (std::size_t k = 0; k < d; ++k) mu[k] += w * x[k];
      }
      for (std::size_t k = 0; k < d; ++k) mu[k] /= nk;
      std::fill(var, var + d, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const double w = resp[i * components + c];
        const auto x = cloud.vector(i);
        for (std::size_t k = 0; k < d; ++k) {
          const double t = x[k] - mu[k];
          var[k] += w * t * t;
        }
      }
      for (std::size_t k = 0; k < d; ++k) var[k] = std::max(var[k] / nk, config.variance_floor);
      mix.weights[c] = nk / static_cast<double>(n);
    }
    double wsum = 0.0;
    for (double w : mix.weights) wsum += w;
    for (double& w : mix.weights) w /= wsum;
  }
  const double params =
      static_cast<double>(components * 2 * d) + static_cast<double>(components - 1);
  fit.bic = -2.0 * fit.log_likelihood + params * std::log(static_cast<double>(n));
  return fit;
}

std::size_t bic_elbow(std::span<const double> bic) {
  const std::size_t max = bic.size();
  if (max <= 1) return 1;
  auto gain = [&](std::size_t m) { return m == 1 ? 0.0 : bic[m - 2] - bic[m - 1]; };
  std::size_t best = 1;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t m = 1; m < max; ++m) {
    const double d2 = gain(m) - gain(m + 1);
    if (d2 > best_value) {
      best_value = d2;
      best = m;
    }
  }
  return best;
}

SenseCount gmm_sense_count(const PointCloud& cloud, const GmmConfig& config) {
  if (config.max_components == 0 || config.repeats == 0) {
    throw Error(ErrorCode::kInvalidArgument, "max_components and repeats must be positive");
  }
  if (cloud.size() < config.max_components) {
    throw Error(ErrorCode::kCloudTooSmall,
                fmt::format("'{}' has {} vectors, need {}", cloud.form(), cloud.size(),
                            config.max_components));
  }
  SenseCount out;
  std::vector<std::size_t>& elected = out.elected;
  elected.resize(config.repeats);
  for (std::size_t r = 0; r < config.repeats; ++r) {
    std::vector<double> curve;
    bool converged = true;
    for (std::size_t m = 1; m <= config.max_components; ++m) {
      const GmmFit fit = fit_diagonal_gmm(cloud, m, derive_seed(config.seed, {r, m}), config);
      converged = converged && fit.converged;
      curve.push_back(fit.bic);
    }
    elected[r] = bic_elbow(curve);
    out.votes.push_back(converged ? elected[r] : 0);
    if (!converged) ++out.excluded;
    out.bic_curves.push_back(std::move(curve));
  }
  std::map<std::size_t, std::size_t> tally;
  for (std::size_t v : out.votes) {
    if (v != 0) ++tally[v];
  }
  if (tally.empty()) {
    out.fallback = true;
    for (std::size_t v : elected) ++tally[v];
  }
  std::size_t best_count = 0;
  for (const auto& [count, votes] : tally) {
    if (votes > best_count) {
      best_count = votes;
      out.count = count;
    }
  }
  return out;
}

std::string_view to_string(PolysemyMeasure measure) noexcept {
  return measure == PolysemyMeasure::kSelfSim ? "self_sim" : "gmm_senses";
}

PolysemyMeasure parse_polysemy_measure(std::string_view text) {
  if (text == "self_sim") return PolysemyMeasure::kSelfSim;
  if (text == "gmm_senses") return PolysemyMeasure::kGmmSenses;
  throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown polysemy measure '{}'", text));
}

LanguagePolysemy language_polysemy(const PointCloudStore& store, PolysemyMeasure measure,
                                   const GmmConfig& config, std::size_t jobs) {
  std::vector<const PointCloud*> clouds;
  for (const auto& [form, cloud] : store.clouds()) clouds.push_back(&cloud);
  std::vector<std::optional<double>> values(clouds.size());
  internal::parallel_for(clouds.size(), jobs, [&](std::size_t i) {
    try {
      if (measure == PolysemyMeasure::kSelfSim) {
        values[i] = self_similarity(*clouds[i]);
      } else {
        GmmConfig word = config;
        word.seed = derive_seed(config.seed, {hash_string(clouds[i]->form())});
        values[i] = static_cast<double>(gmm_sense_count(*clouds[i], word).count);
      }
    } catch (const Error&) {
      values[i].reset();
    }
  });
  LanguagePolysemy out;
  out.language = store.language();
  double sum = 0.0;
  for (const auto& v : values) {
    if (v) {
      sum += *v;
      ++out.words;
    } else {
      ++out.excluded;
    }
  }
  if (out.words == 0) {
    throw Error(ErrorCode::kInsufficientSamples,
                fmt::format("no {} word scored for '{}'", to_string(measure), store.language()));
  }
  out.mean = sum / static_cast<double>(out.words);
  return out;
}

PolysemyPairScore polysemy_pair_score(const PointCloudStore& first,
                                      const PointCloudStore& second, PolysemyMeasure measure,
                                      const GmmConfig& config, std::size_t jobs) {
  PolysemyPairScore out;
  out.first = language_polysemy(first, measure, config, jobs);
  out.second = language_polysemy(second, measure, config, jobs);
  out.value = (out.first.mean + out.second.mean) / 2.0;
  return out;
}

}  // namespace lexalign
