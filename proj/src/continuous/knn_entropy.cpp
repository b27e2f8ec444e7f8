#include "entadd/continuous.hpp"

#include "entadd/error.hpp"
#include "entadd/finite_dist.hpp"

#include <boost/math/special_functions/digamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace entadd {

namespace {

constexpr std::size_t kFolds = 16;
constexpr double kJitter = 1e-12;

struct KnnResult {
  double value;
  bool degenerate;
};

// Sorts `xs` in place.
KnnResult knn_estimate(std::vector<double>& xs, unsigned k) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  CompensatedSum logs;
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    std::ptrdiff_t l = static_cast<std::ptrdiff_t>(i) - 1;
    std::size_t r = i + 1;
    double d = 0.0;
    for (unsigned step = 0; step < k; ++step) {
      const double dl = l >= 0 ? xs[i] - xs[static_cast<std::size_t>(l)] : inf;
      const double dr = r < n ? xs[r] - xs[i] : inf;
      if (dl <= dr) {
        d = dl;
        --l;
      } else {
        d = dr;
        ++r;
      }
    }
    if (!(d > 0.0)) return {0.0, true};
    logs.add(std::log(d));
  }
  const double nn = static_cast<double>(n);
  const double h = boost::math::digamma(nn) - boost::math::digamma(static_cast<double>(k)) + std::log(2.0) +
                   logs.value() / nn;
  return {h, false};
}

}  // namespace

EstimateWithCI mc_entropy_knn(std::vector<double> samples, unsigned k, std::uint64_t seed) {
  const std::size_t n = samples.size();
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be >= 1");
  if (n < 100) throw Error(ErrorKind::InvalidArgument, "k-NN estimation needs at least 100 samples");
  if (n / kFolds <= k) throw Error(ErrorKind::InvalidArgument, "too few samples per subsample fold for this k");
  for (double x : samples) {
    if (!std::isfinite(x)) throw Error(ErrorKind::DegenerateSample, "non-finite sample");
  }
  EstimateWithCI est;
  est.n_samples = n;
  est.k = k;
  est.seed = seed;

  std::vector<double> sorted = samples;
  auto full = knn_estimate(sorted, k);
  if (full.degenerate) {
    // Coincident points: perturb deterministically at 1e-12 relative scale.
    double mean = 0, sq = 0;
    for (double x : samples) mean += x;
    mean /= static_cast<double>(n);
    for (double x : samples) sq += (x - mean) * (x - mean);
    const double sd = std::sqrt(sq / static_cast<double>(n));
    if (!(sd > 0.0)) throw Error(ErrorKind::DegenerateSample, "all samples coincide");
    for (std::size_t c = 0; c * kSampleChunk < n; ++c) {
      auto rng = stream_rng(seed, 0x717e5, c);
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      const std::size_t end = std::min(n, (c + 1) * kSampleChunk);
      for (std::size_t i = c * kSampleChunk; i < end; ++i) {
        samples[i] += kJitter * std::max(std::fabs(samples[i]), sd) * u(rng);
      }
    }
    est.jittered = true;
    est.jitter_scale = kJitter;
    sorted = samples;
    full = knn_estimate(sorted, k);
    if (full.degenerate) throw Error(ErrorKind::DegenerateSample, "coincident samples survive jitter");
  }
  est.value = full.value;

  const std::size_t fold = n / kFolds;
  std::vector<double> folds;
  folds.reserve(kFolds);
  for (std::size_t f = 0; f < kFolds; ++f) {
    std::vector<double> part(samples.begin() + static_cast<std::ptrdiff_t>(f * fold),
                             samples.begin() + static_cast<std::ptrdiff_t>((f + 1) * fold));
    auto r = knn_estimate(part, k);
    if (r.degenerate) throw Error(ErrorKind::DegenerateSample, "coincident samples within a subsample fold");
    folds.push_back(r.value);
  }
  double m = 0;
  for (double v : folds) m += v;
  m /= kFolds;
  double ss = 0;
  for (double v : folds) ss += (v - m) * (v - m);
  const double sd = std::sqrt(ss / (kFolds - 1));
  est.std_error = sd / std::sqrt(static_cast<double>(kFolds));
  return est;
}

}  // namespace entadd
