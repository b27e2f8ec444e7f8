#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace entadd {

struct MixtureComponent {
  double weight;
  double mu;
  double sigma;
};

// Parametric law on R. Samplers exist for every family; closed forms only
// where the capability flags say so.
class ContinuousModel {
 public:
  enum class Family { Gaussian, Uniform, Exponential, LogNormal, Mixture };

  static ContinuousModel gaussian(double mu, double sigma);
  static ContinuousModel uniform(double a, double b);
  static ContinuousModel exponential(double lambda);
  static ContinuousModel lognormal(double mu, double sigma);
  static ContinuousModel mixture(std::vector<MixtureComponent> components);

  Family family() const noexcept { return family_; }
  // (mu, sigma), (a, b), (lambda, -), (mu, sigma); unused for mixtures
  double p1() const noexcept { return p1_; }
  double p2() const noexcept { return p2_; }
  const std::vector<MixtureComponent>& components() const noexcept { return components_; }

  bool has_closed_entropy() const noexcept { return family_ != Family::Mixture; }
  bool has_closed_log_abs_moment() const noexcept;
  bool positive_support() const noexcept;

  double sample(std::mt19937_64& rng) const;
  std::string to_string() const;  // model literal syntax

 private:
  ContinuousModel(Family f, double p1, double p2) : family_(f), p1_(p1), p2_(p2) {}

  Family family_;
  double p1_;
  double p2_;
  std::vector<MixtureComponent> components_;
};

// gaussian(mu,sigma) | uniform(a,b) | exponential(lambda) |
// lognormal(mu,sigma) | gmix((w,mu,sigma);...)
ContinuousModel parse_model(std::string_view text);
bool looks_like_model(std::string_view text);

struct EstimateWithCI {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;  // 0 for closed forms
  unsigned k = 0;
  std::uint64_t seed = 0;
  bool closed_form = false;
  bool jittered = false;  // coincident samples were perturbed
  double jitter_scale = 0.0;
};

struct McConfig {
  std::size_t n_samples = 1u << 16;
  unsigned k = 4;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  double hazard_eps = 1e-9;        // |divisor| below this counts as a hazard
  double hazard_threshold = 1e-3;  // DivisionHazard when the hazard fraction exceeds this
  double tail_threshold = 50.0;    // mean |log|divisor|| above this: inconclusive
};

double closed_form_entropy(const ContinuousModel& m);
// E log|X|: closed form where flagged, else Monte Carlo with CI.
EstimateWithCI e_log_abs(const ContinuousModel& m, const McConfig& cfg = {});

// Kozachenko-Leonenko k-NN estimate of differential entropy (1-D), with a
// 16-fold contiguous-subsample standard error. `seed` drives the
// deterministic jitter applied when coincident samples would give a zero
// neighbour distance.
EstimateWithCI mc_entropy_knn(std::vector<double> samples, unsigned k, std::uint64_t seed = 0);

// Counter-based stream: chunk `chunk` of stream `stream` under `seed`.
std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t chunk);
std::uint64_t splitmix64(std::uint64_t x);

// Draws n samples of `m` on the given stream; chunked so the result does not
// depend on the number of worker threads.
std::vector<double> sample_model(const ContinuousModel& m, std::size_t n, std::uint64_t seed, std::uint64_t stream,
                                 unsigned threads = 1);

inline constexpr std::size_t kSampleChunk = 4096;

}  // namespace entadd
