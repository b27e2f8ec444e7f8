#include "entadd/continuous.hpp"

#include "entadd/error.hpp"
#include "entadd/parallel.hpp"

#include <boost/math/constants/constants.hpp>

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace entadd {

namespace {

const double kPi = boost::math::constants::pi<double>();
const double kEuler = boost::math::constants::euler<double>();

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(17);
  out << x;
  return out.str();
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorKind::InvalidArgument, msg);
}

// x log|x| - x, with the continuous extension 0 at x = 0.
double uniform_log_antiderivative(double x) { return x == 0.0 ? 0.0 : x * std::log(std::fabs(x)) - x; }

class ModelParser {
 public:
  explicit ModelParser(std::string_view text) : text_(text) {}

  ContinuousModel parse() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string name(text_.substr(start, pos_ - start));
    expect('(');
    ContinuousModel m = ContinuousModel::gaussian(0, 1);
    if (name == "gmix") {
      std::vector<MixtureComponent> comps;
      for (;;) {
        expect('(');
        MixtureComponent c{};
        c.weight = number();
        expect(',');
        c.mu = number();
        expect(',');
        c.sigma = number();
        expect(')');
        comps.push_back(c);
        skip();
        if (peek() == ';') {
          ++pos_;
          continue;
        }
        break;
      }
      m = ContinuousModel::mixture(std::move(comps));
    } else if (name == "exponential") {
      m = ContinuousModel::exponential(number());
    } else {
      const double a = number();
      expect(',');
      const double b = number();
      if (name == "gaussian") {
        m = ContinuousModel::gaussian(a, b);
      } else if (name == "uniform") {
        m = ContinuousModel::uniform(a, b);
      } else if (name == "lognormal") {
        m = ContinuousModel::lognormal(a, b);
      } else {
        throw Error(ErrorKind::ParseError, "unknown model family '" + name + "'");
      }
    }
    expect(')');
    skip();
    if (pos_ != text_.size()) throw Error(ErrorKind::ParseError, "trailing input after model literal");
    return m;
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip();
    if (peek() != c) {
      throw Error(ErrorKind::ParseError,
                  std::string("expected '") + c + "' at offset " + std::to_string(pos_) + " in model literal");
    }
    ++pos_;
  }
  double number() {
    skip();
    const std::string rest(text_.substr(pos_));
    char* end = nullptr;
    const double v = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str()) {
      throw Error(ErrorKind::ParseError, "expected a number at offset " + std::to_string(pos_) + " in model literal");
    }
    pos_ += static_cast<std::size_t>(end - rest.c_str());
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ContinuousModel ContinuousModel::gaussian(double mu, double sigma) {
  require(sigma > 0 && std::isfinite(mu) && std::isfinite(sigma), "gaussian needs sigma > 0");
  return ContinuousModel(Family::Gaussian, mu, sigma);
}

ContinuousModel ContinuousModel::uniform(double a, double b) {
  require(b > a && std::isfinite(a) && std::isfinite(b), "uniform needs b > a");
  return ContinuousModel(Family::Uniform, a, b);
}

ContinuousModel ContinuousModel::exponential(double lambda) {
  require(lambda > 0 && std::isfinite(lambda), "exponential needs lambda > 0");
  return ContinuousModel(Family::Exponential, lambda, 0.0);
}

ContinuousModel ContinuousModel::lognormal(double mu, double sigma) {
  require(sigma > 0 && std::isfinite(mu) && std::isfinite(sigma), "lognormal needs sigma > 0");
  return ContinuousModel(Family::LogNormal, mu, sigma);
}

ContinuousModel ContinuousModel::mixture(std::vector<MixtureComponent> components) {
  require(!components.empty(), "mixture needs at least one component");
  double total = 0;
  for (const auto& c : components) {
    require(c.weight > 0 && c.sigma > 0, "mixture components need weight > 0 and sigma > 0");
    total += c.weight;
  }
  require(std::fabs(total - 1.0) <= 1e-12, "mixture weights must sum to 1");
  ContinuousModel m(Family::Mixture, 0.0, 0.0);
  m.components_ = std::move(components);
  return m;
}

bool ContinuousModel::has_closed_log_abs_moment() const noexcept {
  switch (family_) {
    case Family::Gaussian: return p1_ == 0.0;
    case Family::Uniform:
    case Family::Exponential:
    case Family::LogNormal: return true;
    case Family::Mixture: return false;
  }
  return false;
}

bool ContinuousModel::positive_support() const noexcept {
  switch (family_) {
    case Family::Uniform: return p1_ >= 0.0;
    case Family::Exponential:
    case Family::LogNormal: return true;
    default: return false;
  }
}

double ContinuousModel::sample(std::mt19937_64& rng) const {
  switch (family_) {
    case Family::Gaussian: return std::normal_distribution<double>(p1_, p2_)(rng);
    case Family::Uniform: return std::uniform_real_distribution<double>(p1_, p2_)(rng);
    case Family::Exponential: return std::exponential_distribution<double>(p1_)(rng);
    case Family::LogNormal: return std::exp(std::normal_distribution<double>(p1_, p2_)(rng));
    case Family::Mixture: {
      double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      const MixtureComponent* pick = &components_.back();
      for (const auto& c : components_) {
        if (u < c.weight) {
          pick = &c;
          break;
        }
        u -= c.weight;
      }
      return std::normal_distribution<double>(pick->mu, pick->sigma)(rng);
    }
  }
  return 0.0;
}

std::string ContinuousModel::to_string() const {
  switch (family_) {
    case Family::Gaussian: return "gaussian(" + fmt(p1_) + "," + fmt(p2_) + ")";
    case Family::Uniform: return "uniform(" + fmt(p1_) + "," + fmt(p2_) + ")";
    case Family::Exponential: return "exponential(" + fmt(p1_) + ")";
    case Family::LogNormal: return "lognormal(" + fmt(p1_) + "," + fmt(p2_) + ")";
    case Family::Mixture: {
      std::string out = "gmix(";
      for (std::size_t i = 0; i < components_.size(); ++i) {
        const auto& c = components_[i];
        out += (i ? ";(" : "(") + fmt(c.weight) + "," + fmt(c.mu) + "," + fmt(c.sigma) + ")";
      }
      return out + ")";
    }
  }
  return "?";
}

ContinuousModel parse_model(std::string_view text) { return ModelParser(text).parse(); }

bool looks_like_model(std::string_view text) {
  for (const char* name : {"gaussian(", "uniform(", "exponential(", "lognormal(", "gmix("}) {
    if (text.substr(0, std::string_view(name).size()) == name) return true;
  }
  return false;
}

double closed_form_entropy(const ContinuousModel& m) {
  switch (m.family()) {
    case ContinuousModel::Family::Gaussian: return 0.5 * std::log(2 * kPi * std::exp(1.0) * m.p2() * m.p2());
    case ContinuousModel::Family::Uniform: return std::log(m.p2() - m.p1());
    case ContinuousModel::Family::Exponential: return 1.0 - std::log(m.p1());
    case ContinuousModel::Family::LogNormal: return m.p1() + 0.5 * std::log(2 * kPi * std::exp(1.0) * m.p2() * m.p2());
    case ContinuousModel::Family::Mixture: break;
  }
  throw Error(ErrorKind::NoClosedForm, "no closed-form entropy for " + m.to_string());
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t chunk) {
  const std::uint64_t s = splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ chunk);
  std::seed_seq seq{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32)};
  return std::mt19937_64(seq);
}

std::vector<double> sample_model(const ContinuousModel& m, std::size_t n, std::uint64_t seed, std::uint64_t stream,
                                 unsigned threads) {
  std::vector<double> out(n);
  const std::size_t chunks = (n + kSampleChunk - 1) / kSampleChunk;
  parallel_for(chunks, threads, [&](std::size_t c) {
    auto rng = stream_rng(seed, stream, c);
    const std::size_t end = std::min(n, (c + 1) * kSampleChunk);
    for (std::size_t i = c * kSampleChunk; i < end; ++i) out[i] = m.sample(rng);
  });
  return out;
}

EstimateWithCI e_log_abs(const ContinuousModel& m, const McConfig& cfg) {
  EstimateWithCI e;
  e.closed_form = m.has_closed_log_abs_moment();
  switch (m.family()) {
    case ContinuousModel::Family::LogNormal: e.value = m.p1(); return e;
    case ContinuousModel::Family::Exponential: e.value = -kEuler - std::log(m.p1()); return e;
    case ContinuousModel::Family::Uniform:
      e.value = (uniform_log_antiderivative(m.p2()) - uniform_log_antiderivative(m.p1())) / (m.p2() - m.p1());
      return e;
    case ContinuousModel::Family::Gaussian:
      if (m.p1() == 0.0) {
        e.value = std::log(m.p2()) - 0.5 * (kEuler + std::log(2.0));
        return e;
      }
      break;
    case ContinuousModel::Family::Mixture: break;
  }
  auto xs = sample_model(m, cfg.n_samples, cfg.seed, 0x10a5, cfg.threads);
  double sum = 0, sq = 0;
  for (double x : xs) {
    const double l = std::log(std::fabs(x));
    sum += l;
    sq += l * l;
  }
  const double n = static_cast<double>(xs.size());
  e.value = sum / n;
  e.std_error = std::sqrt(std::max(0.0, sq / n - e.value * e.value) / n);
  e.n_samples = xs.size();
  e.seed = cfg.seed;
  return e;
}

}  // namespace entadd
