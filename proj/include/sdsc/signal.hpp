#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <span>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "sdsc/error.hpp"
#include "sdsc/random.hpp"

namespace sdsc {

using Index = Eigen::Index;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// A uniformly sampled, finite, real-valued series of fixed length.
template <typename Scalar = double>
class Signal {
 public:
  using Samples = Vector<Scalar>;

  explicit Signal(Samples samples, Scalar sample_period = Scalar(1))
      : samples_(std::move(samples)), sample_period_(sample_period) {
    validate();
  }

  explicit Signal(std::span<const Scalar> samples, Scalar sample_period = Scalar(1))
      : Signal(Samples(Eigen::Map<const Samples>(samples.data(), static_cast<Index>(samples.size()))),
               sample_period) {}

  Signal(std::initializer_list<Scalar> samples)
      : Signal(std::span<const Scalar>(samples.begin(), samples.size())) {}

  const Samples &samples() const noexcept { return samples_; }
  Scalar sample_period() const noexcept { return sample_period_; }
  Index size() const noexcept { return samples_.size(); }
  Scalar operator[](Index i) const { return samples_[i]; }

  std::vector<Scalar> to_vector() const { return {samples_.data(), samples_.data() + samples_.size()}; }

  friend bool operator==(const Signal &a, const Signal &b) {
    return a.sample_period_ == b.sample_period_ && a.samples_.size() == b.samples_.size() &&
           (a.samples_.array() == b.samples_.array()).all();
  }

 private:
  void validate() const {
    if (samples_.size() < 1) throw Error(ErrorCode::kEmptyInput, "signal must have at least one sample");
    for (Index i = 0; i < samples_.size(); ++i) {
      if (!std::isfinite(samples_[i]))
        throw Error(ErrorCode::kNonFinite, "signal sample " + std::to_string(i) + " is not finite");
    }
    if (!(sample_period_ > Scalar(0)) || !std::isfinite(sample_period_))
      throw Error(ErrorCode::kInvalidArgument, "sample period must be finite and > 0");
  }

  Samples samples_;
  Scalar sample_period_;
};

enum class Waveform { kSine };

/// s_i = A sin(2 pi P i / N), i in [0, N).
struct BaseSignalSpec {
  Waveform waveform = Waveform::kSine;
  double amplitude = 1.0;
  double periods = 1.0;
  Index n_samples = 1000;

  void validate() const {
    if (n_samples < 2) throw Error(ErrorCode::kInvalidArgument, "base signal needs n_samples >= 2");
    if (!(amplitude > 0.0) || !std::isfinite(amplitude))
      throw Error(ErrorCode::kInvalidArgument, "base signal amplitude must be finite and > 0");
    if (!(periods > 0.0) || !std::isfinite(periods))
      throw Error(ErrorCode::kInvalidArgument, "base signal periods must be finite and > 0");
  }
};

template <typename Scalar = double>
Signal<Scalar> generate(const BaseSignalSpec &spec) {
  spec.validate();
  Vector<Scalar> x(spec.n_samples);
  const double n = static_cast<double>(spec.n_samples);
  for (Index i = 0; i < spec.n_samples; ++i) {
    x[i] = static_cast<Scalar>(spec.amplitude *
                               std::sin(2.0 * std::numbers::pi * spec.periods * static_cast<double>(i) / n));
  }
  return Signal<Scalar>(std::move(x));
}

namespace perturbation {
struct Invert {};
struct Scale {
  double factor = 1.0;
};
struct Shift {
  double offset = 0.0;
};
struct Zero {};
struct AddNoise {
  double sigma = 0.0;
  std::uint64_t seed = 0;
};
// Same model as AddNoise (small additive Gaussian); kept separate so reports can label it.
struct Jitter {
  double sigma = 0.05;
  std::uint64_t seed = 0;
};
} // namespace perturbation

using PerturbationSpec = std::variant<perturbation::Invert, perturbation::Scale, perturbation::Shift,
                                      perturbation::Zero, perturbation::AddNoise, perturbation::Jitter>;

inline void validate(const PerturbationSpec &spec) {
  std::visit(
      [](const auto &p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, perturbation::Scale>) {
          if (!std::isfinite(p.factor)) throw Error(ErrorCode::kInvalidArgument, "scale factor must be finite");
        } else if constexpr (std::is_same_v<P, perturbation::Shift>) {
          if (!std::isfinite(p.offset)) throw Error(ErrorCode::kInvalidArgument, "shift offset must be finite");
        } else if constexpr (std::is_same_v<P, perturbation::AddNoise> || std::is_same_v<P, perturbation::Jitter>) {
          if (!(p.sigma >= 0.0) || !std::isfinite(p.sigma))
            throw Error(ErrorCode::kInvalidArgument, "noise sigma must be finite and >= 0");
        }
      },
      spec);
}

std::string describe(const PerturbationSpec &spec);

template <typename Scalar>
Signal<Scalar> perturb(const Signal<Scalar> &x, const PerturbationSpec &spec) {
  validate(spec);
  const auto &s = x.samples();
  const auto add_noise = [&](double sigma, std::uint64_t seed) {
    if (sigma == 0.0) return Vector<Scalar>(s);
    NormalStream normal(seed);
    Vector<Scalar> out(s.size());
    for (Index i = 0; i < s.size(); ++i) out[i] = s[i] + static_cast<Scalar>(sigma * normal());
    return out;
  };
  Vector<Scalar> out = std::visit(
      [&](const auto &p) -> Vector<Scalar> {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, perturbation::Invert>) {
          return -s;
        } else if constexpr (std::is_same_v<P, perturbation::Scale>) {
          return s * static_cast<Scalar>(p.factor);
        } else if constexpr (std::is_same_v<P, perturbation::Shift>) {
          return (s.array() + static_cast<Scalar>(p.offset)).matrix();
        } else if constexpr (std::is_same_v<P, perturbation::Zero>) {
          return Vector<Scalar>::Zero(s.size());
        } else {
          return add_noise(p.sigma, p.seed);
        }
      },
      spec);
  return Signal<Scalar>(std::move(out), x.sample_period());
}

} // namespace sdsc
