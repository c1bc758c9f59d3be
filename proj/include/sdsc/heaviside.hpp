#pragma once

#include <cmath>
#include <string>

#include "sdsc/error.hpp"

namespace sdsc {

/// Step function gating the SDSC numerator to sign-matched samples.
///
/// Exact mode is the Heaviside step with H(0) = 0. Sigmoid mode is the smooth
/// surrogate 1 / (1 + exp(-alpha x)); larger alpha approaches the step.
template <typename Scalar = double>
class HeavisideMode {
 public:
  static HeavisideMode exact() { return HeavisideMode(Scalar(0)); }

  static HeavisideMode sigmoid(Scalar alpha) {
    if (!(alpha > Scalar(0)) || !std::isfinite(alpha))
      throw Error(ErrorCode::kInvalidArgument, "sigmoid alpha must be finite and > 0");
    return HeavisideMode(alpha);
  }

  bool is_exact() const noexcept { return alpha_ == Scalar(0); }
  Scalar alpha() const noexcept { return alpha_; }

  Scalar operator()(Scalar x) const noexcept {
    if (is_exact()) return x > Scalar(0) ? Scalar(1) : Scalar(0);
    const Scalar z = alpha_ * x;
    if (z >= Scalar(0)) return Scalar(1) / (Scalar(1) + std::exp(-z));
    const Scalar ez = std::exp(z);
    return ez / (Scalar(1) + ez);
  }

  /// dH/dx; zero everywhere in exact mode (subgradient convention).
  Scalar derivative(Scalar x) const noexcept {
    if (is_exact()) return Scalar(0);
    const Scalar h = (*this)(x);
    return alpha_ * h * (Scalar(1) - h);
  }

  std::string name() const {
    return is_exact() ? std::string("exact") : "sigmoid(alpha=" + std::to_string(alpha_) + ")";
  }

 private:
  explicit HeavisideMode(Scalar alpha) : alpha_(alpha) {}

  Scalar alpha_;
};

} // namespace sdsc
