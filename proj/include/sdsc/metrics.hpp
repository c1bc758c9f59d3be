#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <variant>

#include <Eigen/Core>

#include "sdsc/dtw.hpp"
#include "sdsc/error.hpp"
#include "sdsc/heaviside.hpp"
#include "sdsc/signal.hpp"

namespace sdsc {

namespace detail {

template <typename DerivedE, typename DerivedR>
void require_paired(const Eigen::MatrixBase<DerivedE> &e, const Eigen::MatrixBase<DerivedR> &r) {
  if (e.size() == 0 || r.size() == 0) throw Error(ErrorCode::kEmptyInput, "signals must be nonempty");
  if (e.size() != r.size())
    throw Error(ErrorCode::kLengthMismatch, "length mismatch: " + std::to_string(e.size()) + " vs " +
                                                std::to_string(r.size()));
  if (!e.allFinite() || !r.allFinite()) throw Error(ErrorCode::kNonFinite, "signals must be finite");
}

template <typename Scalar>
Scalar sign(Scalar x) noexcept {
  return Scalar((Scalar(0) < x) - (x < Scalar(0)));
}

} // namespace detail

/// Set Dice coefficient 2|A and B| / (|A| + |B|); 1 when both masks are empty.
inline double dice(std::span<const bool> a, std::span<const bool> b) {
  if (a.size() != b.size())
    throw Error(ErrorCode::kLengthMismatch, "mask length mismatch: " + std::to_string(a.size()) + " vs " +
                                                std::to_string(b.size()));
  std::size_t both = 0, count_a = 0, count_b = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    both += a[i] && b[i];
    count_a += a[i];
    count_b += b[i];
  }
  if (count_a + count_b == 0) return 1.0;
  return 2.0 * static_cast<double>(both) / static_cast<double>(count_a + count_b);
}

template <typename DerivedE, typename DerivedR>
typename DerivedE::Scalar mse(const Eigen::MatrixBase<DerivedE> &e, const Eigen::MatrixBase<DerivedR> &r) {
  detail::require_paired(e, r);
  using Scalar = typename DerivedE::Scalar;
  Scalar acc(0);
  for (Index i = 0; i < e.size(); ++i) {
    const Scalar d = r[i] - e[i];
    acc += d * d;
  }
  return acc / static_cast<Scalar>(e.size());
}

template <typename DerivedE, typename DerivedR>
typename DerivedE::Scalar mae(const Eigen::MatrixBase<DerivedE> &e, const Eigen::MatrixBase<DerivedR> &r) {
  detail::require_paired(e, r);
  using Scalar = typename DerivedE::Scalar;
  Scalar acc(0);
  for (Index i = 0; i < e.size(); ++i) acc += std::abs(r[i] - e[i]);
  return acc / static_cast<Scalar>(e.size());
}

/// Numerator and denominator of SDSC, kept apart for the gradient.
///   overlap = 2 sum_s H(e_s r_s) min(|e_s|, |r_s|)
///   mass    = sum_s (|e_s| + |r_s|)
template <typename Scalar>
struct SdscTerms {
  Scalar overlap;
  Scalar mass;
};

template <typename DerivedE, typename DerivedR>
SdscTerms<typename DerivedE::Scalar> sdsc_terms(const Eigen::MatrixBase<DerivedE> &e,
                                                const Eigen::MatrixBase<DerivedR> &r,
                                                const HeavisideMode<typename DerivedE::Scalar> &mode) {
  detail::require_paired(e, r);
  using Scalar = typename DerivedE::Scalar;
  Scalar overlap(0), mass(0);
  for (Index i = 0; i < e.size(); ++i) {
    const Scalar ae = std::abs(e[i]);
    const Scalar ar = std::abs(r[i]);
    overlap += mode(e[i] * r[i]) * std::min(ae, ar);
    mass += ae + ar;
  }
  return {Scalar(2) * overlap, mass};
}

/// Signal Dice Similarity Coefficient.
///
/// 2 sum H(e r) min(|e|, |r|) / (sum (|e| + |r|) + eps). Two all-zero
/// signals score 1. Exact mode is clamped to [0, 1]; sigmoid mode is not.
template <typename DerivedE, typename DerivedR>
typename DerivedE::Scalar sdsc(const Eigen::MatrixBase<DerivedE> &e, const Eigen::MatrixBase<DerivedR> &r,
                               const HeavisideMode<typename DerivedE::Scalar> &mode =
                                   HeavisideMode<typename DerivedE::Scalar>::exact(),
                               typename DerivedE::Scalar eps = typename DerivedE::Scalar(1e-8)) {
  using Scalar = typename DerivedE::Scalar;
  if (!(eps >= Scalar(0))) throw Error(ErrorCode::kInvalidArgument, "denominator epsilon must be >= 0");
  const auto terms = sdsc_terms(e, r, mode);
  if (terms.mass == Scalar(0)) return Scalar(1);
  const Scalar value = terms.overlap / (terms.mass + eps);
  return mode.is_exact() ? std::clamp(value, Scalar(0), Scalar(1)) : value;
}

template <typename Scalar = double>
struct FixedWeights {
  Scalar sdsc = 1;
  Scalar mse = 1;
};

/// Homoscedastic-uncertainty weighting; the sigmas are owned and updated by the caller.
template <typename Scalar = double>
struct AdaptiveWeights {
  Scalar sigma_sdsc = 1;
  Scalar sigma_mse = 1;
};

template <typename Scalar = double>
struct LossConfig {
  HeavisideMode<Scalar> heaviside = HeavisideMode<Scalar>::sigmoid(Scalar(10));
  Scalar denom_epsilon = Scalar(1e-8);
  std::variant<FixedWeights<Scalar>, AdaptiveWeights<Scalar>> weighting = FixedWeights<Scalar>{};

  bool adaptive() const noexcept { return std::holds_alternative<AdaptiveWeights<Scalar>>(weighting); }

  void validate() const {
    if (!(denom_epsilon >= Scalar(0)) || !std::isfinite(denom_epsilon))
      throw Error(ErrorCode::kInvalidArgument, "denominator epsilon must be finite and >= 0");
    if (const auto *w = std::get_if<FixedWeights<Scalar>>(&weighting)) {
      if (!(w->sdsc >= Scalar(0)) || !(w->mse >= Scalar(0)) || !std::isfinite(w->sdsc) || !std::isfinite(w->mse))
        throw Error(ErrorCode::kInvalidArgument, "fixed weights must be finite and >= 0");
      if (w->sdsc == Scalar(0) && w->mse == Scalar(0))
        throw Error(ErrorCode::kInvalidArgument, "fixed weights must not both be zero");
    } else {
      const auto &a = std::get<AdaptiveWeights<Scalar>>(weighting);
      if (!(a.sigma_sdsc > Scalar(0)) || !(a.sigma_mse > Scalar(0)) || !std::isfinite(a.sigma_sdsc) ||
          !std::isfinite(a.sigma_mse))
        throw Error(ErrorCode::kInvalidArgument, "adaptive sigmas must be finite and > 0");
    }
  }
};

template <typename DerivedE, typename DerivedR>
typename DerivedE::Scalar sdsc_loss(const Eigen::MatrixBase<DerivedE> &e, const Eigen::MatrixBase<DerivedR> &r,
                                    const LossConfig<typename DerivedE::Scalar> &cfg) {
  cfg.validate();
  return typename DerivedE::Scalar(1) - sdsc(e, r, cfg.heaviside, cfg.denom_epsilon);
}

template <typename Scalar>
struct HybridLoss {
  Scalar total;
  Scalar l_sdsc;
  Scalar l_mse;
  Scalar weight_sdsc;  // effective multiplier on l_sdsc
  Scalar weight_mse;
  // d total / d sigma_i, adaptive mode only.
  std::optional<Eigen::Matrix<Scalar, 2, 1>> sigma_grad;
};

namespace detail {

// L / (2 s^2) + log(1 + s^2) and its derivative in s.
template <typename Scalar>
Scalar uncertainty_term(Scalar loss, Scalar sigma) {
  return loss / (Scalar(2) * sigma * sigma) + std::log1p(sigma * sigma);
}

template <typename Scalar>
Scalar uncertainty_term_dsigma(Scalar loss, Scalar sigma) {
  return -loss / (sigma * sigma * sigma) + Scalar(2) * sigma / (Scalar(1) + sigma * sigma);
}

} // namespace detail

/// lambda_sdsc L_sdsc + lambda_mse L_mse, or the uncertainty-weighted form
/// sum_i L_i / (2 sigma_i^2) + log(1 + sigma_i^2).
template <typename DerivedE, typename DerivedR>
HybridLoss<typename DerivedE::Scalar> hybrid_loss(const Eigen::MatrixBase<DerivedE> &e,
                                                  const Eigen::MatrixBase<DerivedR> &r,
                                                  const LossConfig<typename DerivedE::Scalar> &cfg) {
  using Scalar = typename DerivedE::Scalar;
  cfg.validate();
  const Scalar l_sdsc = Scalar(1) - sdsc(e, r, cfg.heaviside, cfg.denom_epsilon);
  const Scalar l_mse = mse(e, r);
  if (const auto *w = std::get_if<FixedWeights<Scalar>>(&cfg.weighting)) {
    return {w->sdsc * l_sdsc + w->mse * l_mse, l_sdsc, l_mse, w->sdsc, w->mse, std::nullopt};
  }
  const auto &a = std::get<AdaptiveWeights<Scalar>>(cfg.weighting);
  HybridLoss<Scalar> out;
  out.l_sdsc = l_sdsc;
  out.l_mse = l_mse;
  out.weight_sdsc = Scalar(1) / (Scalar(2) * a.sigma_sdsc * a.sigma_sdsc);
  out.weight_mse = Scalar(1) / (Scalar(2) * a.sigma_mse * a.sigma_mse);
  out.total = detail::uncertainty_term(l_sdsc, a.sigma_sdsc) + detail::uncertainty_term(l_mse, a.sigma_mse);
  out.sigma_grad = Eigen::Matrix<Scalar, 2, 1>(detail::uncertainty_term_dsigma(l_sdsc, a.sigma_sdsc),
                                               detail::uncertainty_term_dsigma(l_mse, a.sigma_mse));
  return out;
}

template <typename Scalar = double>
struct PanelConfig {
  Scalar alpha = Scalar(10);
  Scalar denom_epsilon = Scalar(1e-8);
  Scalar soft_dtw_gamma = Scalar(1);
  DtwOptions dtw{LocalCost::kAbsolute, DtwNormalization::kMean};
};

template <typename Scalar = double>
struct MetricReport {
  Index n = 0;
  Scalar mse = 0;
  Scalar mae = 0;
  Scalar dtw = 0;
  Scalar soft_dtw = 0;
  Scalar sdsc = 0;
  Scalar sdsc_smooth = 0;
  PanelConfig<Scalar> config;
};

template <typename DerivedE, typename DerivedR>
MetricReport<typename DerivedE::Scalar> metric_panel(
    const Eigen::MatrixBase<DerivedE> &e, const Eigen::MatrixBase<DerivedR> &r,
    const PanelConfig<typename DerivedE::Scalar> &cfg = {}) {
  using Scalar = typename DerivedE::Scalar;
  detail::require_paired(e, r);
  MetricReport<Scalar> out;
  out.n = e.size();
  out.config = cfg;
  out.mse = mse(e, r);
  out.mae = mae(e, r);
  out.dtw = dtw(e, r, cfg.dtw);
  out.soft_dtw = soft_dtw(e, r, cfg.soft_dtw_gamma);
  out.sdsc = sdsc(e, r, HeavisideMode<Scalar>::exact(), cfg.denom_epsilon);
  out.sdsc_smooth = sdsc(e, r, HeavisideMode<Scalar>::sigmoid(cfg.alpha), cfg.denom_epsilon);
  return out;
}

// Signal overloads.

template <typename Scalar>
Scalar mse(const Signal<Scalar> &e, const Signal<Scalar> &r) {
  return mse(e.samples(), r.samples());
}

template <typename Scalar>
Scalar mae(const Signal<Scalar> &e, const Signal<Scalar> &r) {
  return mae(e.samples(), r.samples());
}

template <typename Scalar>
Scalar sdsc(const Signal<Scalar> &e, const Signal<Scalar> &r,
            const HeavisideMode<Scalar> &mode = HeavisideMode<Scalar>::exact(), Scalar eps = Scalar(1e-8)) {
  return sdsc(e.samples(), r.samples(), mode, eps);
}

template <typename Scalar>
Scalar sdsc_loss(const Signal<Scalar> &e, const Signal<Scalar> &r, const LossConfig<Scalar> &cfg) {
  return sdsc_loss(e.samples(), r.samples(), cfg);
}

template <typename Scalar>
HybridLoss<Scalar> hybrid_loss(const Signal<Scalar> &e, const Signal<Scalar> &r, const LossConfig<Scalar> &cfg) {
  return hybrid_loss(e.samples(), r.samples(), cfg);
}

template <typename Scalar>
MetricReport<Scalar> metric_panel(const Signal<Scalar> &e, const Signal<Scalar> &r,
                                  const PanelConfig<Scalar> &cfg = {}) {
  return metric_panel(e.samples(), r.samples(), cfg);
}

} // namespace sdsc
