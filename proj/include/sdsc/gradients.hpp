#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <variant>

#include <Eigen/Core>

#include "sdsc/error.hpp"
#include "sdsc/metrics.hpp"
#include "sdsc/signal.hpp"

namespace sdsc {

/// Gradient of a loss with respect to the candidate signal r.
template <typename Scalar = double>
struct GradientReport {
  std::string metric;
  Vector<Scalar> grad;
  Scalar l2_norm = 0;
  std::optional<LossConfig<Scalar>> config;
  // d total / d (sigma_sdsc, sigma_mse); adaptive hybrid only.
  std::optional<Eigen::Matrix<Scalar, 2, 1>> sigma_grad;
};

/// sqrt(sum g_i^2) with a fixed left-to-right summation order.
template <typename Derived>
typename Derived::Scalar l2_norm(const Eigen::MatrixBase<Derived> &g) {
  typename Derived::Scalar acc(0);
  for (Index i = 0; i < g.size(); ++i) acc += g[i] * g[i];
  return std::sqrt(acc);
}

namespace detail {

template <typename Scalar>
GradientReport<Scalar> make_report(std::string metric, Vector<Scalar> grad,
                                   std::optional<LossConfig<Scalar>> config = std::nullopt) {
  for (Index i = 0; i < grad.size(); ++i) {
    if (!std::isfinite(grad[i]))
      throw Error(ErrorCode::kNonFinite, metric + " gradient entry " + std::to_string(i) + " is not finite");
  }
  GradientReport<Scalar> out;
  out.metric = std::move(metric);
  out.l2_norm = l2_norm(grad);
  out.grad = std::move(grad);
  out.config = std::move(config);
  return out;
}

} // namespace detail

/// d mse / d r_i = 2 (r_i - e_i) / N
template <typename DerivedE, typename DerivedR>
GradientReport<typename DerivedE::Scalar> grad_mse(const Eigen::MatrixBase<DerivedE> &e,
                                                   const Eigen::MatrixBase<DerivedR> &r) {
  using Scalar = typename DerivedE::Scalar;
  detail::require_paired(e, r);
  const Scalar n = static_cast<Scalar>(e.size());
  Vector<Scalar> g(e.size());
  for (Index i = 0; i < e.size(); ++i) g[i] = Scalar(2) * (r[i] - e[i]) / n;
  return detail::make_report<Scalar>("mse", std::move(g));
}

/// d mae / d r_i = sign(r_i - e_i) / N, sign(0) = 0
template <typename DerivedE, typename DerivedR>
GradientReport<typename DerivedE::Scalar> grad_mae(const Eigen::MatrixBase<DerivedE> &e,
                                                   const Eigen::MatrixBase<DerivedR> &r) {
  using Scalar = typename DerivedE::Scalar;
  detail::require_paired(e, r);
  const Scalar n = static_cast<Scalar>(e.size());
  Vector<Scalar> g(e.size());
  for (Index i = 0; i < e.size(); ++i) g[i] = detail::sign<Scalar>(r[i] - e[i]) / n;
  return detail::make_report<Scalar>("mae", std::move(g));
}

/// Analytic gradient of 1 - overlap / (mass + eps) with respect to r.
///
///   d overlap / d r_s = 2 (H'(e_s r_s) e_s min_s + H(e_s r_s) d min_s / d r_s)
///   d mass    / d r_s = sign(r_s)
///
/// d min(|e_s|, |r_s|) / d r_s is sign(r_s) when |r_s| <= |e_s| and 0
/// otherwise, so at a tie the candidate branch is active. In exact mode H is
/// held constant (H' = 0), which gives a subgradient.
template <typename DerivedE, typename DerivedR>
GradientReport<typename DerivedE::Scalar> grad_sdsc_loss(const Eigen::MatrixBase<DerivedE> &e,
                                                         const Eigen::MatrixBase<DerivedR> &r,
                                                         const LossConfig<typename DerivedE::Scalar> &cfg) {
  using Scalar = typename DerivedE::Scalar;
  cfg.validate();
  const auto &h = cfg.heaviside;
  const auto terms = sdsc_terms(e, r, h);
  Vector<Scalar> g = Vector<Scalar>::Zero(e.size());
  if (terms.mass == Scalar(0)) return detail::make_report<Scalar>("sdsc_loss", std::move(g), cfg);

  const Scalar den = terms.mass + cfg.denom_epsilon;
  const Scalar den2 = den * den;
  for (Index i = 0; i < e.size(); ++i) {
    const Scalar ae = std::abs(e[i]);
    const Scalar ar = std::abs(r[i]);
    const Scalar p = e[i] * r[i];
    const Scalar sr = detail::sign(r[i]);
    const Scalar dmin = ar <= ae ? sr : Scalar(0);
    const Scalar dnum = Scalar(2) * (h.derivative(p) * e[i] * std::min(ae, ar) + h(p) * dmin);
    g[i] = -(dnum * den - terms.overlap * sr) / den2;
  }
  return detail::make_report<Scalar>("sdsc_loss", std::move(g), cfg);
}

/// Gradient of hybrid_loss. Fixed weights combine the component gradients
/// linearly; adaptive weights scale them by 1 / (2 sigma_i^2) and also
/// report d total / d sigma_i.
template <typename DerivedE, typename DerivedR>
GradientReport<typename DerivedE::Scalar> grad_hybrid(const Eigen::MatrixBase<DerivedE> &e,
                                                      const Eigen::MatrixBase<DerivedR> &r,
                                                      const LossConfig<typename DerivedE::Scalar> &cfg) {
  using Scalar = typename DerivedE::Scalar;
  const auto loss = hybrid_loss(e, r, cfg);
  const auto g_sdsc = grad_sdsc_loss(e, r, cfg);
  const auto g_mse = grad_mse(e, r);
  Vector<Scalar> g = loss.weight_sdsc * g_sdsc.grad + loss.weight_mse * g_mse.grad;
  auto out = detail::make_report<Scalar>("hybrid", std::move(g), cfg);
  out.sigma_grad = loss.sigma_grad;
  return out;
}

/// Central differences of loss(e, r) in each coordinate of r with step
/// h_i = h_rel (1 + |r_i|).
template <typename Loss, typename DerivedE, typename DerivedR>
Vector<typename DerivedR::Scalar> finite_difference(Loss &&loss, const Eigen::MatrixBase<DerivedE> &e,
                                                    const Eigen::MatrixBase<DerivedR> &r,
                                                    typename DerivedR::Scalar h_rel = 1e-6) {
  using Scalar = typename DerivedR::Scalar;
  if (!(h_rel > Scalar(0))) throw Error(ErrorCode::kInvalidArgument, "finite-difference step must be > 0");
  const Vector<Scalar> e_eval = e;
  Vector<Scalar> probe = r;
  Vector<Scalar> g(r.size());
  for (Index i = 0; i < r.size(); ++i) {
    const Scalar x = probe[i];
    const Scalar step = h_rel * (Scalar(1) + std::abs(x));
    probe[i] = x + step;
    const Scalar up = loss(e_eval, probe);
    probe[i] = x - step;
    const Scalar down = loss(e_eval, probe);
    probe[i] = x;
    if (!std::isfinite(up) || !std::isfinite(down))
      throw Error(ErrorCode::kNonFinite, "loss is not finite inside the stencil at coordinate " + std::to_string(i));
    g[i] = (up - down) / (Scalar(2) * step);
  }
  return g;
}

template <typename Scalar>
GradientReport<Scalar> grad_mse(const Signal<Scalar> &e, const Signal<Scalar> &r) {
  return grad_mse(e.samples(), r.samples());
}

template <typename Scalar>
GradientReport<Scalar> grad_mae(const Signal<Scalar> &e, const Signal<Scalar> &r) {
  return grad_mae(e.samples(), r.samples());
}

template <typename Scalar>
GradientReport<Scalar> grad_sdsc_loss(const Signal<Scalar> &e, const Signal<Scalar> &r,
                                      const LossConfig<Scalar> &cfg) {
  return grad_sdsc_loss(e.samples(), r.samples(), cfg);
}

template <typename Scalar>
GradientReport<Scalar> grad_hybrid(const Signal<Scalar> &e, const Signal<Scalar> &r, const LossConfig<Scalar> &cfg) {
  return grad_hybrid(e.samples(), r.samples(), cfg);
}

} // namespace sdsc
