#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "sdsc/error.hpp"
#include "sdsc/signal.hpp"

namespace sdsc {

enum class LocalCost { kAbsolute, kSquared };

// kMean divides by max(n, m).
enum class DtwNormalization { kNone, kPathLength, kMean };

struct DtwOptions {
  LocalCost cost = LocalCost::kAbsolute;
  DtwNormalization normalization = DtwNormalization::kNone;
};

namespace detail {

template <typename DerivedE, typename DerivedR>
void require_nonempty(const Eigen::MatrixBase<DerivedE> &e, const Eigen::MatrixBase<DerivedR> &r) {
  if (e.size() == 0 || r.size() == 0) throw Error(ErrorCode::kEmptyInput, "signals must be nonempty");
  if (!e.allFinite() || !r.allFinite()) throw Error(ErrorCode::kNonFinite, "signals must be finite");
}

template <typename Scalar>
Scalar local_cost(Scalar a, Scalar b, LocalCost cost) {
  const Scalar d = a - b;
  return cost == LocalCost::kAbsolute ? std::abs(d) : d * d;
}

} // namespace detail

/// Classic dynamic time warping with steps (1,0), (0,1), (1,1) and no window.
///
/// Among equal-cost alignments the shortest path is kept, which fixes the
/// divisor for DtwNormalization::kPathLength.
template <typename DerivedE, typename DerivedR>
typename DerivedE::Scalar dtw(const Eigen::MatrixBase<DerivedE> &e, const Eigen::MatrixBase<DerivedR> &r,
                              DtwOptions options = {}) {
  using Scalar = typename DerivedE::Scalar;
  detail::require_nonempty(e, r);
  const Index n = e.size();
  const Index m = r.size();
  const Scalar inf = std::numeric_limits<Scalar>::infinity();

  // Rolling rows over r; column 0 is the virtual boundary.
  std::vector<Scalar> prev_cost(m + 1, inf), cost(m + 1, inf);
  std::vector<Index> prev_len(m + 1, 0), len(m + 1, 0);
  prev_cost[0] = Scalar(0);
  for (Index i = 1; i <= n; ++i) {
    cost[0] = inf;
    len[0] = 0;
    for (Index j = 1; j <= m; ++j) {
      Scalar best = prev_cost[j - 1];
      Index best_len = prev_len[j - 1];
      const auto consider = [&](Scalar c, Index l) {
        if (c < best || (c == best && l < best_len)) {
          best = c;
          best_len = l;
        }
      };
      consider(prev_cost[j], prev_len[j]);
      consider(cost[j - 1], len[j - 1]);
      cost[j] = best + detail::local_cost<Scalar>(e[i - 1], r[j - 1], options.cost);
      len[j] = best_len + 1;
    }
    std::swap(prev_cost, cost);
    std::swap(prev_len, len);
  }
  const Scalar total = prev_cost[m];
  switch (options.normalization) {
    case DtwNormalization::kNone: return total;
    case DtwNormalization::kPathLength: return total / static_cast<Scalar>(prev_len[m]);
    case DtwNormalization::kMean: return total / static_cast<Scalar>(std::max(n, m));
  }
  return total;
}

/// Soft-DTW with squared local cost; min is replaced by
/// softmin_g(a, b, c) = -g log(exp(-a/g) + exp(-b/g) + exp(-c/g)).
/// The value can be negative.
template <typename DerivedE, typename DerivedR>
typename DerivedE::Scalar soft_dtw(const Eigen::MatrixBase<DerivedE> &e, const Eigen::MatrixBase<DerivedR> &r,
                                   typename DerivedE::Scalar gamma) {
  using Scalar = typename DerivedE::Scalar;
  detail::require_nonempty(e, r);
  if (!(gamma > Scalar(0)) || !std::isfinite(gamma))
    throw Error(ErrorCode::kInvalidArgument, "soft-dtw gamma must be finite and > 0");
  const Index n = e.size();
  const Index m = r.size();
  const Scalar inf = std::numeric_limits<Scalar>::infinity();

  const auto softmin = [gamma, inf](Scalar a, Scalar b, Scalar c) {
    const Scalar lo = std::min({a, b, c});
    if (lo == inf) return inf;
    Scalar acc(0);
    for (Scalar v : {a, b, c}) acc += std::exp(-(v - lo) / gamma);
    return lo - gamma * std::log(acc);
  };

  std::vector<Scalar> prev(m + 1, inf), cur(m + 1, inf);
  prev[0] = Scalar(0);
  for (Index i = 1; i <= n; ++i) {
    cur[0] = inf;
    for (Index j = 1; j <= m; ++j) {
      cur[j] = detail::local_cost<Scalar>(e[i - 1], r[j - 1], LocalCost::kSquared) +
               softmin(prev[j - 1], prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

template <typename Scalar>
Scalar dtw(const Signal<Scalar> &e, const Signal<Scalar> &r, DtwOptions options = {}) {
  return dtw(e.samples(), r.samples(), options);
}

template <typename Scalar>
Scalar soft_dtw(const Signal<Scalar> &e, const Signal<Scalar> &r, Scalar gamma) {
  return soft_dtw(e.samples(), r.samples(), gamma);
}

} // namespace sdsc
