#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "sdsc/gradients.hpp"
#include "sdsc/signal.hpp"

namespace sdsc {

enum class GradientMetric { kMse, kMae, kSdscLoss, kHybrid };

template <typename Scalar = double>
struct SensitivityColumn {
  std::string label;
  GradientMetric metric = GradientMetric::kMse;
  LossConfig<Scalar> config{};
};

struct PerturbationCase {
  std::string label;
  PerturbationSpec spec;
};

template <typename Scalar = double>
struct SensitivityTable {
  std::vector<std::string> rows;
  std::vector<std::string> columns;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> norms;  // rows x columns
};

template <typename Scalar>
GradientReport<Scalar> gradient_for(GradientMetric metric, const Signal<Scalar> &e, const Signal<Scalar> &r,
                                    const LossConfig<Scalar> &cfg) {
  switch (metric) {
    case GradientMetric::kMse: return grad_mse(e, r);
    case GradientMetric::kMae: return grad_mae(e, r);
    case GradientMetric::kSdscLoss: return grad_sdsc_loss(e, r, cfg);
    case GradientMetric::kHybrid: return grad_hybrid(e, r, cfg);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown gradient metric");
}

/// Gradient norm of each column's loss at r = perturb(base, case), one row per case.
template <typename Scalar = double>
SensitivityTable<Scalar> sensitivity_table(const BaseSignalSpec &base, std::span<const PerturbationCase> cases,
                                           std::span<const SensitivityColumn<Scalar>> columns) {
  const auto e = generate<Scalar>(base);
  SensitivityTable<Scalar> table;
  table.norms.resize(static_cast<Index>(cases.size()), static_cast<Index>(columns.size()));
  for (const auto &c : columns) table.columns.push_back(c.label);
  for (std::size_t i = 0; i < cases.size(); ++i) {
    table.rows.push_back(cases[i].label);
    const auto r = perturb(e, cases[i].spec);
    for (std::size_t j = 0; j < columns.size(); ++j) {
      table.norms(static_cast<Index>(i), static_cast<Index>(j)) =
          gradient_for(columns[j].metric, e, r, columns[j].config).l2_norm;
    }
  }
  return table;
}

} // namespace sdsc
