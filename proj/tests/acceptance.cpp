// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "sdsc/dtw.hpp"
#include "sdsc/gradients.hpp"
#include "sdsc/harness/commands.hpp"
#include "sdsc/harness/stats.hpp"
#include "sdsc/metrics.hpp"
#include "sdsc/signal_io.hpp"
#include "test_support.hpp"

namespace sdsc {
namespace {
using sdsc::testing::UniformStream;
using Vec = Vector<double>;
namespace pt = sdsc::perturbation;

/// Collects failures for one criterion.
class Verdict {
 public:
  void expect(bool ok, const std::string &what) {
    ++checks_;
    if (!ok && failures_.size() < 8) failures_.push_back(what);
    failed_ += !ok;
  }
  void near(double actual, double expected, double tol, const std::string &what) {
    std::ostringstream s;
    s.precision(10);
    s << what << ": got " << actual << ", want " << expected << " +/- " << tol;
    expect(std::abs(actual - expected) <= tol, s.str());
  }
  void exact(double actual, double expected, const std::string &what) {
    std::ostringstream s;
    s.precision(17);
    s << what << ": got " << actual << ", want exactly " << expected;
    expect(actual == expected, s.str());
  }
  void note(std::string n) { notes_ += (notes_.empty() ? "" : "; ") + std::move(n); }

  bool passed() const { return failed_ == 0; }
  std::string summary() const {
    std::string out = std::to_string(checks_ - failed_) + "/" + std::to_string(checks_) + " checks";
    if (!notes_.empty()) out += "; " + notes_;
    for (const auto &f : failures_) out += "\n      " + f;
    return out;
  }

 private:
  std::size_t checks_ = 0, failed_ = 0;
  std::vector<std::string> failures_;
  std::string notes_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) { return format_number(v, 4); }

Signal<double> sine(double amplitude) { return sdsc::testing::sine(amplitude, 1000); }

LossConfig<double> sigmoid(double alpha, double l_sdsc = 1.0, double l_mse = 1.0) {
  LossConfig<double> cfg;
  cfg.heaviside = HeavisideMode<double>::sigmoid(alpha);
  cfg.weighting = FixedWeights<double>{l_sdsc, l_mse};
  return cfg;
}

void metric_panel_criterion(Verdict &v) {
  const auto t0 = std::chrono::steady_clock::now();
  struct Row {
    const char *label;
    double amplitude;
    PerturbationSpec spec;
    double mse, mae, sdsc, sdsc_tol;
  };
  const Row rows[] = {
      {"Inverted", 0.1, pt::Invert{}, 0.0200, 0.1272, 0.0, 0.0},
      {"0.5x Scaled", 1.0, pt::Scale{0.5}, 0.1249, 0.3180, 0.6667, 1e-4},
      {"2x Scaled", 1.0, pt::Scale{2.0}, 0.4995, 0.6360, 0.6667, 1e-4},
      {"Zero", 1.0, pt::Zero{}, 0.4995, 0.6360, 0.0, 0.0},
      {"Positive Shifted", 1.0, pt::Shift{1.0}, 1.0, 1.0, 0.3887, 2e-3},
      {"Negative Shifted", 1.0, pt::Shift{-1.0}, 1.0, 1.0, 0.3887, 2e-3},
  };
  for (const auto &row : rows) {
    const auto e = sine(row.amplitude);
    const auto r = perturb(e, row.spec);
    const std::string l = row.label;
    v.near(mse(e, r), row.mse, 1e-3, l + " mse");
    v.near(mae(e, r), row.mae, 1e-3, l + " mae");
    const double s = sdsc(e, r);
    if (row.sdsc_tol == 0.0) {
      v.exact(s, row.sdsc, l + " sdsc");
    } else {
      v.near(s, row.sdsc, row.sdsc_tol, l + " sdsc");
    }
    if (row.sdsc == 0.3887) v.near(s, 4.0 / (4.0 + 2.0 * std::numbers::pi), 2e-3, l + " sdsc vs 4/(4+2pi)");
  }
  // The harness must agree with the direct computation.
  harness::RunConfig cfg;
  cfg.command = "table1";
  const auto report = harness::run_table1(cfg);
  v.expect(report.passed(), "table1 command embedded checks pass");
  const double elapsed = seconds_since(t0);
  v.expect(elapsed < 1.0, "runtime < 1 s");
  v.note("runtime " + fmt(elapsed) + " s");
}

void gradient_norm_criterion(Verdict &v) {
  const auto e = sine(1.0);
  struct Row {
    const char *label;
    PerturbationSpec spec;
    double mse_norm;  // < 0: unchecked
  };
  const Row rows[] = {
      {"Inverted", pt::Invert{}, 0.0894},
      {"0.5x Scaled", pt::Scale{0.5}, 0.0223},
      {"2x Scaled", pt::Scale{2.0}, 0.0447},
      {"Zero", pt::Zero{}, 0.0447},
      {"Noise Sample", pt::AddNoise{0.7115, 42}, -1.0},
      {"Shifted", pt::Shift{1.0}, 0.0632},
      {"Jittered", pt::Jitter{0.05, 43}, -1.0},
  };
  std::string sdsc_info;
  for (const auto &row : rows) {
    const auto r = perturb(e, row.spec);
    const std::string l = row.label;
    v.near(grad_mae(e, r).l2_norm, 0.0316, 5e-4, l + " mae norm");
    if (row.mse_norm > 0) v.near(grad_mse(e, r).l2_norm, row.mse_norm, 5e-4, l + " mse norm");
    sdsc_info += (sdsc_info.empty() ? "" : " ") + fmt(grad_sdsc_loss(e, r, sigmoid(10.0)).l2_norm);
  }
  v.note("sdsc(alpha=10) norms, informational: " + sdsc_info);
}

void sharpness_sweep_criterion(Verdict &v) {
  const auto e = sine(1.0);
  const double alphas[] = {1.0, 10.0, 100.0};
  const auto norms = [&](const PerturbationSpec &spec) {
    const auto r = perturb(e, spec);
    std::array<double, 3> out{};
    for (int i = 0; i < 3; ++i) out[i] = grad_sdsc_loss(e, r, sigmoid(alphas[i])).l2_norm;
    return out;
  };
  const auto zero = norms(pt::Zero{});
  const auto half = norms(pt::Scale{0.5});
  const auto twice = norms(pt::Scale{2.0});
  const auto inverted = norms(pt::Invert{});
  const double half_expected[] = {0.0289, 0.0437, 0.0436};
  const double inverted_expected[] = {0.0091, 0.0082, 0.0047};
  for (int i = 0; i < 3; ++i) {
    const std::string a = "alpha=" + fmt(alphas[i]);
    v.exact(zero[i], 0.0, "Zero " + a);
    v.near(half[i], half_expected[i], 2e-3, "0.5x Scaled " + a);
    v.near(inverted[i], inverted_expected[i], 2e-3, "Inverted " + a);
  }
  for (const auto &[label, n] : {std::pair{"0.5x Scaled", half}, std::pair{"2x Scaled", twice}}) {
    v.expect(std::abs(n[1] - n[2]) < std::abs(n[0] - n[2]),
             std::string(label) + ": |n(10)-n(100)| < |n(1)-n(100)|");
  }
  v.note("Inverted " + fmt(inverted[0]) + "/" + fmt(inverted[1]) + "/" + fmt(inverted[2]) + ", 0.5x " +
         fmt(half[0]) + "/" + fmt(half[1]) + "/" + fmt(half[2]));
}

void gradcheck(Verdict &v) {
  const auto t0 = std::chrono::steady_clock::now();
  UniformStream u(2024);
  double worst = 0.0;
  for (Index n : {8, 64, 1000}) {
    for (int trial = 0; trial < 100; ++trial) {
      const auto [e, r] = sdsc::testing::smooth_pair(u, n);
      const auto check = [&](const std::string &name, const Vec &analytic, auto &&loss) {
        const Vec fd = finite_difference(loss, e, r);
        const double err = sdsc::testing::relative_error(analytic, fd);
        worst = std::max(worst, err);
        v.expect(err < 1e-5, name + " N=" + std::to_string(n) + " trial " + std::to_string(trial) +
                                 " rel err " + format_number(err, 3));
      };
      check("mse", grad_mse(e, r).grad, [](const Vec &a, const Vec &b) { return mse(a, b); });
      for (double alpha : {1.0, 10.0, 100.0}) {
        const auto cfg = sigmoid(alpha);
        check("sdsc_loss alpha=" + fmt(alpha), grad_sdsc_loss(e, r, cfg).grad,
              [&cfg](const Vec &a, const Vec &b) { return sdsc_loss(a, b, cfg); });
      }
      const auto hcfg = sigmoid(10.0, 0.3, 0.7);
      check("hybrid", grad_hybrid(e, r, hcfg).grad,
            [&hcfg](const Vec &a, const Vec &b) { return hybrid_loss(a, b, hcfg).total; });
    }
  }
  const double elapsed = seconds_since(t0);
  v.expect(elapsed < 30.0, "runtime < 30 s");
  v.note("max rel err " + format_number(worst, 3) + ", runtime " + fmt(elapsed) + " s");
}

void properties(Verdict &v) {
  UniformStream u(77);
  const auto exact = HeavisideMode<double>::exact();
  const auto draw = [&](Index n) {
    const double scale = std::pow(10.0, u(-3.0, 3.0));
    Vec x = u.vector(n, -scale, scale);
    for (Index i = 0; i < n; ++i) {
      if (u(0.0, 1.0) < 0.1) x[i] = 0.0;
    }
    return x;
  };

  bool bounded = true, symmetric = true;
  for (int trial = 0; trial < 10000; ++trial) {
    const auto n = static_cast<Index>(1 + u.integer(32));
    const Vec e = draw(n), r = draw(n);
    const double s = sdsc(e, r);
    bounded = bounded && s >= 0.0 && s <= 1.0;
    symmetric = symmetric && std::abs(s - sdsc(r, e)) <= 1e-12 && mse(e, r) == mse(r, e) && mae(e, r) == mae(r, e) &&
                std::abs(dtw(e, r) - dtw(r, e)) <= 1e-12;
  }
  v.expect(bounded, "exact sdsc in [0, 1] on 10k pairs");
  v.expect(symmetric, "symmetry to 1e-12 on 10k pairs");

  for (int trial = 0; trial < 50; ++trial) {
    Vec x = draw(static_cast<Index>(2 + u.integer(64)));
    x[0] = 1.0;
    const double c = std::pow(10.0, u(-2.0, 2.0));
    v.near(sdsc(x, (c * x).eval(), exact, 0.0), 2.0 * std::min(1.0, c) / (1.0 + c), 1e-9, "scale law c=" + fmt(c));
  }

  bool dice_ok = true;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto n = static_cast<std::size_t>(1 + u.integer(32));
    std::unique_ptr<bool[]> a(new bool[n]), b(new bool[n]);
    Vec ea(static_cast<Index>(n)), eb(static_cast<Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = u(0.0, 1.0) < 0.5;
      b[i] = u(0.0, 1.0) < 0.5;
      ea[static_cast<Index>(i)] = a[i] ? 1.0 : 0.0;
      eb[static_cast<Index>(i)] = b[i] ? 1.0 : 0.0;
    }
    dice_ok = dice_ok && std::abs(dice({a.get(), n}, {b.get(), n}) - sdsc(ea, eb, exact, 0.0)) <= 1e-15;
  }
  v.expect(dice_ok, "dice on masks == exact sdsc on indicator signals");

  bool soft_below = true, soft_close = true;
  for (int trial = 0; trial < 200; ++trial) {
    const Vec a = u.vector(static_cast<Index>(1 + u.integer(8)), -1.0, 1.0);
    const Vec b = u.vector(static_cast<Index>(1 + u.integer(8)), -1.0, 1.0);
    const double d = dtw(a, b, {LocalCost::kSquared, DtwNormalization::kNone});
    soft_below = soft_below && soft_dtw(a, b, 1.0) <= d && soft_dtw(a, b, 1e-3) <= d;
    soft_close = soft_close && std::abs(soft_dtw(a, b, 1e-3) - d) < 1e-2;
  }
  v.expect(soft_below, "soft_dtw <= dtw(squared) on 200 pairs");
  v.expect(soft_close, "|soft_dtw - dtw| < 1e-2 at gamma 1e-3");

  // Every pair of sequences of length <= 5 over {-1, 0, 1}.
  const double alphabet[] = {-1.0, 0.0, 1.0};
  std::vector<std::vector<double>> seqs;
  for (int len = 1; len <= 5; ++len) {
    int count = 1;
    for (int i = 0; i < len; ++i) count *= 3;
    for (int code = 0; code < count; ++code) {
      std::vector<double> s;
      for (int i = 0, c = code; i < len; ++i, c /= 3) s.push_back(alphabet[c % 3]);
      seqs.push_back(std::move(s));
    }
  }
  std::size_t pairs = 0, mismatches = 0;
  for (const auto &a : seqs) {
    const Vec va = Eigen::Map<const Vec>(a.data(), static_cast<Index>(a.size()));
    for (const auto &b : seqs) {
      const Vec vb = Eigen::Map<const Vec>(b.data(), static_cast<Index>(b.size()));
      ++pairs;
      mismatches += dtw(va, vb) != sdsc::testing::dtw_brute_force(a, b, false);
    }
  }
  v.expect(mismatches == 0, "dtw == exhaustive path enumeration (" + std::to_string(mismatches) + " mismatches)");
  v.note(std::to_string(pairs) + " enumerated dtw pairs");
}

void stats_oracle(Verdict &v) {
  std::vector<double> m, s;
  for (int i = 0; i <= 1000; ++i) {
    m.push_back(2.0 * i / 1000.0);
    s.push_back(1.0 - m.back() / 2.0);
  }
  v.near(harness::pearson(m, s), -1.0, 1e-12, "pearson on sdsc = 1 - mse/2");

  UniformStream u(31);
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = static_cast<std::size_t>(1 + u.integer(1000));
    std::vector<double> x(n);
    for (auto &val : x) val = u(0.0, 1.0);
    std::vector<double> sorted = x;
    std::sort(sorted.begin(), sorted.end());
    const auto q = harness::quartiles(x);
    const auto oracle = [&](double p) {
      const double h = (static_cast<double>(n) - 1.0) * p;
      const auto k = static_cast<std::size_t>(std::floor(h));
      return k + 1 >= n ? sorted.back() : sorted[k] + (h - std::floor(h)) * (sorted[k + 1] - sorted[k]);
    };
    v.exact(q.q1, oracle(0.25), "q1 n=" + std::to_string(n));
    v.exact(q.q3, oracle(0.75), "q3 n=" + std::to_string(n));
    v.exact(q.iqr(), oracle(0.75) - oracle(0.25), "iqr n=" + std::to_string(n));
  }

  harness::SyntheticPairsSpec spec;
  spec.count = 10000;
  spec.target_r = -0.3;
  const auto pairs = harness::synthetic_pairs(spec);
  const auto summary = harness::summarize(pairs, 1.5, 0.05);
  v.near(summary.pearson_r, -0.3, 0.03, "synthetic r recovery");
  v.note("recovered r " + fmt(summary.pearson_r));
}

void determinism(Verdict &v) {
  const auto dir = std::filesystem::temp_directory_path() / "sdsc_acceptance";
  std::filesystem::create_directories(dir);
  const auto e = sine(1.0);
  save_csv(e, dir / "e.csv");
  save_csv(perturb(e, pt::AddNoise{0.2, 5}), dir / "r.csv");

  for (const char *cmd : {"table1", "sensitivity", "alpha-sweep", "stats", "compare"}) {
    harness::RunConfig cfg;
    cfg.command = cmd;
    cfg.file_e = (dir / "e.csv").string();
    cfg.file_r = (dir / "r.csv").string();
    cfg.gradients = true;
    const auto first = harness::render(harness::run(cfg), harness::OutputFormat::kCsv);
    // Round-trip the config to show the run is reproducible from it alone.
    const auto replay = nlohmann::json(cfg).get<harness::RunConfig>();
    const auto second = harness::render(harness::run(replay), harness::OutputFormat::kCsv);
    v.expect(!first.empty() && first == second, std::string(cmd) + " csv byte-identical");
  }
  std::filesystem::remove_all(dir);
}

} // namespace
} // namespace sdsc

int main() {
  using namespace sdsc;
  const std::vector<std::pair<std::string, std::function<void(Verdict &)>>> criteria = {
      {"Metric panel", metric_panel_criterion},
      {"Gradient norms", gradient_norm_criterion},
      {"Sharpness sweep", sharpness_sweep_criterion},
      {"Gradcheck suite", gradcheck},
      {"Property suite", properties},
      {"Stats oracle", stats_oracle},
      {"Determinism", determinism},
  };
  int failed = 0;
  for (const auto &[name, run] : criteria) {
    Verdict v;
    try {
      run(v);
    } catch (const std::exception &ex) {
      v.expect(false, std::string("exception: ") + ex.what());
    }
    std::printf("[%s] %s: %s\n", v.passed() ? "PASS" : "FAIL", name.c_str(), v.summary().c_str());
    failed += !v.passed();
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
