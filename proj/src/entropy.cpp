#include "sqcat/entropy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sqcat/parallel.hpp"

namespace sqcat {

namespace {

FockVector finish(FockVector state, double exact_norm_squared) {
  const double kept = state.norm_squared();
  if (!(kept > 0)) throw TruncationError("truncation removed the whole state");
  const double lost = std::max(0.0, 1.0 - kept / exact_norm_squared);
  return FockVector(state.layout(), state.amplitudes() / std::sqrt(kept), lost);
}

double entropy_of(const Eigen::VectorXd& weights) {
  double s = 0;
  for (double p : weights) {
    if (p > 0) s -= p * std::log2(p);
  }
  return s;
}

}  // namespace

Matrix2 balanced_splitter() {
  const double h = 1 / std::numbers::sqrt2;
  Matrix2 m;
  m << h, -h, h, h;
  return m;
}

FockVector make_bs_output_state(double r, Sign sign, int cutoff) {
  if (!(r >= 0) || !std::isfinite(r)) throw std::invalid_argument("r must be finite and >= 0");
  if (cutoff < 1) throw std::invalid_argument("cutoff must be at least 1");
  const FockVector cat = squeezed_cat(r, sign, 2 * cutoff, "a");
  const FockVector input = tensor(cat, FockVector(ModeLayout::single("b", 0)));
  const FockVector out = apply_beam_splitter(input, balanced_splitter(), "a", "b", cutoff, cutoff);
  return finish(out, 1.0 - cat.discarded_weight());
}

FockVector make_bs_output_state_from_squeezers(double r, Sign sign, int cutoff) {
  if (!(r >= 0) || !std::isfinite(r)) throw std::invalid_argument("r must be finite and >= 0");
  if (sign == Sign::minus && r == 0) throw std::invalid_argument("|r;-> is undefined at r = 0");
  if (cutoff < 1) throw std::invalid_argument("cutoff must be at least 1");
  const int work = 3 * cutoff + 20;
  const double q = std::tanh(r / 2);

  auto branch = [&](double s) {
    FockVector state = two_mode_squeezed_vacuum(s * q, work, "a", "b");
    state = apply(squeezer_matrix(s * r / 2, 0.0, work, "a"), state);
    return apply(squeezer_matrix(s * r / 2, 0.0, work, "b"), state);
  };
  const FockVector sum = combine<double>(1.0, branch(1.0), sign == Sign::plus ? 1.0 : -1.0, branch(-1.0));

  const ModeLayout target{{"a", cutoff}, {"b", cutoff}};
  Eigen::VectorXcd amps(static_cast<Eigen::Index>(target.dimension()));
  for (int i = 0; i <= cutoff; ++i) {
    amps.segment(i * (cutoff + 1), cutoff + 1) = sum.amplitudes().segment(i * (work + 1), cutoff + 1);
  }
  return finish(FockVector(target, amps), squeezed_cat_norm(r, sign));
}

Eigen::VectorXd schmidt_weights(const FockVector& state) {
  const Eigen::MatrixXcd c = amplitude_matrix(state);
  const Eigen::BDCSVD<Eigen::MatrixXcd> svd(c);
  const Eigen::VectorXd& sv = svd.singularValues();
  Eigen::Index kept = 0;
  while (kept < sv.size() && sv(kept) >= 1e-12) ++kept;
  return sv.head(kept).cwiseAbs2();
}

double entanglement_entropy(const FockVector& state) {
  if (std::abs(state.norm_squared() - 1) > 1e-6) {
    throw std::invalid_argument("entanglement entropy needs a normalized state");
  }
  const Eigen::VectorXd w = schmidt_weights(state);
  return entropy_of(w / w.sum());
}

double tmsv_entropy(double q) {
  if (!(std::abs(q) < 1)) throw std::invalid_argument("tmsv_entropy needs |q| < 1");
  const double q2 = q * q;
  if (q2 == 0) return 0;
  double s = 0;
  double p = 1 - q2;
  for (int n = 0; p > 1e-300; ++n, p *= q2) {
    const double term = -p * std::log2(p);
    s += term;
    if (n > 8 && term < 1e-18 * s) break;
  }
  return s;
}

double minus_entropy_limit(int cutoff) {
  const FockVector two = FockVector::basis_state(ModeLayout{{"a", std::max(cutoff, 2)}, {"b", 0}}, {2, 0});
  return entanglement_entropy(apply_beam_splitter(two, balanced_splitter(), "a", "b", cutoff, cutoff));
}

EntropyCurve entropy_curves(const std::vector<double>& r_grid, int cutoff, unsigned threads) {
  if (r_grid.empty()) throw std::invalid_argument("empty r grid");
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    if (!(r_grid[i] >= 0 && r_grid[i] <= 1.5)) throw std::invalid_argument("r grid must lie in [0, 1.5]");
    if (i > 0 && !(r_grid[i] > r_grid[i - 1])) throw std::invalid_argument("r grid must be strictly increasing");
  }
  const std::size_t n = r_grid.size();
  EntropyCurve curve;
  curve.r_values = r_grid;
  curve.cutoff = cutoff;
  curve.mapping_note = "S_tmsv evaluated at q = tanh(r); S_minus at r = 0 is the r -> 0+ limit (|2> input)";
  curve.s_minus.resize(n);
  curve.s_plus.resize(n);
  curve.s_tmsv.resize(n);
  curve.leakage.resize(n);

  const FockVector peak_plus = make_bs_output_state(r_grid.back(), Sign::plus, cutoff);
  double worst = peak_plus.discarded_weight();
  if (r_grid.back() > 0) worst = std::max(worst, make_bs_output_state(r_grid.back(), Sign::minus, cutoff).discarded_weight());
  if (worst > kEntropyLeakageLimit) {
    throw TruncationError("truncation leakage " + std::to_string(worst) + " at r = " + std::to_string(r_grid.back()) +
                          " exceeds 1e-6 at cutoff " + std::to_string(cutoff));
  }

  parallel_for(n, threads, [&](std::size_t i) {
    const double r = r_grid[i];
    const FockVector plus = make_bs_output_state(r, Sign::plus, cutoff);
    curve.s_plus[i] = entanglement_entropy(plus);
    double leak = plus.discarded_weight();
    if (r > 0) {
      const FockVector minus = make_bs_output_state(r, Sign::minus, cutoff);
      curve.s_minus[i] = entanglement_entropy(minus);
      leak = std::max(leak, minus.discarded_weight());
    } else {
      curve.s_minus[i] = minus_entropy_limit(cutoff);
    }
    curve.s_tmsv[i] = tmsv_entropy(std::tanh(r));
    curve.leakage[i] = leak;
  });
  return curve;
}

double entropy_crossover(double lo, double hi, int cutoff, double tolerance) {
  if (!(lo > 0) || !(hi > lo)) throw std::invalid_argument("crossover bracket must satisfy 0 < lo < hi");
  auto gap = [cutoff](double r) {
    return entanglement_entropy(make_bs_output_state(r, Sign::minus, cutoff)) - tmsv_entropy(std::tanh(r));
  };
  double f_lo = gap(lo);
  const double f_hi = gap(hi);
  if ((f_lo > 0) == (f_hi > 0)) throw std::domain_error("entropy difference does not change sign in the bracket");
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = gap(mid);
    if ((f_mid > 0) == (f_lo > 0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace sqcat
