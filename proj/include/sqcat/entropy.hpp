#pragma once

#include <string>
#include <vector>

#include "sqcat/fock.hpp"

namespace sqcat {

/// 50:50 splitter for the entanglement study: a^dag -> (a^dag - b^dag)/sqrt2,
/// b^dag -> (a^dag + b^dag)/sqrt2.
Matrix2 balanced_splitter();

/// |r;+-> on mode "a" and vacuum on "b" through balanced_splitter(), kept up to
/// `cutoff` photons per mode. The input is built at 2*cutoff so only the
/// output truncation loses weight; the loss is recorded as discarded weight and
/// the result is renormalized. r = 0 with Sign::plus gives |0,0>.
FockVector make_bs_output_state(double r, Sign sign, int cutoff);

/// The same state assembled from squeezers:
/// N^{-1/2} [S_a(r/2) S_b(r/2) S_ab(-r/2) +- S_a(-r/2) S_b(-r/2) S_ab(r/2)] |0,0>.
/// Squeezers act at a padded working cutoff before truncating to `cutoff`.
FockVector make_bs_output_state_from_squeezers(double r, Sign sign, int cutoff);

/// Squared Schmidt coefficients of a two-mode pure state, descending.
/// Singular values below 1e-12 are dropped.
Eigen::VectorXd schmidt_weights(const FockVector& state);

/// Entanglement entropy in bits. Throws std::invalid_argument when the norm is
/// off by more than 1e-6.
double entanglement_entropy(const FockVector& state);

/// -sum (1-q^2) q^{2n} log2[(1-q^2) q^{2n}], summed until terms vanish.
double tmsv_entropy(double q);

/// S(r -> 0+) of the minus output: |r;-> tends to |2>.
double minus_entropy_limit(int cutoff);

struct EntropyCurve {
  std::vector<double> r_values;
  std::vector<double> s_minus;
  std::vector<double> s_plus;
  std::vector<double> s_tmsv;
  std::vector<double> leakage;  // worst discarded weight of the two output states
  std::string mapping_note;
  int cutoff = 0;
};

inline constexpr double kEntropyLeakageLimit = 1e-6;

/// Entropies on a sorted grid within [0, 1.5], points spread over `threads`.
/// Throws TruncationError when the leakage at the largest r exceeds 1e-6.
EntropyCurve entropy_curves(const std::vector<double>& r_grid, int cutoff, unsigned threads = 1);

/// Root of S_minus(r) - S_tmsv(tanh r) in [lo, hi] by bisection to `tolerance`.
/// Throws std::domain_error if the difference does not change sign.
double entropy_crossover(double lo, double hi, int cutoff, double tolerance = 1e-7);

}  // namespace sqcat
