#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "sqcat/fock.hpp"

namespace sqcat {

/// Evenly spaced axis min, min + step, ..., up to max (inclusive within 1e-9 step).
struct GridAxis {
  double min = 0;
  double max = 0;
  double step = 0;

  std::size_t count() const;
  double at(std::size_t i) const { return min + static_cast<double>(i) * step; }
  void validate() const;  // throws std::invalid_argument for empty or inverted ranges
};

/// Wigner function of a fixed single-mode pure state.
///
/// Evaluates W(alpha) = (2/pi) <psi| D(alpha) P D(-alpha) |psi> with P the
/// photon-number parity. The displacement is the exponential of the generator
/// truncated at a working cutoff padded well beyond the state's own cutoff,
/// so results are those of the truncated state itself. The generator
/// i(a^dag - a) is diagonalized once; parity maps its eigenvectors onto each
/// other pairwise, which reduces a point evaluation to O(working * cutoff).
class WignerEvaluator {
 public:
  /// `max_abs_alpha` bounds |alpha| for later calls and fixes the padding.
  WignerEvaluator(const FockVector& state, double max_abs_alpha);

  double operator()(std::complex<double> alpha) const { return value(alpha); }
  double value(std::complex<double> alpha) const;
  /// chi(xi) = <psi| D(xi) |psi>
  std::complex<double> characteristic(std::complex<double> xi) const;

  int cutoff() const { return cutoff_; }
  int working_cutoff() const { return working_; }
  double max_abs_alpha() const { return max_abs_alpha_; }

  static int working_cutoff_for(int cutoff, double max_abs_alpha);

 private:
  // Coordinates of R(-theta - pi/2) psi in the eigenbasis of a + a^dag.
  Eigen::VectorXcd eigen_coordinates(double theta) const;

  Eigen::VectorXcd psi_;
  Eigen::MatrixXd top_;     // rows 0..cutoff of the eigenvector matrix of a + a^dag
  Eigen::VectorXd lambda_;  // ascending eigenvalues
  Eigen::VectorXd pair_parity_;  // <u_{sigma(k)}| P |u_k> = +-1 with sigma(k) = n - 1 - k
  int cutoff_ = 0;
  int working_ = 0;
  double max_abs_alpha_ = 0;
};

/// W(alpha) of a single-mode state (builds a one-off evaluator).
double wigner_value(const FockVector& state, std::complex<double> alpha);

/// Closed-form Wigner function of (|a> - |-a>)/sqrt(2(1 - e^{-2a^2})) for real a:
/// [e^{-2|alpha-a|^2} + e^{-2|alpha+a|^2} - 2 e^{-2|alpha|^2} cos(4 a alpha_i)] / (pi (1 - e^{-2a^2})).
double coherent_cat_wigner_closed_form(double a, std::complex<double> alpha);

/// (2/pi) exp[-2(alpha_i^2 e^{-2r} + alpha_r^2 e^{2r})], the squeezed vacuum |r>.
double squeezed_vacuum_wigner_closed_form(double r, std::complex<double> alpha);

/// Slow cross-check: (1/pi^2) times the integral of chi(xi) exp(alpha xi* - alpha* xi)
/// over the square |Re xi|, |Im xi| <= half_width, trapezoid rule with `step`.
double wigner_from_characteristic(const FockVector& state, std::complex<double> alpha, double half_width = 8.0,
                                  double step = 0.05);

struct WignerGrid {
  GridAxis re;
  GridAxis im;
  Eigen::MatrixXd values;  // values(i, j) = W(re.at(i) + i im.at(j))
  std::string state_descriptor;
  int cutoff = 0;
  int working_cutoff = 0;

  double min() const { return values.minCoeff(); }
  double max() const { return values.maxCoeff(); }
  double max_abs() const { return values.cwiseAbs().maxCoeff(); }
  /// Riemann sum of W over the grid cells.
  double integral() const { return values.sum() * re.step * im.step; }
};

/// Evaluates W on every grid point, spread over `threads` workers. Each cell
/// is computed independently, so the result does not depend on the worker count.
WignerGrid wigner_grid(const FockVector& state, const GridAxis& re, const GridAxis& im,
                       std::string state_descriptor = {}, unsigned threads = 1);

}  // namespace sqcat
