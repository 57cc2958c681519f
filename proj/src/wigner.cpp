#include "sqcat/wigner.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sqcat/parallel.hpp"

namespace sqcat {

namespace {

constexpr double kImaginaryResidue = 1e-10;

}  // namespace

std::size_t GridAxis::count() const {
  validate();
  return static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
}

void GridAxis::validate() const {
  if (!std::isfinite(min) || !std::isfinite(max) || !std::isfinite(step)) {
    throw std::invalid_argument("grid axis must be finite");
  }
  if (!(step > 0)) throw std::invalid_argument("grid step must be positive");
  if (max < min) throw std::invalid_argument("grid range is empty");
}

int WignerEvaluator::working_cutoff_for(int cutoff, double max_abs_alpha) {
  const double reach = std::sqrt(static_cast<double>(cutoff) + 1.0) + max_abs_alpha + 8.0;
  return std::max(cutoff + 24, static_cast<int>(std::ceil(reach * reach)));
}

WignerEvaluator::WignerEvaluator(const FockVector& state, double max_abs_alpha) {
  if (state.layout().size() != 1) throw LayoutError("Wigner functions here are single-mode only");
  if (!(max_abs_alpha >= 0) || !std::isfinite(max_abs_alpha)) throw std::invalid_argument("bad |alpha| bound");
  if (!state.is_normalized(1e-8)) throw std::invalid_argument("Wigner evaluation needs a normalized state");
  cutoff_ = state.layout().cutoff(0);
  max_abs_alpha_ = max_abs_alpha;
  working_ = working_cutoff_for(cutoff_, max_abs_alpha);
  psi_ = state.amplitudes();

  const Eigen::Index n = working_ + 1;
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n - 1);
  for (Eigen::Index k = 0; k < n - 1; ++k) sub(k) = std::sqrt(static_cast<double>(k + 1));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  eig.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (eig.info() != Eigen::Success) throw std::runtime_error("quadrature eigendecomposition failed");
  lambda_ = eig.eigenvalues();
  const Eigen::MatrixXd& u = eig.eigenvectors();
  top_ = u.topRows(cutoff_ + 1);

  pair_parity_.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index partner = n - 1 - k;
    double p = 0;
    for (Eigen::Index m = 0; m < n; ++m) p += ((m % 2) ? -1.0 : 1.0) * u(m, partner) * u(m, k);
    if (std::abs(std::abs(p) - 1.0) > 1e-8 || std::abs(lambda_(k) + lambda_(partner)) > 1e-8) {
      throw std::runtime_error("parity does not pair the quadrature eigenvectors");
    }
    pair_parity_(k) = p;
  }
}

Eigen::VectorXcd WignerEvaluator::eigen_coordinates(double theta) const {
  const double shift = theta + std::numbers::pi / 2;
  Eigen::VectorXd re(cutoff_ + 1);
  Eigen::VectorXd im(cutoff_ + 1);
  for (int k = 0; k <= cutoff_; ++k) {
    const std::complex<double> v = psi_(k) * std::polar(1.0, -shift * k);
    re(k) = v.real();
    im(k) = v.imag();
  }
  Eigen::VectorXcd x(lambda_.size());
  x.real() = top_.transpose() * re;
  x.imag() = top_.transpose() * im;
  return x;
}

double WignerEvaluator::value(std::complex<double> alpha) const {
  const double m = std::abs(alpha);
  if (m > max_abs_alpha_ * (1 + 1e-12) + 1e-12) {
    throw std::out_of_range("|alpha| exceeds the bound this evaluator was built for");
  }
  const double theta = m > 0 ? std::arg(-alpha) : 0.0;
  const Eigen::VectorXcd x = eigen_coordinates(theta);
  const Eigen::Index n = x.size();
  std::complex<double> sum = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    sum += std::conj(x(n - 1 - k)) * pair_parity_(k) * x(k) * std::polar(1.0, -2.0 * m * lambda_(k));
  }
  if (std::abs(sum.imag()) > kImaginaryResidue) {
    throw std::runtime_error("Wigner value has an imaginary residue of " + std::to_string(sum.imag()));
  }
  return 2.0 / std::numbers::pi * sum.real();
}

std::complex<double> WignerEvaluator::characteristic(std::complex<double> xi) const {
  const double m = std::abs(xi);
  if (m > max_abs_alpha_ * (1 + 1e-12) + 1e-12) {
    throw std::out_of_range("|xi| exceeds the bound this evaluator was built for");
  }
  const Eigen::VectorXcd x = eigen_coordinates(m > 0 ? std::arg(xi) : 0.0);
  std::complex<double> sum = 0;
  for (Eigen::Index k = 0; k < x.size(); ++k) sum += std::norm(x(k)) * std::polar(1.0, -m * lambda_(k));
  return sum;
}

double wigner_value(const FockVector& state, std::complex<double> alpha) {
  return WignerEvaluator(state, std::abs(alpha))(alpha);
}

double coherent_cat_wigner_closed_form(double a, std::complex<double> alpha) {
  if (!(a != 0) || !std::isfinite(a)) throw std::invalid_argument("cat amplitude must be finite and nonzero");
  const double x = alpha.real();
  const double y = alpha.imag();
  const double to_plus = (x - a) * (x - a) + y * y;
  const double to_minus = (x + a) * (x + a) + y * y;
  const double bracket = std::exp(-2 * to_plus) + std::exp(-2 * to_minus) -
                         2 * std::exp(-2 * std::norm(alpha)) * std::cos(4 * a * y);
  return bracket / (std::numbers::pi * (1 - std::exp(-2 * a * a)));
}

double squeezed_vacuum_wigner_closed_form(double r, std::complex<double> alpha) {
  const double x = alpha.real();
  const double y = alpha.imag();
  return 2 / std::numbers::pi * std::exp(-2 * (y * y * std::exp(-2 * r) + x * x * std::exp(2 * r)));
}

double wigner_from_characteristic(const FockVector& state, std::complex<double> alpha, double half_width,
                                  double step) {
  if (!(half_width > 0) || !(step > 0)) throw std::invalid_argument("bad quadrature window");
  const WignerEvaluator eval(state, half_width * std::numbers::sqrt2);
  const int n = static_cast<int>(std::round(half_width / step));
  std::complex<double> sum = 0;
  for (int i = -n; i <= n; ++i) {
    const double wi = (std::abs(i) == n) ? 0.5 : 1.0;
    for (int j = -n; j <= n; ++j) {
      const double wj = (std::abs(j) == n) ? 0.5 : 1.0;
      const std::complex<double> xi(i * step, j * step);
      const std::complex<double> kernel = std::exp(alpha * std::conj(xi) - std::conj(alpha) * xi);
      sum += wi * wj * eval.characteristic(xi) * kernel;
    }
  }
  return (sum * step * step).real() / (std::numbers::pi * std::numbers::pi);
}

WignerGrid wigner_grid(const FockVector& state, const GridAxis& re, const GridAxis& im, std::string state_descriptor,
                       unsigned threads) {
  const std::size_t nr = re.count();
  const std::size_t ni = im.count();
  const double reach_re = std::max(std::abs(re.min), std::abs(re.at(nr - 1)));
  const double reach_im = std::max(std::abs(im.min), std::abs(im.at(ni - 1)));
  const WignerEvaluator eval(state, std::hypot(reach_re, reach_im));

  WignerGrid grid;
  grid.re = re;
  grid.im = im;
  grid.state_descriptor = std::move(state_descriptor);
  grid.cutoff = eval.cutoff();
  grid.working_cutoff = eval.working_cutoff();
  grid.values.resize(static_cast<Eigen::Index>(nr), static_cast<Eigen::Index>(ni));
  parallel_for(nr * ni, threads, [&](std::size_t idx) {
    const std::size_t i = idx / ni;
    const std::size_t j = idx % ni;
    grid.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = eval({re.at(i), im.at(j)});
  });
  return grid;
}

}  // namespace sqcat
