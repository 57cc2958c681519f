#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "sqcat/fock_vector.hpp"

namespace sqcat {

/// Which superposition of two opposite components: |x> + |-x> or |x> - |-x>.
enum class Sign { plus, minus };

inline const char* to_string(Sign s) { return s == Sign::plus ? "plus" : "minus"; }

/// Squeezing zeta = r e^{i phi}. For a two-mode squeezer of parameter s the
/// matching state coefficient is q = tanh s.
struct SqueezeParams {
  double r = 0;
  double phi = 0;

  std::complex<double> zeta() const { return {r * std::cos(phi), r * std::sin(phi)}; }
  double q() const { return std::tanh(r); }
  static SqueezeParams from_q(double q) {
    if (!(std::abs(q) < 1)) throw std::invalid_argument("q must lie in (-1, 1)");
    return {std::atanh(q), 0};
  }
};

/// Pre-normalization truncation loss above which results deserve a warning.
inline constexpr double kLeakageWarning = 1e-6;

template <typename Real>
bool leakage_warning(const BasicFockVector<Real>& state) {
  return state.discarded_weight() > static_cast<Real>(kLeakageWarning);
}

namespace detail {

template <typename Real>
Real log_cosh(Real x) {
  const Real ax = std::abs(x);
  return ax + std::log1p(std::exp(Real(-2) * ax)) - std::log(Real(2));
}

/// Exact (untruncated) squeezed-vacuum amplitudes on levels 0..cutoff.
template <typename Real>
ComplexVector<Real> squeezed_amplitudes(Real r, Real phi, int cutoff) {
  ComplexVector<Real> c = ComplexVector<Real>::Zero(cutoff + 1);
  const Real t = std::tanh(r);
  const Real log_norm = Real(-0.5) * log_cosh(r);
  // (-e^{i phi} tanh r)^n = |tanh r|^n * base^n
  const std::complex<Real> base = -std::complex<Real>(std::cos(phi), std::sin(phi)) * (t < 0 ? Real(-1) : Real(1));
  c(0) = std::exp(log_norm);
  if (t == Real(0)) return c;
  const Real log_t = std::log(std::abs(t));
  std::complex<Real> phase(1);
  for (int n = 1; 2 * n <= cutoff; ++n) {
    phase *= base;
    const Real log_mag = log_norm + n * log_t + Real(0.5) * std::lgamma(Real(2 * n + 1)) - n * std::log(Real(2)) -
                         std::lgamma(Real(n + 1));
    c(2 * n) = std::exp(log_mag) * phase;
  }
  return c;
}

template <typename Real>
BasicFockVector<Real> renormalized(ModeLayout layout, ComplexVector<Real> amps, Real exact_norm_squared) {
  const Real kept = amps.squaredNorm();
  if (!(kept > Real(0))) throw TruncationError("truncation removed the whole state");
  const Real discarded = std::max(Real(0), Real(1) - kept / exact_norm_squared);
  amps /= std::sqrt(kept);
  return BasicFockVector<Real>(std::move(layout), std::move(amps), discarded);
}

}  // namespace detail

/// Single-mode squeezed vacuum S(zeta)|0>, zeta = r e^{i phi}:
/// c_{2n} = (cosh r)^{-1/2} (-e^{i phi} tanh r)^n sqrt((2n)!) / (2^n n!), odd levels zero.
/// Renormalized over the truncation; the lost weight is the discarded weight.
template <typename Real = double>
BasicFockVector<Real> squeezed_vacuum(Real r, Real phi, int cutoff, std::string id = "a") {
  if (!std::isfinite(r) || !std::isfinite(phi)) throw std::invalid_argument("squeezing must be finite");
  if (cutoff < 0) throw std::invalid_argument("negative cutoff");
  return detail::renormalized<Real>(ModeLayout::single(std::move(id), cutoff),
                                    detail::squeezed_amplitudes<Real>(r, phi, cutoff), Real(1));
}

/// sqrt(1-q^2) sum_{n<=cutoff} q^n |n, n>, renormalized.
template <typename Real = double>
BasicFockVector<Real> two_mode_squeezed_vacuum(Real q, int cutoff, std::string id_a = "a", std::string id_b = "b") {
  if (!(std::abs(q) < Real(1))) throw std::invalid_argument("two-mode squeezing needs |q| < 1");
  if (cutoff < 0) throw std::invalid_argument("negative cutoff");
  ModeLayout layout({Mode{std::move(id_a), cutoff}, Mode{std::move(id_b), cutoff}});
  ComplexVector<Real> amps = ComplexVector<Real>::Zero(static_cast<Eigen::Index>(layout.dimension()));
  const Real prefactor = std::sqrt(Real(1) - q * q);
  Real qn(1);
  for (int n = 0; n <= cutoff; ++n, qn *= q) amps(n * (cutoff + 1) + n) = prefactor * qn;
  return detail::renormalized<Real>(std::move(layout), std::move(amps), Real(1));
}

/// Coherent state |alpha>, renormalized over the truncation.
template <typename Real = double>
BasicFockVector<Real> coherent_state(std::complex<Real> alpha, int cutoff, std::string id = "a") {
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) throw std::invalid_argument("non-finite alpha");
  if (cutoff < 0) throw std::invalid_argument("negative cutoff");
  ComplexVector<Real> amps = ComplexVector<Real>::Zero(cutoff + 1);
  const Real mag = std::abs(alpha);
  const Real half = Real(-0.5) * mag * mag;
  amps(0) = std::exp(half);
  if (mag > Real(0)) {
    const std::complex<Real> unit = alpha / mag;
    std::complex<Real> phase(1);
    for (int n = 1; n <= cutoff; ++n) {
      phase *= unit;
      amps(n) = std::exp(half + n * std::log(mag) - Real(0.5) * std::lgamma(Real(n + 1))) * phase;
    }
  }
  return detail::renormalized<Real>(ModeLayout::single(std::move(id), cutoff), std::move(amps), Real(1));
}

/// Normalization N_+-(r) = 2[1 +- (cosh r sqrt(1 + tanh^2 r))^{-1}] of |r> +- |-r>.
template <typename Real>
Real squeezed_cat_norm(Real r, Sign sign) {
  const Real t = std::tanh(r);
  const Real cross = Real(1) / (std::cosh(r) * std::sqrt(Real(1) + t * t));
  return Real(2) * (sign == Sign::plus ? Real(1) + cross : Real(1) - cross);
}

/// |r;+-> = N_+-(r)^{-1/2} (|r> +- |-r>) for real r. Supported on n = 0 mod 4
/// (plus) or n = 2 mod 4 (minus). The minus state does not exist at r = 0.
template <typename Real = double>
BasicFockVector<Real> squeezed_cat(Real r, Sign sign, int cutoff, std::string id = "a") {
  if (!std::isfinite(r)) throw std::invalid_argument("squeezing must be finite");
  if (sign == Sign::minus && r == Real(0)) throw std::invalid_argument("|r;-> is undefined at r = 0");
  const Real s = sign == Sign::plus ? Real(1) : Real(-1);
  ComplexVector<Real> amps =
      detail::squeezed_amplitudes<Real>(r, Real(0), cutoff) + s * detail::squeezed_amplitudes<Real>(-r, Real(0), cutoff);
  return detail::renormalized<Real>(ModeLayout::single(std::move(id), cutoff), std::move(amps),
                                    squeezed_cat_norm(r, sign));
}

/// Coherent-state cat (|a> +- |-a>) / sqrt(2(1 +- e^{-2|a|^2})).
template <typename Real = double>
BasicFockVector<Real> coherent_cat(std::complex<Real> a, Sign sign, int cutoff, std::string id = "a") {
  if (sign == Sign::minus && a == std::complex<Real>(0)) throw std::invalid_argument("odd cat needs a != 0");
  const Real s = sign == Sign::plus ? Real(1) : Real(-1);
  ComplexVector<Real> amps = ComplexVector<Real>::Zero(cutoff + 1);
  const Real mag = std::abs(a);
  for (int n = 0; n <= cutoff; ++n) {
    if (n % 2 == (sign == Sign::plus ? 1 : 0)) continue;
    const std::complex<Real> phase = mag > Real(0) ? std::pow(a / mag, n) : std::complex<Real>(n == 0 ? 1 : 0);
    const Real log_mag =
        Real(-0.5) * mag * mag + (n > 0 ? n * std::log(mag) : Real(0)) - Real(0.5) * std::lgamma(Real(n + 1));
    amps(n) = Real(2) * std::exp(log_mag) * phase;
  }
  const Real norm = Real(2) * (Real(1) + s * std::exp(Real(-2) * mag * mag));
  return detail::renormalized<Real>(ModeLayout::single(std::move(id), cutoff), std::move(amps), norm);
}

}  // namespace sqcat
