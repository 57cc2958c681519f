#pragma once

#include <array>
#include <complex>
#include <string>

#include "sqcat/fock.hpp"

namespace sqcat {

// ---- Ideal cross-Kerr generation ------------------------------------------

/// sum_n c_n |n>_1 |alpha e^{-i kappa_tau n}>_probe for a single-mode input.
/// Throws TruncationError when the probe cutoff cannot hold |alpha> to 1e-8.
FockVector cross_kerr_evolve(const FockVector& state1, std::complex<double> alpha, double kappa_tau, int probe_cutoff,
                             const std::string& probe_id = "2");

/// Ideal discrimination of |+alpha> / |-alpha> on the probe, modeled as a
/// projection onto the coherent state. `alpha` must be real and positive.
/// Diagnostics: "probe_overlap" = |<alpha|-alpha>| = e^{-2 alpha^2}.
HeraldResult cross_kerr_herald(const FockVector& state12, double alpha, Sign sign, const std::string& probe_id = "2");

// ---- Four-detector heralded scheme ----------------------------------------

/// Parameters of the linear-optical |r;+> source.
struct SchemeParams {
  double r = 0;   // target squeezing
  double q = 0;   // resource two-mode squeezing, q = tanh s
  double c = 0;   // 6^{-1/4} tanh^{-1/2} r
  std::array<std::complex<double>, 4> alphas{};
  double transmittance = 0;  // beam splitter used for the |r;-> conversion
};

/// Elementary symmetric polynomials e1..e4 of the four displacements.
std::array<std::complex<double>, 4> elementary_symmetric(const std::array<std::complex<double>, 4>& x);

/// Displacements alpha_j = c q e^{i theta_j}, theta in {pi/4, 3pi/4, 5pi/4, 7pi/4}:
/// the roots of x^4 + q^4/(6 tanh^2 r) = 0, which zero e1, e2, e3.
SchemeParams solve_displacements(double r, double q);

/// r range on which c stays within [3/4, 5/4].
inline constexpr double kSchemeRMin = 0.2675;
inline constexpr double kSchemeRMax = 0.9197;

struct SchemeConfig {
  int cutoff = 5;  // per mode; six-term TMSV and ancilla space
  DisplacementMode displacement = DisplacementMode::series6;
};

/// Builds D1 D2 D3 D4 B34 B24 B14 (|000>_123 TMSV_4A), projects modes 1-4 onto
/// |1> each and returns the herald probability with the mode-A state.
HeraldResult run_plus_scheme(const SchemeParams& params, const SchemeConfig& config = {});

/// Heisenberg matrices of the three scheme beam splitters, (a_j', a_4')^T = M (a_j, a_4)^T.
Matrix2 scheme_splitter(int ancilla);

/// |<target|state>|^2 for the heralded pure state. Single-mode states with
/// different cutoffs are compared over the common levels.
double fidelity(const HeraldResult& heralded, const FockVector& target);
double fidelity(const FockVector& state, const FockVector& target);

/// Leading-order heralded mode-A amplitudes: coefficient of |n> is
/// sqrt(1-q^2) q^n sqrt(n!) 2^{-n} e_{4-n}(alpha) for n = 0..4 (unnormalized).
FockVector perturbative_plus_state(const SchemeParams& params, const std::string& id = "A");

// ---- |r;+> -> |r;-> conversion --------------------------------------------

/// B' of transmittance T: a^dag -> sqrt(T) a^dag + sqrt(1-T) b^dag,
/// b^dag -> -sqrt(1-T) a^dag + sqrt(T) b^dag.
Matrix2 conversion_splitter(double transmittance);

/// Mixes the input with |2>_b on B', projects b onto |0>. The result lives on
/// the input mode with the cutoff raised by 2, so nothing is truncated.
HeraldResult convert_to_minus(const FockVector& state_a, double transmittance);

/// T at which c0|0> + c4|4> converts to amplitudes on |2>,|6> in the ratio of
/// |r;->: sqrt(15) T^2 (c4/c0) = (sqrt(10)/4) tanh^2 r.
double analytic_minus_transmittance(double c4_over_c0, double r);

struct TransmittanceScan {
  double transmittance = 0;
  double fidelity = 0;
};

/// Grid search over T in (0, 1) maximizing fidelity of convert_to_minus(state)
/// with `target`.
TransmittanceScan scan_minus_transmittance(const FockVector& state_a, const FockVector& target, double step = 1e-3);

}  // namespace sqcat
