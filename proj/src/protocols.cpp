#include "sqcat/protocols.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sqcat {

namespace {

constexpr double kProbeLeakage = 1e-8;

}  // namespace

FockVector cross_kerr_evolve(const FockVector& state1, std::complex<double> alpha, double kappa_tau, int probe_cutoff,
                             const std::string& probe_id) {
  if (state1.layout().size() != 1) throw LayoutError("cross-Kerr input must be a single-mode state");
  if (!std::isfinite(kappa_tau)) throw std::invalid_argument("kappa*tau must be finite");
  const int cutoff1 = state1.layout().cutoff(0);
  const ModeLayout layout = state1.layout().concat(ModeLayout::single(probe_id, probe_cutoff));
  ComplexVector<double> amps = ComplexVector<double>::Zero(static_cast<Eigen::Index>(layout.dimension()));
  double probe_loss = 0;
  const Eigen::Index width = probe_cutoff + 1;
  for (int n = 0; n <= cutoff1; ++n) {
    const auto cn = state1.amplitudes()(n);
    if (cn == std::complex<double>(0)) continue;
    const auto probe = coherent_state<double>(alpha * std::polar(1.0, -kappa_tau * n), probe_cutoff, probe_id);
    probe_loss = std::max(probe_loss, probe.discarded_weight());
    amps.segment(n * width, width) = cn * probe.amplitudes();
  }
  if (probe_loss > kProbeLeakage) {
    throw TruncationError("probe cutoff " + std::to_string(probe_cutoff) + " loses " + std::to_string(probe_loss) +
                          " of the coherent state");
  }
  return FockVector(layout, std::move(amps), state1.discarded_weight() + probe_loss);
}

HeraldResult cross_kerr_herald(const FockVector& state12, double alpha, Sign sign, const std::string& probe_id) {
  if (!(alpha > 0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("probe amplitude must be real and positive; alpha = 0 cannot tell the branches apart");
  }
  const int cutoff = state12.layout().cutoff(state12.layout().position(probe_id));
  const double signed_alpha = sign == Sign::plus ? alpha : -alpha;
  const auto probe = coherent_state<double>({signed_alpha, 0.0}, cutoff, probe_id);
  auto result = project_onto(state12, probe_id, probe);
  if (!result.possible()) throw ImpossibleOutcome("cross-Kerr herald outcome has zero probability");
  result.diagnostics.emplace_back("probe_overlap", std::exp(-2.0 * alpha * alpha));
  result.diagnostics.emplace_back("probe_leakage", probe.discarded_weight());
  result.note = std::string("projection onto |") + (sign == Sign::plus ? "+" : "-") + "alpha>";
  return result;
}

std::array<std::complex<double>, 4> elementary_symmetric(const std::array<std::complex<double>, 4>& x) {
  // Coefficients of prod (1 + x_j t).
  std::array<std::complex<double>, 5> e{1.0, 0.0, 0.0, 0.0, 0.0};
  for (const auto& xj : x) {
    for (int k = 4; k >= 1; --k) e[k] += xj * e[k - 1];
  }
  return {e[1], e[2], e[3], e[4]};
}

SchemeParams solve_displacements(double r, double q) {
  if (!(r > 0) || !std::isfinite(r)) {
    throw std::invalid_argument("solve_displacements needs r > 0 (c = 6^{-1/4} tanh^{-1/2} r diverges at r = 0)");
  }
  if (!(q > 0 && q < 1)) throw std::invalid_argument("solve_displacements needs 0 < q < 1");
  const double t = std::tanh(r);
  SchemeParams p;
  p.r = r;
  p.q = q;
  p.c = std::pow(6.0, -0.25) / std::sqrt(t);
  for (int j = 0; j < 4; ++j) p.alphas[j] = std::polar(p.c * q, (2 * j + 1) * std::numbers::pi / 4);

  const auto e = elementary_symmetric(p.alphas);
  const double product = std::pow(q, 4) / (6.0 * t * t);
  const double scale = std::max(1.0, product);
  if (std::abs(e[0]) > 1e-12 * scale || std::abs(e[1]) > 1e-12 * scale || std::abs(e[2]) > 1e-12 * scale ||
      std::abs(e[3] - product) > 1e-12 * scale) {
    throw std::logic_error("displacements violate the symmetric-function conditions");
  }
  const double c4_over_c0 = std::sqrt(3.0) / (2.0 * std::sqrt(2.0)) * t * t;
  p.transmittance = analytic_minus_transmittance(c4_over_c0, r);
  return p;
}

Matrix2 scheme_splitter(int ancilla) {
  const double s3 = std::sqrt(3.0);
  Matrix2 m;
  switch (ancilla) {
    case 1:
      m << s3 / 2, -0.5, 0.5, s3 / 2;
      break;
    case 2:
      m << std::sqrt(2.0 / 3.0), -1 / s3, 1 / s3, std::sqrt(2.0 / 3.0);
      break;
    case 3:
      m << 1 / std::sqrt(2.0), -1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
      break;
    default:
      throw std::invalid_argument("scheme splitters couple mode 4 with ancilla 1, 2 or 3");
  }
  return m;
}

HeraldResult run_plus_scheme(const SchemeParams& params, const SchemeConfig& config) {
  if (config.cutoff < 1) throw std::invalid_argument("scheme cutoff must allow single-photon clicks");
  const int k = config.cutoff;
  const FockVector ancillas(ModeLayout({Mode{"1", k}, Mode{"2", k}, Mode{"3", k}}));
  FockVector state = tensor(ancillas, two_mode_squeezed_vacuum<double>(params.q, k, "4", "A"));

  for (int j = 1; j <= 3; ++j) {
    const auto b = beam_splitter_matrix<double>(scheme_splitter(j), k, k, std::to_string(j), "4");
    state = apply(b, state);
  }
  for (int j = 0; j < 4; ++j) {
    state = apply(displacement_matrix<double>(params.alphas[j], k, config.displacement, std::to_string(j + 1)), state);
  }
  auto result = project_fock(state, {{"1", 1}, {"2", 1}, {"3", 1}, {"4", 1}});
  result.diagnostics.emplace_back("cutoff", k);
  result.diagnostics.emplace_back("tmsv_truncation", state.discarded_weight());
  result.note = std::string("four-click herald, displacement ") + to_string(config.displacement);
  return result;
}

double fidelity(const FockVector& state, const FockVector& target) {
  const auto amp = (state.layout().size() == 1 && target.layout().size() == 1) ? overlap_common(target, state)
                                                                                 : overlap(target, state);
  return std::norm(amp);
}

double fidelity(const HeraldResult& heralded, const FockVector& target) {
  return fidelity(heralded.heralded(), target);
}

FockVector perturbative_plus_state(const SchemeParams& params, const std::string& id) {
  const auto e = elementary_symmetric(params.alphas);
  // e_{4-n}: n = 0 -> e4, ..., n = 3 -> e1, n = 4 -> 1
  const std::complex<double> sym[5] = {e[3], e[2], e[1], e[0], 1.0};
  ComplexVector<double> amps(5);
  const double prefactor = std::sqrt(1 - params.q * params.q);
  for (int n = 0; n <= 4; ++n) {
    amps(n) = prefactor * std::pow(params.q, n) * std::sqrt(std::tgamma(n + 1.0)) * std::pow(0.5, n) * sym[n];
  }
  return FockVector(ModeLayout::single(id, 4), std::move(amps));
}

Matrix2 conversion_splitter(double transmittance) {
  if (!(transmittance > 0 && transmittance < 1)) throw std::invalid_argument("transmittance must lie in (0, 1)");
  const double t = std::sqrt(transmittance);
  const double r = std::sqrt(1 - transmittance);
  Matrix2 m;
  m << t, r, -r, t;
  return m;
}

HeraldResult convert_to_minus(const FockVector& state_a, double transmittance) {
  if (state_a.layout().size() != 1) throw LayoutError("conversion input must be a single-mode state");
  const Matrix2 m = conversion_splitter(transmittance);
  const std::string id = state_a.layout().mode(0).id;
  const std::string ancilla = id == "b" ? "b'" : "b";
  const int k = state_a.layout().cutoff(0);
  const auto input = tensor(state_a, FockVector::basis_state(ModeLayout::single(ancilla, 2), {2}));
  const auto mixed = apply_beam_splitter(input, m, id, ancilla, k + 2, k + 2);
  auto result = project_fock(mixed, {{ancilla, 0}});
  if (!result.possible()) throw ImpossibleOutcome("no-click outcome on the conversion ancilla has zero probability");
  result.diagnostics.emplace_back("transmittance", transmittance);
  result.note = "ancilla |2> on B', no click";
  return result;
}

double analytic_minus_transmittance(double c4_over_c0, double r) {
  const double t = std::tanh(r);
  const double t_squared = (std::sqrt(10.0) / 4.0) * t * t / (std::sqrt(15.0) * c4_over_c0);
  if (!(t_squared > 0 && t_squared < 1)) {
    throw std::domain_error("no transmittance in (0, 1) matches the |r;-> amplitude ratio");
  }
  return std::sqrt(t_squared);
}

TransmittanceScan scan_minus_transmittance(const FockVector& state_a, const FockVector& target, double step) {
  if (!(step > 0 && step < 0.5)) throw std::invalid_argument("scan step must lie in (0, 0.5)");
  TransmittanceScan best;
  const int count = static_cast<int>(std::floor(1.0 / step + 1e-9));
  for (int i = 1; i < count; ++i) {
    const double t = i * step;
    const auto converted = convert_to_minus(state_a, t);
    const double f = fidelity(converted, target);
    if (f > best.fidelity) best = {t, f};
  }
  return best;
}

}  // namespace sqcat
