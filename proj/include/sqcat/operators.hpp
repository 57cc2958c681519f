#pragma once

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sqcat/fock_vector.hpp"

namespace sqcat {

enum class DisplacementMode {
  exact,    ///< exp(alpha a^dag - alpha* a) of the truncated generator (unitary)
  series6,  ///< sum_{n=0}^{5} (alpha a^dag - alpha* a)^n / n!, not unitary
};

inline const char* to_string(DisplacementMode mode) {
  return mode == DisplacementMode::exact ? "exact" : "series6";
}

/// Dense matrix acting on one or two named modes.
///
/// `targets` holds the ids and cutoffs of the modes acted on; the matrix is
/// indexed row-major over them, like a ModeLayout. `retained` lists the local
/// basis indices on which the operator is exactly unitary (empty: all of them);
/// a beam splitter, for instance, is lossless only on photon-number sectors
/// that fit in both cutoffs.
template <typename Real>
class BasicOperatorMatrix {
 public:
  using Matrix = ComplexMatrix<Real>;

  BasicOperatorMatrix(ModeLayout targets, Matrix matrix, std::string label, bool unitary = true,
                      std::vector<Eigen::Index> retained = {})
      : targets_(std::move(targets)),
        matrix_(std::move(matrix)),
        label_(std::move(label)),
        unitary_(unitary),
        retained_(std::move(retained)) {
    if (targets_.size() < 1 || targets_.size() > 2) throw LayoutError("operators act on one or two modes");
    const auto d = static_cast<Eigen::Index>(targets_.dimension());
    if (matrix_.rows() != d || matrix_.cols() != d) throw LayoutError("operator matrix does not match its targets");
  }

  const ModeLayout& targets() const { return targets_; }
  const Matrix& matrix() const { return matrix_; }
  const std::string& label() const { return label_; }
  bool unitary() const { return unitary_; }
  const std::vector<Eigen::Index>& retained() const { return retained_; }

  /// Same operator acting on differently named modes.
  BasicOperatorMatrix on(std::string id) const {
    if (targets_.size() != 1) throw LayoutError("operator acts on two modes");
    return {ModeLayout({Mode{std::move(id), targets_.cutoff(0)}}), matrix_, label_, unitary_, retained_};
  }
  BasicOperatorMatrix on(std::string first, std::string second) const {
    if (targets_.size() != 2) throw LayoutError("operator acts on one mode");
    return {ModeLayout({Mode{std::move(first), targets_.cutoff(0)}, Mode{std::move(second), targets_.cutoff(1)}}),
            matrix_, label_, unitary_, retained_};
  }

  /// max |(U^dag U - I)_ij| over the retained subspace.
  Real unitarity_error() const {
    const Matrix gram = matrix_.adjoint() * matrix_;
    Real worst(0);
    auto visit = [&](Eigen::Index i, Eigen::Index j) {
      const auto expected = (i == j) ? Real(1) : Real(0);
      worst = std::max(worst, std::abs(gram(i, j) - expected));
    };
    if (retained_.empty()) {
      for (Eigen::Index j = 0; j < gram.cols(); ++j)
        for (Eigen::Index i = 0; i < gram.rows(); ++i) visit(i, j);
    } else {
      for (auto j : retained_)
        for (auto i : retained_) visit(i, j);
    }
    return worst;
  }

  friend BasicOperatorMatrix operator*(const BasicOperatorMatrix& a, const BasicOperatorMatrix& b) {
    if (!(a.targets_ == b.targets_)) throw LayoutError("composed operators must act on the same modes");
    return {a.targets_, a.matrix_ * b.matrix_, a.label_ + "*" + b.label_, a.unitary_ && b.unitary_,
            a.retained_.size() >= b.retained_.size() ? b.retained_ : a.retained_};
  }

 private:
  ModeLayout targets_;
  Matrix matrix_;
  std::string label_;
  bool unitary_;
  std::vector<Eigen::Index> retained_;
};

using OperatorMatrix = BasicOperatorMatrix<double>;

template <typename Real>
ComplexMatrix<Real> annihilation_matrix(int cutoff) {
  ComplexMatrix<Real> a = ComplexMatrix<Real>::Zero(cutoff + 1, cutoff + 1);
  for (int n = 1; n <= cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<Real>(n));
  return a;
}

template <typename Real>
ComplexMatrix<Real> kron(const ComplexMatrix<Real>& x, const ComplexMatrix<Real>& y) {
  ComplexMatrix<Real> out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j) out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
  return out;
}

/// exp(G) for anti-Hermitian G via the spectral decomposition of iG.
/// Unitary to rounding error for any truncation.
template <typename Real>
ComplexMatrix<Real> unitary_exp(const ComplexMatrix<Real>& generator) {
  using C = std::complex<Real>;
  const ComplexMatrix<Real> hermitian = C(0, 1) * generator;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> eig(hermitian);
  if (eig.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  const auto& v = eig.eigenvectors();
  ComplexVector<Real> phases(v.cols());
  for (Eigen::Index k = 0; k < v.cols(); ++k) phases(k) = std::exp(C(0, -eig.eigenvalues()(k)));
  return v * phases.asDiagonal() * v.adjoint();
}

/// sum_{n<terms} G^n / n!
template <typename Real>
ComplexMatrix<Real> truncated_series_exp(const ComplexMatrix<Real>& generator, int terms) {
  ComplexMatrix<Real> sum = ComplexMatrix<Real>::Identity(generator.rows(), generator.cols());
  ComplexMatrix<Real> power = sum;
  for (int n = 1; n < terms; ++n) {
    power = (power * generator) / static_cast<Real>(n);
    sum += power;
  }
  return sum;
}

/// D(alpha) on one mode. `exact` is the exponential of the truncated
/// generator; `series6` is the six-term Taylor polynomial of it.
template <typename Real = double>
BasicOperatorMatrix<Real> displacement_matrix(std::complex<Real> alpha, int cutoff,
                                              DisplacementMode mode = DisplacementMode::exact,
                                              std::string id = "a") {
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) throw std::invalid_argument("non-finite alpha");
  if (cutoff < 0) throw std::invalid_argument("negative cutoff");
  const ComplexMatrix<Real> a = annihilation_matrix<Real>(cutoff);
  const ComplexMatrix<Real> g = alpha * a.adjoint() - std::conj(alpha) * a;
  const bool exact = mode == DisplacementMode::exact;
  return {ModeLayout({Mode{std::move(id), cutoff}}), exact ? unitary_exp<Real>(g) : truncated_series_exp<Real>(g, 6),
          std::string("D[") + to_string(mode) + "]", exact};
}

/// S(zeta) = exp((zeta* a^2 - zeta a^dag^2)/2), zeta = r e^{i phi}.
template <typename Real = double>
BasicOperatorMatrix<Real> squeezer_matrix(Real r, Real phi, int cutoff, std::string id = "a") {
  if (!std::isfinite(r) || !std::isfinite(phi)) throw std::invalid_argument("non-finite squeezing");
  const ComplexMatrix<Real> a = annihilation_matrix<Real>(cutoff);
  const std::complex<Real> zeta(r * std::cos(phi), r * std::sin(phi));
  const ComplexMatrix<Real> g = (std::conj(zeta) * (a * a) - zeta * (a.adjoint() * a.adjoint())) / Real(2);
  return {ModeLayout({Mode{std::move(id), cutoff}}), unitary_exp<Real>(g), "S"};
}

/// S_ab(s) = exp(s (a b - a^dag b^dag)), so S_ab(-s)|0,0> = sqrt(1-q^2) sum q^n |n,n>
/// with q = tanh s.
template <typename Real = double>
BasicOperatorMatrix<Real> two_mode_squeezer(Real s, int cutoff_a, int cutoff_b, std::string id_a = "a",
                                            std::string id_b = "b") {
  if (!std::isfinite(s)) throw std::invalid_argument("non-finite squeezing");
  const ComplexMatrix<Real> a = annihilation_matrix<Real>(cutoff_a);
  const ComplexMatrix<Real> b = annihilation_matrix<Real>(cutoff_b);
  const ComplexMatrix<Real> ia = ComplexMatrix<Real>::Identity(cutoff_a + 1, cutoff_a + 1);
  const ComplexMatrix<Real> ib = ComplexMatrix<Real>::Identity(cutoff_b + 1, cutoff_b + 1);
  const ComplexMatrix<Real> big_a = kron<Real>(a, ib);
  const ComplexMatrix<Real> big_b = kron<Real>(ia, b);
  const ComplexMatrix<Real> g = s * (big_a * big_b - big_a.adjoint() * big_b.adjoint());
  return {ModeLayout({Mode{std::move(id_a), cutoff_a}, Mode{std::move(id_b), cutoff_b}}), unitary_exp<Real>(g),
          "S_ab"};
}

/// e^{i theta n}
template <typename Real = double>
BasicOperatorMatrix<Real> phase_rotation(Real theta, int cutoff, std::string id = "a") {
  ComplexMatrix<Real> m = ComplexMatrix<Real>::Zero(cutoff + 1, cutoff + 1);
  for (int n = 0; n <= cutoff; ++n) m(n, n) = std::polar(Real(1), theta * n);
  return {ModeLayout({Mode{std::move(id), cutoff}}), std::move(m), "R"};
}

using Matrix2 = Eigen::Matrix2d;

/// Throws unless m is real orthogonal within `tolerance`.
inline void require_orthogonal(const Matrix2& m, double tolerance = 1e-12) {
  if (!m.allFinite() || ((m.transpose() * m - Matrix2::Identity()).cwiseAbs().maxCoeff() > tolerance)) {
    throw std::invalid_argument("beam-splitter matrix is not orthogonal");
  }
}

/// Beam splitter acting on the N-photon sector of two modes.
///
/// Creation operators transform as a^dag -> m00 a^dag + m01 b^dag and
/// b^dag -> m10 a^dag + m11 b^dag, the rows of the Heisenberg matrix
/// (a', b')^T = m (a, b)^T. Column j is the image of |j, N-j>; row k holds the
/// amplitude on |k, N-k>.
template <typename Real = double>
ComplexMatrix<Real> beam_splitter_sector(const Matrix2& m, int photons) {
  const int n_total = photons;
  ComplexMatrix<Real> block = ComplexMatrix<Real>::Zero(n_total + 1, n_total + 1);
  // Raise the vacuum with (c_a a^dag + c_b b^dag); vectors indexed by photons in the first mode.
  auto raise = [](const std::vector<Real>& v, Real c_a, Real c_b) {
    const int n = static_cast<int>(v.size()) - 1;
    std::vector<Real> w(v.size() + 1, Real(0));
    for (int k = 0; k <= n; ++k) {
      w[k + 1] += c_a * std::sqrt(static_cast<Real>(k + 1)) * v[k];
      w[k] += c_b * std::sqrt(static_cast<Real>(n - k + 1)) * v[k];
    }
    return w;
  };
  for (int j = 0; j <= n_total; ++j) {
    std::vector<Real> v{Real(1)};
    for (int step = 1; step <= n_total - j; ++step) {
      v = raise(v, static_cast<Real>(m(1, 0)), static_cast<Real>(m(1, 1)));
      for (auto& x : v) x /= std::sqrt(static_cast<Real>(step));
    }
    for (int step = 1; step <= j; ++step) {
      v = raise(v, static_cast<Real>(m(0, 0)), static_cast<Real>(m(0, 1)));
      for (auto& x : v) x /= std::sqrt(static_cast<Real>(step));
    }
    for (int k = 0; k <= n_total; ++k) block(k, j) = v[k];
  }
  return block;
}

/// Fock-space unitary of a two-mode beam splitter (convention as in
/// beam_splitter_sector). Sectors with more photons than fit in both modes
/// are truncated, so the result is unitary only on the `retained` states.
template <typename Real = double>
BasicOperatorMatrix<Real> beam_splitter_matrix(const Matrix2& m, int cutoff_a, int cutoff_b, std::string id_a = "a",
                                               std::string id_b = "b") {
  require_orthogonal(m);
  ModeLayout targets({Mode{std::move(id_a), cutoff_a}, Mode{std::move(id_b), cutoff_b}});
  const auto d = static_cast<Eigen::Index>(targets.dimension());
  ComplexMatrix<Real> u = ComplexMatrix<Real>::Zero(d, d);
  std::vector<Eigen::Index> retained;
  for (int n = 0; n <= cutoff_a + cutoff_b; ++n) {
    const ComplexMatrix<Real> block = beam_splitter_sector<Real>(m, n);
    for (int j = std::max(0, n - cutoff_b); j <= std::min(n, cutoff_a); ++j) {
      const auto col = static_cast<Eigen::Index>(j * (cutoff_b + 1) + (n - j));
      if (n <= std::min(cutoff_a, cutoff_b)) retained.push_back(col);
      for (int k = std::max(0, n - cutoff_b); k <= std::min(n, cutoff_a); ++k) {
        u(k * (cutoff_b + 1) + (n - k), col) = block(k, j);
      }
    }
  }
  return {std::move(targets), std::move(u), "B", true, std::move(retained)};
}

namespace detail {

struct TargetOffsets {
  std::vector<std::size_t> bases;    // state indices with every target mode empty
  std::vector<std::size_t> offsets;  // local operator index -> state index offset
};

inline TargetOffsets target_offsets(const ModeLayout& state_layout, const ModeLayout& targets) {
  std::vector<std::size_t> pos(targets.size());
  for (std::size_t t = 0; t < targets.size(); ++t) {
    pos[t] = state_layout.position(targets.mode(t).id);
    if (state_layout.cutoff(pos[t]) != targets.cutoff(t)) {
      throw LayoutError("operator cutoff for mode '" + targets.mode(t).id + "' does not match the state's");
    }
  }
  TargetOffsets out;
  out.offsets.resize(targets.dimension());
  for (std::size_t j = 0; j < targets.dimension(); ++j) {
    std::size_t off = 0;
    for (std::size_t t = 0; t < targets.size(); ++t) {
      off += static_cast<std::size_t>(targets.occupation(j, t)) * state_layout.stride(pos[t]);
    }
    out.offsets[j] = off;
  }
  for (std::size_t i = 0; i < state_layout.dimension(); ++i) {
    bool empty = true;
    for (auto p : pos) empty = empty && state_layout.occupation(i, p) == 0;
    if (empty) out.bases.push_back(i);
  }
  return out;
}

}  // namespace detail

/// op applied to the target modes of `state`, identity elsewhere.
template <typename Real>
BasicFockVector<Real> apply(const BasicOperatorMatrix<Real>& op, const BasicFockVector<Real>& state) {
  const auto plan = detail::target_offsets(state.layout(), op.targets());
  const auto d = static_cast<Eigen::Index>(plan.offsets.size());
  const auto nb = static_cast<Eigen::Index>(plan.bases.size());
  ComplexMatrix<Real> gathered(d, nb);
  const auto& in = state.amplitudes();
  for (Eigen::Index c = 0; c < nb; ++c)
    for (Eigen::Index j = 0; j < d; ++j) gathered(j, c) = in(static_cast<Eigen::Index>(plan.bases[c] + plan.offsets[j]));
  const ComplexMatrix<Real> result = op.matrix() * gathered;
  ComplexVector<Real> out(in.size());
  for (Eigen::Index c = 0; c < nb; ++c)
    for (Eigen::Index j = 0; j < d; ++j) out(static_cast<Eigen::Index>(plan.bases[c] + plan.offsets[j])) = result(j, c);
  return BasicFockVector<Real>(state.layout(), std::move(out), state.discarded_weight());
}

/// Beam splitter applied sector by sector without building the dense
/// operator. The output layout keeps mode order but uses the given cutoffs for
/// the two modes; amplitude that does not fit is dropped and added to the
/// discarded weight (no renormalization).
template <typename Real>
BasicFockVector<Real> apply_beam_splitter(const BasicFockVector<Real>& state, const Matrix2& m, std::string_view id_a,
                                          std::string_view id_b, int out_cutoff_a, int out_cutoff_b) {
  require_orthogonal(m);
  const ModeLayout& in_layout = state.layout();
  const std::size_t pa = in_layout.position(id_a);
  const std::size_t pb = in_layout.position(id_b);
  if (pa == pb) throw LayoutError("beam splitter needs two distinct modes");
  const ModeLayout out_layout = in_layout.with_cutoff(id_a, out_cutoff_a).with_cutoff(id_b, out_cutoff_b);
  const int max_photons = in_layout.cutoff(pa) + in_layout.cutoff(pb);
  std::vector<ComplexMatrix<Real>> blocks;
  blocks.reserve(static_cast<std::size_t>(max_photons) + 1);
  for (int n = 0; n <= max_photons; ++n) blocks.push_back(beam_splitter_sector<Real>(m, n));

  ComplexVector<Real> out = ComplexVector<Real>::Zero(static_cast<Eigen::Index>(out_layout.dimension()));
  std::vector<int> occ(in_layout.size());
  Real total_in(0);
  for (std::size_t i = 0; i < in_layout.dimension(); ++i) {
    const auto amp = state.amplitudes()(static_cast<Eigen::Index>(i));
    if (amp == std::complex<Real>(0)) continue;
    total_in += std::norm(amp);
    for (std::size_t k = 0; k < occ.size(); ++k) occ[k] = in_layout.occupation(i, k);
    const int na = occ[pa];
    const int n = na + occ[pb];
    const auto& block = blocks[static_cast<std::size_t>(n)];
    for (int k = std::max(0, n - out_cutoff_b); k <= std::min(n, out_cutoff_a); ++k) {
      occ[pa] = k;
      occ[pb] = n - k;
      out(static_cast<Eigen::Index>(out_layout.index(occ))) += block(k, na) * amp;
    }
  }
  const Real dropped = std::max(Real(0), total_in - out.squaredNorm());
  return BasicFockVector<Real>(out_layout, std::move(out), state.discarded_weight() + dropped);
}

}  // namespace sqcat
