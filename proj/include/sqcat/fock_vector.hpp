#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

#include "sqcat/errors.hpp"
#include "sqcat/mode_layout.hpp"

namespace sqcat {

template <typename Real>
using ComplexVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using ComplexMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

/// Pure multimode state stored as complex amplitudes over a truncated product
/// Fock basis (see ModeLayout for the index convention).
///
/// Besides the amplitudes the vector carries `discarded_weight`: the squared
/// norm that a constructor or transformation dropped before renormalizing
/// (zero unless something was truncated away).
template <typename Real>
class BasicFockVector {
 public:
  using RealScalar = Real;
  using Scalar = std::complex<Real>;
  using Amplitudes = ComplexVector<Real>;

  BasicFockVector() : BasicFockVector(ModeLayout{}) {}

  /// Vacuum of `layout`.
  explicit BasicFockVector(ModeLayout layout)
      : layout_(std::move(layout)), amplitudes_(Amplitudes::Zero(static_cast<Eigen::Index>(layout_.dimension()))) {
    amplitudes_(0) = Scalar(1);
  }

  BasicFockVector(ModeLayout layout, Amplitudes amplitudes, Real discarded_weight = Real(0))
      : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)), discarded_weight_(discarded_weight) {
    if (static_cast<std::size_t>(amplitudes_.size()) != layout_.dimension()) {
      throw LayoutError("amplitude count " + std::to_string(amplitudes_.size()) + " does not match layout " +
                        layout_.describe());
    }
    if (!amplitudes_.allFinite()) throw std::invalid_argument("non-finite amplitude");
  }

  static BasicFockVector basis_state(ModeLayout layout, std::span<const int> occupation) {
    Amplitudes amps = Amplitudes::Zero(static_cast<Eigen::Index>(layout.dimension()));
    amps(static_cast<Eigen::Index>(layout.index(occupation))) = Scalar(1);
    return BasicFockVector(std::move(layout), std::move(amps));
  }
  static BasicFockVector basis_state(ModeLayout layout, std::initializer_list<int> occupation) {
    return basis_state(std::move(layout), std::span<const int>(occupation.begin(), occupation.size()));
  }

  const ModeLayout& layout() const { return layout_; }
  const Amplitudes& amplitudes() const { return amplitudes_; }
  std::size_t dimension() const { return layout_.dimension(); }

  Scalar operator[](std::size_t index) const { return amplitudes_(static_cast<Eigen::Index>(index)); }
  Scalar amplitude(std::span<const int> occupation) const { return (*this)[layout_.index(occupation)]; }
  Scalar amplitude(std::initializer_list<int> occupation) const {
    return amplitude(std::span<const int>(occupation.begin(), occupation.size()));
  }

  Real norm_squared() const { return amplitudes_.squaredNorm(); }
  bool is_normalized(Real tolerance = Real(1e-10)) const { return std::abs(norm_squared() - Real(1)) <= tolerance; }

  /// Weight dropped by truncation before the last renormalization.
  Real discarded_weight() const { return discarded_weight_; }

  /// Weight on basis states with at least one mode sitting at its cutoff.
  /// Large values mean the truncation is too tight for the state.
  Real cutoff_weight() const {
    Real w(0);
    for (std::size_t i = 0; i < layout_.dimension(); ++i) {
      for (std::size_t m = 0; m < layout_.size(); ++m) {
        if (layout_.occupation(i, m) == layout_.cutoff(m)) {
          w += std::norm(amplitudes_(static_cast<Eigen::Index>(i)));
          break;
        }
      }
    }
    return w;
  }

  /// Unit-norm copy. Throws for the zero vector.
  BasicFockVector normalized() const {
    const Real n2 = norm_squared();
    if (!(n2 > Real(0))) throw std::domain_error("cannot normalize a zero state");
    return BasicFockVector(layout_, amplitudes_ / std::sqrt(n2), discarded_weight_);
  }

  BasicFockVector with_discarded_weight(Real w) const { return BasicFockVector(layout_, amplitudes_, w); }

  /// Same amplitudes under new mode ids (cutoffs must agree).
  BasicFockVector relabeled(const ModeLayout& layout) const {
    if (layout.size() != layout_.size()) throw LayoutError("relabel needs the same number of modes");
    for (std::size_t i = 0; i < layout.size(); ++i) {
      if (layout.cutoff(i) != layout_.cutoff(i)) throw LayoutError("relabel cannot change cutoffs");
    }
    return BasicFockVector(layout, amplitudes_, discarded_weight_);
  }

 private:
  ModeLayout layout_;
  Amplitudes amplitudes_;
  Real discarded_weight_ = Real(0);
};

using FockVector = BasicFockVector<double>;

/// <a|b>, conjugating `a`. Layouts must be identical.
template <typename Real>
std::complex<Real> overlap(const BasicFockVector<Real>& a, const BasicFockVector<Real>& b) {
  if (!(a.layout() == b.layout())) {
    throw LayoutError("overlap of states on different layouts " + a.layout().describe() + " vs " +
                      b.layout().describe());
  }
  return a.amplitudes().dot(b.amplitudes());
}

/// Overlap of two single-mode states with possibly different cutoffs, taken
/// over the photon numbers both store. Mode ids must agree.
template <typename Real>
std::complex<Real> overlap_common(const BasicFockVector<Real>& a, const BasicFockVector<Real>& b) {
  if (a.layout().size() != 1 || b.layout().size() != 1 || a.layout().mode(0).id != b.layout().mode(0).id) {
    throw LayoutError("overlap_common needs single-mode states on the same mode");
  }
  const auto n = std::min(a.amplitudes().size(), b.amplitudes().size());
  return a.amplitudes().head(n).dot(b.amplitudes().head(n));
}

/// Product state |a>|b> on the concatenated layout.
template <typename Real>
BasicFockVector<Real> tensor(const BasicFockVector<Real>& a, const BasicFockVector<Real>& b) {
  ComplexVector<Real> amps(static_cast<Eigen::Index>(a.dimension() * b.dimension()));
  const auto nb = static_cast<Eigen::Index>(b.dimension());
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(a.dimension()); ++i) {
    amps.segment(i * nb, nb) = a.amplitudes()(i) * b.amplitudes();
  }
  return BasicFockVector<Real>(a.layout().concat(b.layout()), std::move(amps),
                               a.discarded_weight() + b.discarded_weight());
}

/// Linear combination x*a + y*b of states on one layout (not renormalized).
template <typename Real>
BasicFockVector<Real> combine(std::complex<Real> x, const BasicFockVector<Real>& a, std::complex<Real> y,
                              const BasicFockVector<Real>& b) {
  if (!(a.layout() == b.layout())) throw LayoutError("combine needs identical layouts");
  return BasicFockVector<Real>(a.layout(), x * a.amplitudes() + y * b.amplitudes(),
                               std::max(a.discarded_weight(), b.discarded_weight()));
}

/// Copy of a single-mode state re-truncated (or zero-padded) to `cutoff`.
/// Dropped weight is added to the discarded weight; no renormalization.
template <typename Real>
BasicFockVector<Real> resize_cutoff(const BasicFockVector<Real>& state, int cutoff) {
  if (state.layout().size() != 1) throw LayoutError("resize_cutoff needs a single-mode state");
  const Eigen::Index n = cutoff + 1;
  ComplexVector<Real> amps = ComplexVector<Real>::Zero(n);
  const Eigen::Index kept = std::min(n, state.amplitudes().size());
  amps.head(kept) = state.amplitudes().head(kept);
  const Real dropped = state.amplitudes().tail(state.amplitudes().size() - kept).squaredNorm();
  return BasicFockVector<Real>(state.layout().with_cutoff(state.layout().mode(0).id, cutoff), std::move(amps),
                               state.discarded_weight() + dropped);
}

/// Amplitude matrix C(n_a, n_b) of a two-mode state, rows indexed by the first mode.
template <typename Real>
ComplexMatrix<Real> amplitude_matrix(const BasicFockVector<Real>& state) {
  if (state.layout().size() != 2) throw LayoutError("amplitude_matrix needs a two-mode state");
  const Eigen::Index rows = state.layout().mode(0).dimension();
  const Eigen::Index cols = state.layout().mode(1).dimension();
  ComplexMatrix<Real> c(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) c.row(i) = state.amplitudes().segment(i * cols, cols).transpose();
  return c;
}

}  // namespace sqcat
