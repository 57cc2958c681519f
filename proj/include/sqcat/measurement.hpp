#pragma once

#include <optional>
#include <stdexcept>
#include <string_view>
#include <string>
#include <utility>
#include <vector>

#include "sqcat/fock_vector.hpp"

namespace sqcat {

/// Outcome of a heralding measurement: the probability of the event and, when
/// it can occur, the normalized post-measurement state of the unmeasured modes.
template <typename Real>
struct BasicHeraldResult {
  Real probability = Real(0);
  std::optional<BasicFockVector<Real>> state;
  Real leakage = Real(0);  // truncation loss carried in from the measured state
  std::string note;
  std::vector<std::pair<std::string, Real>> diagnostics;

  bool possible() const { return state.has_value(); }
  /// Named diagnostic value; throws std::out_of_range if absent.
  Real diagnostic(std::string_view name) const {
    for (const auto& [key, value] : diagnostics)
      if (key == name) return value;
    throw std::out_of_range("no diagnostic named '" + std::string(name) + "'");
  }
  const BasicFockVector<Real>& heralded() const {
    if (!state) throw ImpossibleOutcome("impossible outcome has no post-measurement state");
    return *state;
  }
};

using HeraldResult = BasicHeraldResult<double>;

struct FockOutcome {
  std::string mode;
  int photons = 0;
};

namespace detail {

template <typename Real>
BasicHeraldResult<Real> herald(ModeLayout remaining, ComplexVector<Real> projected, Real leakage, std::string note) {
  BasicHeraldResult<Real> result;
  result.probability = projected.squaredNorm();
  result.leakage = leakage;
  result.note = std::move(note);
  if (result.probability > Real(0)) {
    projected /= std::sqrt(result.probability);
    result.state.emplace(std::move(remaining), std::move(projected), leakage);
  } else {
    result.note += result.note.empty() ? "impossible outcome" : "; impossible outcome";
  }
  return result;
}

}  // namespace detail

/// Projects the listed modes onto Fock states. The probability is the squared
/// norm of the projected component (the input is not renormalized first, so a
/// non-unitary pipeline reports <Psi|M|Psi> as is).
template <typename Real>
BasicHeraldResult<Real> project_fock(const BasicFockVector<Real>& state, const std::vector<FockOutcome>& outcomes) {
  const ModeLayout& layout = state.layout();
  std::vector<std::size_t> positions;
  std::vector<int> wanted;
  for (const auto& o : outcomes) {
    const auto p = layout.position(o.mode);
    if (std::find(positions.begin(), positions.end(), p) != positions.end()) {
      throw LayoutError("mode '" + o.mode + "' measured twice");
    }
    if (o.photons < 0 || o.photons > layout.cutoff(p)) {
      throw std::out_of_range("outcome " + std::to_string(o.photons) + " outside cutoff of mode '" + o.mode + "'");
    }
    positions.push_back(p);
    wanted.push_back(o.photons);
  }
  ModeLayout remaining = layout.without(positions);
  ComplexVector<Real> projected(static_cast<Eigen::Index>(remaining.dimension()));
  // Matching indices appear in the same row-major order as the remaining layout.
  Eigen::Index next = 0;
  for (std::size_t i = 0; i < layout.dimension(); ++i) {
    bool match = true;
    for (std::size_t k = 0; k < positions.size() && match; ++k) match = layout.occupation(i, positions[k]) == wanted[k];
    if (match) projected(next++) = state.amplitudes()(static_cast<Eigen::Index>(i));
  }
  return detail::herald<Real>(std::move(remaining), std::move(projected), state.discarded_weight(), {});
}

/// Projects one mode onto an arbitrary single-mode state <probe|.
/// The probe may store fewer levels than the mode; missing levels count as zero.
template <typename Real>
BasicHeraldResult<Real> project_onto(const BasicFockVector<Real>& state, const std::string& mode,
                                     const BasicFockVector<Real>& probe) {
  if (probe.layout().size() != 1) throw LayoutError("probe must be a single-mode state");
  const ModeLayout& layout = state.layout();
  const std::size_t p = layout.position(mode);
  const std::size_t positions[] = {p};
  ModeLayout remaining = layout.without(positions);
  ComplexVector<Real> projected = ComplexVector<Real>::Zero(static_cast<Eigen::Index>(remaining.dimension()));
  const auto levels = std::min<Eigen::Index>(layout.cutoff(p) + 1, probe.amplitudes().size());
  const std::size_t stride = layout.stride(p);
  const std::size_t outer = stride * static_cast<std::size_t>(layout.mode(p).dimension());
  // state index = hi * outer + n * stride + lo; remaining index = hi * stride + lo
  for (std::size_t hi = 0; hi < layout.dimension() / outer; ++hi) {
    for (std::size_t lo = 0; lo < stride; ++lo) {
      std::complex<Real> acc(0);
      for (Eigen::Index n = 0; n < levels; ++n) {
        acc += std::conj(probe.amplitudes()(n)) *
               state.amplitudes()(static_cast<Eigen::Index>(hi * outer + static_cast<std::size_t>(n) * stride + lo));
      }
      projected(static_cast<Eigen::Index>(hi * stride + lo)) = acc;
    }
  }
  return detail::herald<Real>(std::move(remaining), std::move(projected), state.discarded_weight(), {});
}

}  // namespace sqcat
