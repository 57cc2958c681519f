#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sqcat {

struct Mode {
  std::string id;
  int cutoff = 0;  // largest photon number stored

  int dimension() const { return cutoff + 1; }
  friend bool operator==(const Mode&, const Mode&) = default;
};

/// Ordered list of bosonic modes with per-mode photon-number cutoffs.
///
/// Basis states are indexed row-major over the modes in order: the last mode
/// varies fastest, so for modes (m0, m1, ..., mk) the occupation tuple
/// (n0, ..., nk) sits at index sum_i n_i * stride(i) with
/// stride(i) = prod_{j>i} (cutoff_j + 1).
///
/// An empty layout is allowed and has dimension 1 (a scalar); it is what is
/// left after every mode of a state has been measured.
class ModeLayout {
 public:
  ModeLayout() = default;
  explicit ModeLayout(std::vector<Mode> modes);
  ModeLayout(std::initializer_list<Mode> modes) : ModeLayout(std::vector<Mode>(modes)) {}

  static ModeLayout single(std::string id, int cutoff) { return ModeLayout({Mode{std::move(id), cutoff}}); }

  std::size_t size() const { return modes_.size(); }
  bool empty() const { return modes_.empty(); }
  const std::vector<Mode>& modes() const { return modes_; }
  const Mode& mode(std::size_t i) const { return modes_.at(i); }
  int cutoff(std::size_t i) const { return modes_.at(i).cutoff; }

  bool contains(std::string_view id) const;
  /// Position of a mode; throws LayoutError for unknown ids.
  std::size_t position(std::string_view id) const;

  std::size_t dimension() const { return dimension_; }
  std::size_t stride(std::size_t i) const { return strides_.at(i); }

  std::size_t index(std::span<const int> occupation) const;
  std::vector<int> occupation(std::size_t index) const;
  int occupation(std::size_t index, std::size_t mode) const {
    return static_cast<int>((index / strides_[mode]) % static_cast<std::size_t>(modes_[mode].dimension()));
  }

  /// Layout with the listed mode positions removed, order otherwise kept.
  ModeLayout without(std::span<const std::size_t> positions) const;
  /// Modes of this layout followed by the modes of `other`.
  ModeLayout concat(const ModeLayout& other) const;
  /// Same modes with one cutoff replaced.
  ModeLayout with_cutoff(std::string_view id, int cutoff) const;

  friend bool operator==(const ModeLayout& a, const ModeLayout& b) { return a.modes_ == b.modes_; }

  std::string describe() const;

 private:
  std::vector<Mode> modes_;
  std::vector<std::size_t> strides_;
  std::size_t dimension_ = 1;
};

}  // namespace sqcat
