#include "sqcat/mode_layout.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "sqcat/errors.hpp"

namespace sqcat {

ModeLayout::ModeLayout(std::vector<Mode> modes) : modes_(std::move(modes)) {
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (modes_[i].cutoff < 0) throw std::invalid_argument("mode '" + modes_[i].id + "' has a negative cutoff");
    for (std::size_t j = 0; j < i; ++j) {
      if (modes_[j].id == modes_[i].id) throw LayoutError("duplicate mode id '" + modes_[i].id + "'");
    }
  }
  strides_.assign(modes_.size(), 1);
  dimension_ = 1;
  for (std::size_t i = modes_.size(); i-- > 0;) {
    strides_[i] = dimension_;
    const auto d = static_cast<std::size_t>(modes_[i].dimension());
    if (dimension_ > std::numeric_limits<std::size_t>::max() / d) throw std::overflow_error("layout dimension overflows");
    dimension_ *= d;
  }
}

bool ModeLayout::contains(std::string_view id) const {
  return std::any_of(modes_.begin(), modes_.end(), [&](const Mode& m) { return m.id == id; });
}

std::size_t ModeLayout::position(std::string_view id) const {
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (modes_[i].id == id) return i;
  }
  throw LayoutError("unknown mode id '" + std::string(id) + "' in layout " + describe());
}

std::size_t ModeLayout::index(std::span<const int> occupation) const {
  if (occupation.size() != modes_.size()) throw LayoutError("occupation tuple has the wrong length");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (occupation[i] < 0 || occupation[i] > modes_[i].cutoff) {
      throw std::out_of_range("occupation " + std::to_string(occupation[i]) + " outside cutoff of mode '" +
                              modes_[i].id + "'");
    }
    idx += static_cast<std::size_t>(occupation[i]) * strides_[i];
  }
  return idx;
}

std::vector<int> ModeLayout::occupation(std::size_t index) const {
  if (index >= dimension_) throw std::out_of_range("basis index out of range");
  std::vector<int> occ(modes_.size());
  for (std::size_t i = 0; i < modes_.size(); ++i) occ[i] = occupation(index, i);
  return occ;
}

ModeLayout ModeLayout::without(std::span<const std::size_t> positions) const {
  std::vector<Mode> kept;
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (std::find(positions.begin(), positions.end(), i) == positions.end()) kept.push_back(modes_[i]);
  }
  return ModeLayout(std::move(kept));
}

ModeLayout ModeLayout::concat(const ModeLayout& other) const {
  std::vector<Mode> all = modes_;
  all.insert(all.end(), other.modes_.begin(), other.modes_.end());
  return ModeLayout(std::move(all));
}

ModeLayout ModeLayout::with_cutoff(std::string_view id, int cutoff) const {
  std::vector<Mode> copy = modes_;
  copy[position(id)].cutoff = cutoff;
  return ModeLayout(std::move(copy));
}

std::string ModeLayout::describe() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (i) os << ", ";
    os << modes_[i].id << ':' << modes_[i].cutoff;
  }
  os << ']';
  return os.str();
}

}  // namespace sqcat
