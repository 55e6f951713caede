#include "msidx/thresholds.hpp"

#include <bit>
#include <string>

namespace msidx {

namespace {

// Sparse table answering "leftmost minimum position" over a fixed array.
class FirstMinTable {
 public:
  explicit FirstMinTable(const std::vector<std::uint64_t>& values) : values_(values) {
    const std::size_t n = values.size();
    levels_.emplace_back(n);
    for (std::size_t i = 0; i < n; ++i) levels_[0][i] = static_cast<std::uint32_t>(i);
    for (std::size_t span = 2; span <= n; span <<= 1) {
      const auto& below = levels_.back();
      std::vector<std::uint32_t> level(n - span + 1);
      for (std::size_t i = 0; i + span <= n; ++i)
        level[i] = better(below[i], below[i + span / 2]);
      levels_.push_back(std::move(level));
    }
  }

  // Inclusive range [lo, hi].
  std::uint64_t query(std::size_t lo, std::size_t hi) const {
    const auto k = static_cast<std::size_t>(std::bit_width(hi - lo + 1) - 1);
    return better(levels_[k][lo], levels_[k][hi + 1 - (std::size_t{1} << k)]);
  }

 private:
  std::uint32_t better(std::uint32_t a, std::uint32_t b) const {
    if (values_[b] < values_[a]) return b;
    if (values_[a] < values_[b]) return a;
    return std::min(a, b);
  }

  const std::vector<std::uint64_t>& values_;
  std::vector<std::vector<std::uint32_t>> levels_;
};

}  // namespace

std::uint64_t ThresholdTable::first_min(Byte c, std::uint64_t ordinal) const {
  const auto& row = rows_[c];
  if (ordinal >= row.size())
    throw Error(ErrorCode::out_of_bounds, "no threshold for run pair " + std::to_string(ordinal));
  return row[ordinal];
}

std::uint64_t ThresholdTable::entry_count() const noexcept {
  std::uint64_t total = 0;
  for (const auto& row : rows_) total += row.size();
  return total;
}

ThresholdTable build_thresholds(const SuffixStructures& ss, const RlBwt& bwt) {
  const FirstMinTable rmq(ss.lcp);
  std::array<std::vector<std::uint64_t>, 256> rows;
  const auto runs = bwt.runs();
  for (int c = 0; c < 256; ++c) {
    const auto list = bwt.runs_of(static_cast<Byte>(c));
    for (std::size_t k = 0; k + 1 < list.size(); ++k) {
      const auto lo = runs[list[k]].end() + 1;
      const auto hi = runs[list[k + 1]].start;
      rows[c].push_back(rmq.query(lo, hi));
    }
  }
  return ThresholdTable(std::move(rows));
}

}  // namespace msidx
