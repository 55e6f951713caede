#include "msidx/rlbwt.hpp"

#include <algorithm>
#include <cassert>
#include <string>

namespace msidx {

RlBwt::RlBwt(const SuffixStructures& ss) {
  const auto& bwt = ss.bwt;
  for (std::uint64_t i = 0; i < bwt.size();) {
    std::uint64_t j = i;
    while (j < bwt.size() && bwt[j] == bwt[i]) ++j;
    runs_.push_back({bwt[i], i, j - i, ss.sa[i], ss.sa[j - 1]});
    i = j;
  }
  index_runs();
}

RlBwt::RlBwt(std::vector<BwtRun> runs) : runs_(std::move(runs)) {
  std::uint64_t expect = 0;
  for (std::size_t k = 0; k < runs_.size(); ++k) {
    const auto& run = runs_[k];
    if (run.length == 0 || run.start != expect || (k > 0 && runs_[k - 1].ch == run.ch))
      throw Error(ErrorCode::format, "inconsistent BWT run list");
    expect += run.length;
  }
  index_runs();
  if (runs_.empty() || count(kSentinel) != 1)
    throw Error(ErrorCode::format, "BWT must hold exactly one sentinel");
  for (const auto& run : runs_) {
    if (run.sa_first >= n_ || run.sa_last >= n_)
      throw Error(ErrorCode::format, "SA sample outside the text");
  }
}

void RlBwt::index_runs() {
  n_ = 0;
  std::array<std::uint64_t, 256> totals{};
  for (std::size_t k = 0; k < runs_.size(); ++k) {
    const auto c = runs_[k].ch;
    char_runs_[c].push_back(static_cast<std::uint32_t>(k));
    char_cum_[c].push_back(totals[c]);
    totals[c] += runs_[k].length;
    n_ += runs_[k].length;
  }
  char_totals_[0] = 0;
  for (int c = 0; c < 256; ++c) char_totals_[c + 1] = char_totals_[c] + totals[c];
}

std::size_t RlBwt::run_index(std::uint64_t q) const {
  if (q >= n_) throw Error(ErrorCode::out_of_bounds, "BWT row " + std::to_string(q) + " out of range");
  auto it = std::upper_bound(runs_.begin(), runs_.end(), q,
                             [](std::uint64_t v, const BwtRun& run) { return v < run.start; });
  return static_cast<std::size_t>(it - runs_.begin()) - 1;
}

Byte RlBwt::at(std::uint64_t q) const { return runs_[run_index(q)].ch; }

std::uint64_t RlBwt::count(Byte c) const noexcept {
  return char_totals_[c + 1] - char_totals_[c];
}

std::uint64_t RlBwt::rank(Byte c, std::uint64_t y) const {
  if (y >= n_) throw Error(ErrorCode::out_of_bounds, "BWT row " + std::to_string(y) + " out of range");
  const auto& list = char_runs_[c];
  // Last run of c starting at or before y.
  auto it = std::upper_bound(list.begin(), list.end(), y, [&](std::uint64_t v, std::uint32_t k) {
    return v < runs_[k].start;
  });
  if (it == list.begin()) return 0;
  const auto ord = static_cast<std::size_t>(it - list.begin()) - 1;
  const auto& run = runs_[list[ord]];
  return char_cum_[c][ord] + std::min(run.length, y - run.start + 1);
}

std::uint64_t RlBwt::select(Byte c, std::uint64_t k) const {
  if (k == 0 || k > count(c))
    throw Error(ErrorCode::rank_out_of_range,
                "select: rank " + std::to_string(k) + " exceeds " + std::to_string(count(c)));
  const auto& cum = char_cum_[c];
  // Last run whose preceding count is < k.
  auto it = std::lower_bound(cum.begin(), cum.end(), k);
  const auto ord = static_cast<std::size_t>(it - cum.begin()) - 1;
  return runs_[char_runs_[c][ord]].start + (k - cum[ord] - 1);
}

std::uint64_t RlBwt::lf(std::uint64_t q) const {
  const auto k = run_index(q);
  const auto& run = runs_[k];
  const auto& list = char_runs_[run.ch];
  // The run's ordinal among runs of its character.
  auto it = std::lower_bound(list.begin(), list.end(), static_cast<std::uint32_t>(k));
  const auto ord = static_cast<std::size_t>(it - list.begin());
  return char_totals_[run.ch] + char_cum_[run.ch][ord] + (q - run.start);
}

std::uint64_t RlBwt::sa_at_boundary(std::uint64_t q) const {
  const auto& run = runs_[run_index(q)];
  if (q == run.start) return run.sa_first;
  if (q == run.end()) return run.sa_last;
  throw Error(ErrorCode::not_a_boundary, "row " + std::to_string(q) + " is inside a run");
}

Neighbors RlBwt::neighbors(Byte c, std::uint64_t q) const {
  const auto& list = char_runs_[c];
  if (list.empty()) throw Error(ErrorCode::both_none, "character does not occur in the BWT");
  if (q >= n_) throw Error(ErrorCode::out_of_bounds, "BWT row " + std::to_string(q) + " out of range");

  auto it = std::upper_bound(list.begin(), list.end(), q, [&](std::uint64_t v, std::uint32_t k) {
    return v < runs_[k].start;
  });
  Neighbors out;
  if (it != list.begin()) {
    const auto ord = static_cast<std::size_t>(it - list.begin()) - 1;
    const auto& run = runs_[list[ord]];
    if (run.end() >= q) throw Error(ErrorCode::invalid_argument, "BWT[q] equals the queried character");
    out.prev = run.end();
    out.prev_run = ord;
  }
  if (it != list.end()) out.next = runs_[*it].start;
  assert(out.prev == kNone || runs_[run_index(out.prev)].end() == out.prev);
  assert(out.next == kNone || runs_[run_index(out.next)].start == out.next);
  return out;
}

}  // namespace msidx
