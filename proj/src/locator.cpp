#include "msidx/locator.hpp"

#include <algorithm>
#include <string>

namespace msidx {

LocateSamples build_locate_samples(const RlBwt& bwt) {
  LocateSamples out;
  const auto runs = bwt.runs();
  for (std::size_t k = 0; k < runs.size(); ++k) {
    out.pred.push_back({runs[k].sa_first, k == 0 ? kNone : runs[k - 1].sa_last});
    out.succ.push_back({runs[k].sa_last, k + 1 == runs.size() ? kNone : runs[k + 1].sa_first});
  }
  auto by_text = [](const SamplePoint& a, const SamplePoint& b) { return a.text < b.text; };
  std::sort(out.pred.begin(), out.pred.end(), by_text);
  std::sort(out.succ.begin(), out.succ.end(), by_text);
  return out;
}

namespace {

std::uint64_t walk(std::span<const SamplePoint> points, std::uint64_t p) {
  auto it = std::upper_bound(points.begin(), points.end(), p,
                             [](std::uint64_t v, const SamplePoint& s) { return v < s.text; });
  // Position 0 is always sampled: its BWT character is the unique sentinel,
  // which forms a run of its own.
  if (it == points.begin()) throw Error(ErrorCode::format, "locate samples miss position 0");
  const auto& s = *(it - 1);
  if (s.target == kNone) return kNone;
  return s.target + (p - s.text);
}

}  // namespace

std::uint64_t Locator::phi(std::uint64_t p) const {
  if (p >= text_size()) throw Error(ErrorCode::out_of_bounds, "phi at " + std::to_string(p));
  return walk(samples_->pred, p);
}

std::uint64_t Locator::phi_inv(std::uint64_t p) const {
  if (p >= text_size()) throw Error(ErrorCode::out_of_bounds, "phi_inv at " + std::to_string(p));
  return walk(samples_->succ, p);
}

std::uint64_t Locator::plcp(std::uint64_t p) const {
  const auto prev = phi(p);
  return prev == kNone ? 0 : lce(*slp_, p, prev);
}

OccurrenceCursor Locator::locate(std::span<const MsEntry> ms, std::uint64_t i,
                                 std::uint64_t j) const {
  if (i > j || j >= ms.size())
    throw Error(ErrorCode::out_of_bounds, "locate window outside the pattern");
  const auto width = j - i + 1;
  const bool empty = ms[i].len < width;
  return OccurrenceCursor(*this, empty ? 0 : ms[i].pos, width, empty);
}

std::optional<std::uint64_t> OccurrenceCursor::next() {
  switch (phase_) {
    case Phase::first:
      phase_ = Phase::up;
      return current_;
    case Phase::up:
      if (loc_->plcp(current_) >= width_) {
        current_ = loc_->phi(current_);
        return current_;
      }
      phase_ = Phase::down;
      current_ = loc_->phi_inv(anchor_);
      [[fallthrough]];
    case Phase::down:
      if (current_ != kNone && loc_->plcp(current_) >= width_) {
        const auto out = current_;
        current_ = loc_->phi_inv(current_);
        return out;
      }
      phase_ = Phase::done;
      [[fallthrough]];
    case Phase::done:
      break;
  }
  return std::nullopt;
}

std::vector<std::uint64_t> OccurrenceCursor::collect() {
  std::vector<std::uint64_t> out;
  while (auto p = next()) out.push_back(*p);
  return out;
}

}  // namespace msidx
