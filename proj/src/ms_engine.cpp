#include "msidx/ms_engine.hpp"

#include <algorithm>
#include <cassert>

namespace msidx {

const char* to_string(Variant v) noexcept {
  switch (v) {
    case Variant::standard: return "std";
    case Variant::naive: return "naive";
    case Variant::heuristic: return "heur";
    case Variant::two_pass: return "twopass";
  }
  return "?";
}

std::optional<Variant> parse_variant(std::string_view name) noexcept {
  if (name == "std") return Variant::standard;
  if (name == "naive") return Variant::naive;
  if (name == "heur") return Variant::heuristic;
  if (name == "twopass") return Variant::two_pass;
  return std::nullopt;
}

QueryCounters& QueryCounters::operator+=(const QueryCounters& o) noexcept {
  steps += o.steps;
  lf_hits += o.lf_hits;
  mismatches += o.mismatches;
  restarts += o.restarts;
  lce_calls += o.lce_calls;
  lce_char_compares += o.lce_char_compares;
  lce_skips += o.lce_skips;
  random_accesses += o.random_accesses;
  return *this;
}

std::uint64_t MsEngine::extension(Variant v, std::uint64_t a, std::uint64_t b,
                                  QueryCounters* counters) const {
  LceStats stats;
  const auto l = v == Variant::naive ? lce_naive(*slp_, a, b, &stats) : lce(*slp_, a, b, &stats);
  if (counters) {
    counters->lce_calls += stats.calls;
    counters->lce_char_compares += stats.char_compares;
    counters->lce_skips += stats.skips;
  }
  return l;
}

MsEntry MsEngine::restart(MsCursor& cur, Byte c, QueryCounters* counters) const {
  if (counters) ++counters->restarts;
  if (bwt_->count(c) == 0 || c == kSentinel) {
    cur.q = kNone;
    cur.last = {};
    return cur.last;
  }
  const auto q = bwt_->select(c, 1);
  cur.last = {bwt_->sa_at_boundary(q) - 1, 1};
  cur.q = bwt_->lf(q);
  return cur.last;
}

MsEntry MsEngine::push(MsCursor& cur, Byte c, QueryCounters* counters) const {
  if (counters) ++counters->steps;
  if (cur.last.len == 0) return restart(cur, c, counters);

  if (bwt_->at(cur.q) == c) {
    if (counters) ++counters->lf_hits;
    cur.last = {cur.last.pos - 1, cur.last.len + 1};
    cur.q = bwt_->lf(cur.q);
  } else {
    if (counters) ++counters->mismatches;
    if (bwt_->count(c) == 0) {
      cur.q = kNone;
      cur.last = {};
      return cur.last;
    }
    const auto around = bwt_->neighbors(c, cur.q);
    const auto limit = cur.last.len;
    const auto variant = cur.variant;

    // Candidate rows with their capped extension; an undefined row never wins.
    struct Candidate {
      std::uint64_t row = kNone;
      std::uint64_t text = 0;
      std::uint64_t ext = 0;
      bool known = false;
    };
    Candidate up{around.prev}, down{around.next};
    auto measure = [&](Candidate& cand) {
      cand.text = bwt_->sa_at_boundary(cand.row);
      cand.ext = std::min(limit, extension(variant, cand.text, cur.last.pos, counters));
      cand.known = true;
    };

    const Candidate* chosen = nullptr;
    if (up.row == kNone) {
      measure(down);
      chosen = &down;
    } else if (down.row == kNone) {
      measure(up);
      chosen = &up;
    } else {
      if (variant == Variant::heuristic) {
        const bool up_first = cur.q - up.row <= down.row - cur.q;
        Candidate& first = up_first ? up : down;
        measure(first);
        if (first.ext >= limit) chosen = &first;
      }
      if (chosen == nullptr) {
        if (!up.known) measure(up);
        if (!down.known) measure(down);
        chosen = up.ext >= down.ext ? &up : &down;
      }
    }
    cur.last = {chosen->text - 1, chosen->ext + 1};
    cur.q = bwt_->lf(chosen->row);
  }
#ifndef NDEBUG
  assert(slp_->access(cur.last.pos) == c);
#endif
  return cur.last;
}

std::vector<MsEntry> MsEngine::one_pass(const Pattern& pattern, Variant variant,
                                        QueryCounters* counters) const {
  if (variant == Variant::two_pass)
    throw Error(ErrorCode::invalid_argument, "two_pass is not a one-pass variant");
  std::vector<MsEntry> ms(pattern.size());
  MsCursor cur;
  cur.variant = variant;
  for (std::size_t i = pattern.size(); i-- > 0;) ms[i] = push(cur, pattern[i], counters);
  return ms;
}

std::vector<MsEntry> MsEngine::two_pass(const Pattern& pattern, QueryCounters* counters,
                                        std::vector<MismatchDecision>* trace) const {
  if (thresholds_ == nullptr)
    throw Error(ErrorCode::missing_section, "index was built without thresholds");
  const std::size_t m = pattern.size();
  std::vector<MsEntry> ms(m);

  // Pass 1, right to left: positions only. A zero len marks "no match".
  MsCursor cur;
  cur.variant = Variant::two_pass;
  for (std::size_t i = m; i-- > 0;) {
    const Byte c = pattern[i];
    if (counters) ++counters->steps;
    if (cur.last.len == 0) {
      ms[i] = restart(cur, c, counters);
      continue;
    }
    if (bwt_->at(cur.q) == c) {
      if (counters) ++counters->lf_hits;
      cur.last.pos -= 1;
      cur.q = bwt_->lf(cur.q);
    } else {
      if (counters) ++counters->mismatches;
      if (bwt_->count(c) == 0) {
        cur.q = kNone;
        cur.last = {};
        ms[i] = cur.last;
        continue;
      }
      const auto around = bwt_->neighbors(c, cur.q);
      bool take_prev;
      if (around.prev == kNone) {
        take_prev = false;
      } else if (around.next == kNone) {
        take_prev = true;
      } else {
        // The prev candidate extends at least as far iff the first LCP
        // minimum between the two runs lies below row q.
        take_prev = thresholds_->first_min(c, around.prev_run) > cur.q;
      }
      if (trace) trace->push_back({cur.q, around.prev, around.next, cur.last.pos, take_prev});
      const auto row = take_prev ? around.prev : around.next;
      cur.last.pos = bwt_->sa_at_boundary(row) - 1;
      cur.q = bwt_->lf(row);
    }
    ms[i] = cur.last;
  }

  // Pass 2, left to right: each extension resumes one short of the previous
  // length, so the accesses telescope to O(m).
  const std::uint64_t body_end = slp_->size() - 1;
  std::uint64_t previous = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (ms[i].len == 0) {
      previous = 0;
      continue;
    }
    std::uint64_t k = previous > 0 ? previous - 1 : 0;
    while (i + k < m && ms[i].pos + k < body_end) {
      if (counters) ++counters->random_accesses;
      if (slp_->access(ms[i].pos + k) != pattern[i + k]) break;
      ++k;
    }
    ms[i].len = k;
    previous = k;
  }
  return ms;
}

std::vector<MsEntry> MsEngine::compute(const Pattern& pattern, Variant variant,
                                       QueryCounters* counters) const {
  return variant == Variant::two_pass ? two_pass(pattern, counters)
                                      : one_pass(pattern, variant, counters);
}

StreamSession::StreamSession(MsEngine engine, Variant variant) : engine_(engine) {
  if (variant == Variant::two_pass)
    throw Error(ErrorCode::invalid_argument, "streaming needs a one-pass variant");
  cursor_.variant = variant;
}

MsEntry StreamSession::push(Byte c) {
  if (c == kSentinel || c == kRecordSeparator)
    throw Error(ErrorCode::forbidden_byte, "stream byte is reserved");
  const auto e = engine_.push(cursor_, c, &counters_);
  if (e.len == 0) return e;
  // Reversed text r occupies [e.pos, e.pos + len); forward start is its mirror.
  const auto n = engine_.bwt().size();
  return {n - 1 - e.pos - e.len, e.len};
}

std::vector<Mem> extract_mems(std::span<const MsEntry> ms, std::uint64_t min_len) {
  std::vector<Mem> out;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (ms[i].len < min_len || ms[i].len == 0) continue;
    if (i > 0 && ms[i - 1].len == ms[i].len + 1) continue;
    out.push_back({i, ms[i].pos, ms[i].len});
  }
  return out;
}

}  // namespace msidx
