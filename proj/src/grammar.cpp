#include "msidx/grammar.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace msidx {

namespace {

constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;
constexpr std::uint64_t kHashBase = 256;

std::uint64_t mulmod61(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 prod = static_cast<unsigned __int128>(a) * b;
  std::uint64_t r = static_cast<std::uint64_t>(prod & kMersenne61) +
                    static_cast<std::uint64_t>(prod >> 61);
  if (r >= kMersenne61) r -= kMersenne61;
  return r;
}

std::uint64_t addmod61(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;
  if (r >= kMersenne61) r -= kMersenne61;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Prefix-free parsing

PfpOutput pfp_parse(const Text& text, PfpParams params) {
  const std::uint64_t w = params.window;
  if (w < 2 || params.modulus < 2)
    throw Error(ErrorCode::invalid_argument, "PFP needs window >= 2 and modulus >= 2");

  const auto body = text.bytes();
  const std::uint64_t n = body.size();
  Bytes padded(w, kPadding);
  padded.insert(padded.end(), body.begin(), body.end());
  padded.insert(padded.end(), w, kPadding);
  const std::uint64_t total = padded.size();

  // Inclusive end offsets (in padded coordinates) of the trigger windows.
  std::vector<std::uint64_t> triggers{w - 1};
  if (n >= w) {
    std::uint64_t top = 1;  // base^(w-1)
    for (std::uint64_t k = 1; k < w; ++k) top = mulmod61(top, kHashBase);
    std::uint64_t fp = 0;
    for (std::uint64_t k = 0; k < n; ++k) {
      if (k >= w) fp = addmod61(fp, kMersenne61 - mulmod61(body[k - w], top));
      fp = addmod61(mulmod61(fp, kHashBase), body[k]);
      if (k + 1 >= w && fp % params.modulus == 0) triggers.push_back(k + w);
    }
  }
  if (triggers.back() != total - 1) triggers.push_back(total - 1);

  std::vector<Bytes> phrases;
  phrases.reserve(triggers.size() - 1);
  for (std::size_t t = 0; t + 1 < triggers.size(); ++t) {
    const auto from = triggers[t] + 1 - w;
    phrases.emplace_back(padded.begin() + static_cast<std::ptrdiff_t>(from),
                         padded.begin() + static_cast<std::ptrdiff_t>(triggers[t + 1] + 1));
  }

  std::map<Bytes, std::uint32_t> ids;
  for (const auto& ph : phrases) ids.emplace(ph, 0);
  PfpOutput out{w, params.modulus, {}, {}};
  out.dictionary.reserve(ids.size());
  for (auto& [ph, id] : ids) {
    id = static_cast<std::uint32_t>(out.dictionary.size());
    out.dictionary.push_back(ph);
  }
  out.parse.reserve(phrases.size());
  for (const auto& ph : phrases) out.parse.push_back(ids.at(ph));
  return out;
}

Bytes pfp_reconstruct(const PfpOutput& pfp) {
  Bytes out;
  for (std::size_t k = 0; k < pfp.parse.size(); ++k) {
    const auto& ph = pfp.dictionary.at(pfp.parse[k]);
    out.insert(out.end(), ph.begin() + (k == 0 ? 0 : static_cast<std::ptrdiff_t>(pfp.window)),
               ph.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Straight-line program

Slp::Slp(std::vector<Rule> rules, RuleId root) : rules_(std::move(rules)), root_(root) {
  if (rules_.empty() || root_ >= rules_.size())
    throw Error(ErrorCode::format, "grammar root out of range");
  exp_len_.resize(rules_.size());
  std::vector<std::uint64_t> depth(rules_.size(), 0);
  for (std::size_t r = 0; r < rules_.size(); ++r) {
    const auto& rule = rules_[r];
    if (rule.terminal()) {
      if (rule.left > 0xFF) throw Error(ErrorCode::format, "terminal outside byte range");
      exp_len_[r] = 1;
      continue;
    }
    if (rule.left >= r || rule.right >= r)
      throw Error(ErrorCode::format, "grammar rule " + std::to_string(r) + " is not topologically ordered");
    exp_len_[r] = exp_len_[rule.left] + exp_len_[rule.right];
    depth[r] = 1 + std::max(depth[rule.left], depth[rule.right]);
  }
  depth_ = depth[root_];
}

Byte Slp::access(std::uint64_t i) const {
  if (i >= size())
    throw Error(ErrorCode::out_of_bounds, "access at " + std::to_string(i) + " past text end");
  RuleId r = root_;
  while (!rules_[r].terminal()) {
    const auto& rule = rules_[r];
    if (i < exp_len_[rule.left]) {
      r = rule.left;
    } else {
      i -= exp_len_[rule.left];
      r = rule.right;
    }
  }
  return static_cast<Byte>(rules_[r].left);
}

namespace {

// Remaining suffix of the text as a stack of subtrees; the back subtree
// expands first.
class SuffixCursor {
 public:
  SuffixCursor(const Slp& slp, std::uint64_t i) : slp_(slp) {
    stack_.reserve(slp.depth() + 2);
    RuleId r = slp.root();
    const auto rules = slp.rules();
    while (i > 0) {
      const auto& rule = rules[r];
      const auto left_len = slp.expansion_length(rule.left);
      if (i < left_len) {
        stack_.push_back(rule.right);
        r = rule.left;
      } else {
        i -= left_len;
        r = rule.right;
      }
    }
    stack_.push_back(r);
  }

  bool done() const noexcept { return stack_.empty(); }
  RuleId top() const noexcept { return stack_.back(); }
  void pop() noexcept { stack_.pop_back(); }

  void expand() {
    const auto rule = slp_.rules()[stack_.back()];
    stack_.back() = rule.right;
    stack_.push_back(rule.left);
  }

  Byte next_char() {
    while (!slp_.rules()[stack_.back()].terminal()) expand();
    const auto b = static_cast<Byte>(slp_.rules()[stack_.back()].left);
    stack_.pop_back();
    return b;
  }

 private:
  const Slp& slp_;
  std::vector<RuleId> stack_;
};

void check_positions(const Slp& slp, std::uint64_t i, std::uint64_t j) {
  if (i >= slp.size() || j >= slp.size())
    throw Error(ErrorCode::out_of_bounds, "LCE position past text end");
}

}  // namespace

Bytes Slp::extract(std::uint64_t i, std::uint64_t len) const {
  if (i > size() || len > size() - i)
    throw Error(ErrorCode::out_of_bounds, "extract range past text end");
  Bytes out;
  if (len == 0) return out;
  out.reserve(len);
  SuffixCursor cur(*this, i);
  while (out.size() < len) out.push_back(cur.next_char());
  return out;
}

RuleId SlpBuilder::terminal(Byte b) {
  auto [it, fresh] = terminals_.emplace(b, static_cast<RuleId>(rules_.size()));
  if (fresh) rules_.push_back({b, Rule::kTerminal});
  return it->second;
}

RuleId SlpBuilder::pair(RuleId left, RuleId right) {
  const auto key = (std::uint64_t{left} << 32) | right;
  auto [it, fresh] = pairs_.emplace(key, static_cast<RuleId>(rules_.size()));
  if (fresh) rules_.push_back({left, right});
  return it->second;
}

Slp SlpBuilder::finish(RuleId root) && { return Slp(std::move(rules_), root); }

// ---------------------------------------------------------------------------
// RePair

namespace {

constexpr RuleId kBoundary = 0xFFFFFFFFu;  // separates independent sequences
constexpr RuleId kDeleted = 0xFFFFFFFEu;
constexpr std::uint32_t kNil = 0xFFFFFFFFu;

class Repair {
 public:
  Repair(std::span<const std::vector<RuleId>> sequences, SlpBuilder& builder)
      : builder_(builder) {
    for (const auto& seq : sequences) {
      if (!sym_.empty()) sym_.push_back(kBoundary);
      sym_.insert(sym_.end(), seq.begin(), seq.end());
    }
    const auto len = static_cast<std::uint32_t>(sym_.size());
    prev_.resize(len);
    next_.resize(len);
    for (std::uint32_t i = 0; i < len; ++i) {
      prev_[i] = i == 0 ? kNil : i - 1;
      next_[i] = i + 1 == len ? kNil : i + 1;
    }
    for (std::uint32_t i = 0; i + 1 < len; ++i) {
      if (pairable(sym_[i]) && pairable(sym_[i + 1])) add(key(sym_[i], sym_[i + 1]), i);
    }
  }

  std::size_t run() {
    std::size_t created = 0;
    while (!queue_.empty()) {
      const auto [cnt, k] = *queue_.begin();
      queue_.erase(queue_.begin());
      const RuleId a = static_cast<RuleId>(k >> 32);
      const RuleId b = static_cast<RuleId>(k & 0xFFFFFFFFu);

      auto positions = std::move(occ_[k]);
      occ_.erase(k);
      std::sort(positions.begin(), positions.end());
      positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
      std::vector<std::uint32_t> valid, chosen;
      for (auto i : positions) {
        const auto j = next_[i];
        if (sym_[i] != a || j == kNil || sym_[j] != b) continue;
        valid.push_back(i);
        if (!chosen.empty() && next_[chosen.back()] == i) continue;  // overlaps in a run
        chosen.push_back(i);
      }
      if (chosen.size() < 2) {
        // Only overlapping copies remain; keep them for later counts.
        occ_[k] = std::move(valid);
        continue;
      }
      count_.erase(k);

      const auto before = builder_.size();
      const RuleId x = builder_.pair(a, b);
      created += builder_.size() - before;

      for (auto i : chosen) {
        const auto j = next_[i];
        const auto h = prev_[i];
        const auto t = next_[j];
        if (h != kNil && pairable(sym_[h])) drop(key(sym_[h], a), k);
        if (t != kNil && pairable(sym_[t])) drop(key(b, sym_[t]), k);
        sym_[i] = x;
        sym_[j] = kDeleted;
        next_[i] = t;
        if (t != kNil) prev_[t] = i;
        if (h != kNil && pairable(sym_[h])) add(key(sym_[h], x), h);
        if (t != kNil && pairable(sym_[t])) add(key(x, sym_[t]), i);
      }
    }
    return created;
  }

  // Leftover symbols of each input sequence, in order.
  std::vector<std::vector<RuleId>> remaining() const {
    std::vector<std::vector<RuleId>> out(1);
    for (std::uint32_t i = 0; i != kNil && i < sym_.size(); i = next_[i]) {
      if (sym_[i] == kBoundary) {
        out.emplace_back();
      } else {
        out.back().push_back(sym_[i]);
      }
    }
    return out;
  }

 private:
  static bool pairable(RuleId s) noexcept { return s != kBoundary && s != kDeleted; }
  static std::uint64_t key(RuleId a, RuleId b) noexcept { return (std::uint64_t{a} << 32) | b; }

  struct ByFrequency {
    bool operator()(const std::pair<std::uint64_t, std::uint64_t>& x,
                    const std::pair<std::uint64_t, std::uint64_t>& y) const noexcept {
      if (x.first != y.first) return x.first > y.first;
      return x.second < y.second;
    }
  };

  void add(std::uint64_t k, std::uint32_t pos) {
    auto& c = count_[k];
    if (c >= 2) queue_.erase({c, k});
    ++c;
    if (c >= 2) queue_.insert({c, k});
    occ_[k].push_back(pos);
  }

  void drop(std::uint64_t k, std::uint64_t current) {
    if (k == current) return;
    auto it = count_.find(k);
    if (it == count_.end() || it->second == 0) return;
    auto& c = it->second;
    if (c >= 2) queue_.erase({c, k});
    --c;
    if (c >= 2) queue_.insert({c, k});
  }

  SlpBuilder& builder_;
  std::vector<RuleId> sym_;
  std::vector<std::uint32_t> prev_, next_;
  std::unordered_map<std::uint64_t, std::uint64_t> count_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> occ_;
  std::set<std::pair<std::uint64_t, std::uint64_t>, ByFrequency> queue_;
};

RuleId join(std::vector<RuleId> level, SlpBuilder& builder) {
  while (level.size() > 1) {
    std::vector<RuleId> up;
    up.reserve((level.size() + 1) / 2);
    for (std::size_t i = 0; i < level.size(); i += 2) {
      up.push_back(i + 1 < level.size() ? builder.pair(level[i], level[i + 1]) : level[i]);
    }
    level.swap(up);
  }
  return level.front();
}

}  // namespace

std::vector<RuleId> repair_compress_many(std::span<const std::vector<RuleId>> sequences,
                                         SlpBuilder& builder, RepairResult* totals) {
  for (const auto& seq : sequences) {
    if (seq.empty()) throw Error(ErrorCode::invalid_argument, "RePair input sequence is empty");
  }
  if (sequences.empty()) return {};

  Repair repair(sequences, builder);
  const auto replaced = repair.run();

  const auto before = builder.size();
  std::vector<RuleId> roots;
  roots.reserve(sequences.size());
  for (auto& rest : repair.remaining()) roots.push_back(join(std::move(rest), builder));
  if (totals) {
    totals->replacement_rules += replaced;
    totals->chaining_rules += builder.size() - before;
    totals->root = roots.back();
  }
  return roots;
}

RepairResult repair_compress(std::span<const RuleId> sequence, SlpBuilder& builder) {
  const std::vector<RuleId> seqs[1] = {std::vector<RuleId>(sequence.begin(), sequence.end())};
  RepairResult result;
  repair_compress_many(seqs, builder, &result);
  return result;
}

Slp build_slp(const Text& text, PfpParams params) {
  const auto pfp = pfp_parse(text, params);
  const auto w = static_cast<std::ptrdiff_t>(pfp.window);
  SlpBuilder builder;

  // Each phrase contributes everything but its trailing window (the next
  // phrase repeats it); the padding in the first and last phrase goes away.
  std::vector<std::vector<RuleId>> trimmed;
  std::vector<std::int64_t> phrase_slot(pfp.dictionary.size(), -1);
  for (std::size_t d = 0; d < pfp.dictionary.size(); ++d) {
    const auto& ph = pfp.dictionary[d];
    auto from = ph.begin();
    while (from != ph.end() && *from == kPadding) ++from;
    auto to = ph.end() - w;
    if (from >= to) continue;
    std::vector<RuleId> seq;
    seq.reserve(static_cast<std::size_t>(to - from));
    for (auto it = from; it != to; ++it) seq.push_back(builder.terminal(*it));
    phrase_slot[d] = static_cast<std::int64_t>(trimmed.size());
    trimmed.push_back(std::move(seq));
  }

  const auto phrase_roots = repair_compress_many(trimmed, builder);
  std::vector<RuleId> parse;
  parse.reserve(pfp.parse.size());
  for (auto d : pfp.parse) {
    if (phrase_slot[d] >= 0) parse.push_back(phrase_roots[static_cast<std::size_t>(phrase_slot[d])]);
  }
  const auto top = repair_compress(parse, builder);
  return std::move(builder).finish(top.root);
}

// ---------------------------------------------------------------------------
// LCE

std::uint64_t lce(const Slp& slp, std::uint64_t i, std::uint64_t j, LceStats* stats) {
  check_positions(slp, i, j);
  if (stats) ++stats->calls;
  if (i == j) return slp.size() - i;

  const auto rules = slp.rules();
  SuffixCursor a(slp, i), b(slp, j);
  std::uint64_t matched = 0, compares = 0, skips = 0;
  while (!a.done() && !b.done()) {
    const RuleId x = a.top(), y = b.top();
    const auto lx = slp.expansion_length(x), ly = slp.expansion_length(y);
    if (x == y) {
      matched += lx;
      (lx == 1 ? compares : skips) += 1;
      a.pop();
      b.pop();
    } else if (lx == 1 && ly == 1) {
      ++compares;
      if (rules[x].left != rules[y].left) break;
      ++matched;
      a.pop();
      b.pop();
    } else if (lx > ly) {
      a.expand();
    } else if (ly > lx) {
      b.expand();
    } else {
      a.expand();
      b.expand();
    }
  }
  if (stats) {
    stats->char_compares += compares;
    stats->skips += skips;
  }
  return matched;
}

std::uint64_t lce_naive(const Slp& slp, std::uint64_t i, std::uint64_t j, LceStats* stats) {
  check_positions(slp, i, j);
  if (stats) ++stats->calls;
  if (i == j) return slp.size() - i;

  SuffixCursor a(slp, i), b(slp, j);
  std::uint64_t matched = 0, compares = 0;
  while (!a.done() && !b.done()) {
    ++compares;
    if (a.next_char() != b.next_char()) break;
    ++matched;
  }
  if (stats) stats->char_compares += compares;
  return matched;
}

}  // namespace msidx
