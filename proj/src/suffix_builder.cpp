#include "msidx/suffix_builder.hpp"

#include <algorithm>
#include <numeric>

namespace msidx {

SuffixStructures build_suffix_structures(const Text& text) {
  const std::size_t n = text.size();
  SuffixStructures out;
  auto& sa = out.sa;
  auto& rank = out.isa;

  sa.resize(n);
  rank.resize(n);
  std::iota(sa.begin(), sa.end(), std::uint64_t{0});
  for (std::size_t i = 0; i < n; ++i) rank[i] = text[i];

  std::vector<std::uint64_t> next(n);
  for (std::size_t k = 1;; k <<= 1) {
    auto second = [&](std::uint64_t i) -> std::uint64_t {
      return i + k < n ? rank[i + k] + 1 : 0;
    };
    auto less = [&](std::uint64_t a, std::uint64_t b) {
      if (rank[a] != rank[b]) return rank[a] < rank[b];
      return second(a) < second(b);
    };
    std::sort(sa.begin(), sa.end(), less);

    next[sa[0]] = 0;
    for (std::size_t i = 1; i < n; ++i)
      next[sa[i]] = next[sa[i - 1]] + (less(sa[i - 1], sa[i]) ? 1 : 0);
    rank.swap(next);
    if (rank[sa[n - 1]] == n - 1) break;
  }

  // Kasai et al.
  auto& plcp = out.plcp;
  plcp.assign(n, 0);
  std::uint64_t h = 0;
  for (std::size_t p = 0; p < n; ++p) {
    if (rank[p] == 0) {
      h = 0;
      continue;
    }
    const std::uint64_t prev = sa[rank[p] - 1];
    while (p + h < n && prev + h < n && text[p + h] == text[prev + h]) ++h;
    plcp[p] = h;
    if (h > 0) --h;
  }
  out.lcp.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.lcp[i] = plcp[sa[i]];

  out.bwt.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.bwt[i] = sa[i] > 0 ? text[sa[i] - 1] : text[n - 1];
  return out;
}

namespace oracle {

std::vector<MsEntry> matching_statistics(const Text& text, std::span<const Byte> pattern) {
  // match[j] = length of the common prefix of pattern[i..] and text[j..],
  // filled for i = m-1 down to 0 from the row for i+1.
  const std::size_t n = text.size();
  const std::size_t m = pattern.size();
  std::vector<std::uint64_t> row(n + 1, 0), prev(n + 1, 0);
  std::vector<MsEntry> ms(m);
  for (std::size_t i = m; i-- > 0;) {
    MsEntry best;
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = pattern[i] == text[j] ? prev[j + 1] + 1 : 0;
      if (row[j] > best.len) best = {j, row[j]};
    }
    row[n] = 0;
    ms[i] = best;
    row.swap(prev);
  }
  return ms;
}

std::uint64_t lce(const Text& text, std::uint64_t i, std::uint64_t j) {
  std::uint64_t l = 0;
  while (i + l < text.size() && j + l < text.size() && text[i + l] == text[j + l]) ++l;
  return l;
}

std::vector<std::uint64_t> occurrences(const Text& text, std::span<const Byte> needle) {
  std::vector<std::uint64_t> out;
  const auto hay = text.bytes();
  if (needle.empty() || needle.size() > hay.size()) return out;
  for (std::size_t p = 0; p + needle.size() <= hay.size(); ++p) {
    if (std::equal(needle.begin(), needle.end(), hay.begin() + p)) out.push_back(p);
  }
  return out;
}

std::vector<std::uint64_t> suffix_match_lengths(const Text& text, std::span<const Byte> stream) {
  // row[e] = length of the common suffix of stream[..j] and body[..e].
  const auto body = text.body();
  std::vector<std::uint64_t> out(stream.size(), 0);
  std::vector<std::uint64_t> row(body.size() + 1, 0), prev(body.size() + 1, 0);
  for (std::size_t j = 0; j < stream.size(); ++j) {
    std::uint64_t best = 0;
    for (std::size_t e = 0; e < body.size(); ++e) {
      row[e + 1] = body[e] == stream[j] ? prev[e] + 1 : 0;
      best = std::max(best, row[e + 1]);
    }
    out[j] = best;
    row.swap(prev);
  }
  return out;
}

}  // namespace oracle

}  // namespace msidx
