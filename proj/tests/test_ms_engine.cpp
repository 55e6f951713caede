#include "doctest.h"

#include <type_traits>

#include "msidx/index.hpp"
#include "msidx/ms_engine.hpp"
#include "test_support.hpp"

using namespace msidx;
using msidx::testing::make_text;
using msidx::testing::PatternKind;

namespace {

std::vector<std::uint64_t> lens_of(const std::vector<MsEntry>& ms) {
  std::vector<std::uint64_t> out;
  for (auto e : ms) out.push_back(e.len);
  return out;
}

const Variant kAll[] = {Variant::standard, Variant::naive, Variant::heuristic, Variant::two_pass};

// The whole window extended by the next pattern character must not occur.
bool maximal(const Text& t, std::span<const Byte> p, const std::vector<MsEntry>& ms) {
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (i + ms[i].len >= p.size()) continue;
    if (!oracle::occurrences(t, p.subspan(i, ms[i].len + 1)).empty()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("variant names") {
  for (auto v : kAll) CHECK(parse_variant(to_string(v)) == v);
  CHECK_FALSE(parse_variant("fast").has_value());
}

TEST_CASE("worked example") {
  const auto t = make_text("CATTAG");
  const auto idx = MsIndex::build(t, testing::full_options());
  const Pattern p("GTTAC");
  for (auto v : kAll) {
    const auto ms = idx.matching_statistics(p, v);
    CHECK(lens_of(ms) == std::vector<std::uint64_t>{1, 3, 2, 1, 1});
    CHECK((ms[3].pos == 4 || ms[3].pos == 1));
    const auto want = oracle::matching_statistics(t, p.bytes());
    CHECK(testing::ms_valid(t, p.bytes(), ms, want));
    CHECK(maximal(t, p.bytes(), ms));
  }
  const auto ms = idx.matching_statistics(p, Variant::standard);
  CHECK(ms == std::vector<MsEntry>{{5, 1}, {2, 3}, {3, 2}, {4, 1}, {0, 1}});
}

TEST_CASE("the text itself matches completely") {
  const auto t = make_text("CATTAGCATGA");
  const auto idx = MsIndex::build(t, testing::full_options());
  const Pattern p(t.body());
  for (auto v : kAll) {
    const auto ms = idx.matching_statistics(p, v);
    for (std::size_t i = 0; i < ms.size(); ++i) CHECK(ms[i].len == ms.size() - i);
  }
}

TEST_CASE("restart behaviour") {
  const auto t = make_text("banana");
  const auto idx = MsIndex::build(t, testing::full_options());
  const auto engine = idx.engine();
  MsCursor cur;
  const auto b = engine.restart(cur, 'b');
  CHECK(b.len == 1);
  CHECK(t[b.pos] == 'b');
  const auto z = engine.restart(cur, 'z');
  CHECK(z == MsEntry{});
  for (auto v : kAll) {
    const auto ms = idx.matching_statistics(Pattern("xna"), v);
    CHECK(lens_of(ms) == std::vector<std::uint64_t>{0, 2, 1});
    CHECK(ms[0].pos == kNone);
  }
  for (auto v : kAll) {
    const auto ms = idx.matching_statistics(Pattern("anzab"), v);
    CHECK(lens_of(ms) == std::vector<std::uint64_t>{2, 1, 0, 1, 1});
  }
}

TEST_CASE("two_pass needs thresholds") {
  const auto idx = MsIndex::build(make_text("banana"), BuildOptions{});
  CHECK_THROWS_AS(idx.matching_statistics(Pattern("ana"), Variant::two_pass), Error);
  CHECK_THROWS_AS(idx.engine().one_pass(Pattern("ana"), Variant::two_pass), Error);
}

TEST_CASE("all variants agree with the oracle on random pairs") {
  auto rng = testing::make_rng(30);
  const PatternKind kinds[] = {PatternKind::random, PatternKind::substring, PatternKind::mutated,
                               PatternKind::absent};
  int pairs = 0;
  for (std::uint64_t sigma : {2, 4, 16}) {
    for (int rep = 0; rep < 8; ++rep) {
      std::uniform_int_distribution<std::size_t> len(1, 2000);
      const auto t = rep % 2 == 0 ? testing::random_text(rng, len(rng), sigma)
                                  : make_text(testing::repetitive_bytes(rng, 100, 10, sigma, 0.01));
      const auto idx = MsIndex::build(t, testing::full_options());
      for (auto kind : kinds) {
        std::uniform_int_distribution<std::size_t> mlen(1, 200);
        const auto raw = testing::random_pattern(rng, t, mlen(rng), sigma, kind);
        const Pattern p(raw);
        const auto want = oracle::matching_statistics(t, raw);
        for (auto v : kAll) {
          const auto ms = idx.matching_statistics(p, v);
          std::string why;
          CHECK_MESSAGE(testing::ms_valid(t, raw, ms, want, &why), to_string(v), ": ", why);
          CHECK(maximal(t, raw, ms));
        }
        ++pairs;
      }
    }
  }
  CHECK(pairs == 96);
}

TEST_CASE("heur never makes more LCE calls than std, naive compares at least as much") {
  auto rng = testing::make_rng(31);
  const auto t = make_text(testing::repetitive_bytes(rng, 500, 8, 4, 0.01));
  const auto idx = MsIndex::build(t, testing::full_options());
  for (int rep = 0; rep < 50; ++rep) {
    const Pattern p(testing::random_pattern(rng, t, 300, 4, PatternKind::mutated));
    QueryCounters std_c, heur_c, naive_c;
    const auto a = idx.matching_statistics(p, Variant::standard, &std_c);
    const auto b = idx.matching_statistics(p, Variant::heuristic, &heur_c);
    const auto c = idx.matching_statistics(p, Variant::naive, &naive_c);
    CHECK(lens_of(a) == lens_of(b));
    CHECK(lens_of(a) == lens_of(c));
    CHECK(heur_c.lce_calls <= std_c.lce_calls);
    CHECK(naive_c.lce_calls == std_c.lce_calls);
    CHECK(naive_c.lce_char_compares >= std_c.lce_char_compares);
  }
}

TEST_CASE("cursor invariant holds after every step") {
  auto rng = testing::make_rng(32);
  const auto t = make_text(testing::repetitive_bytes(rng, 200, 5, 4, 0.02));
  const auto ss = build_suffix_structures(t);
  const auto idx = MsIndex::build(t, testing::full_options());
  const auto engine = idx.engine();
  for (auto v : {Variant::standard, Variant::naive, Variant::heuristic}) {
    for (int rep = 0; rep < 20; ++rep) {
      const auto p = testing::random_pattern(rng, t, 100, 4, PatternKind::absent);
      MsCursor cur;
      cur.variant = v;
      bool ok = true;
      for (std::size_t i = p.size(); i-- > 0 && ok;) {
        const auto e = engine.push(cur, p[i]);
        if (e.len == 0) continue;
        ok = ss.sa[cur.q] == e.pos && t[ss.sa[cur.q]] == p[i] && idx.slp().access(e.pos) == p[i];
      }
      CHECK(ok);
    }
  }
}

TEST_CASE("threshold decisions pick a candidate of maximal extension") {
  auto rng = testing::make_rng(33);
  std::size_t decisions = 0, ties = 0;
  for (std::uint64_t sigma : {2, 4, 16}) {
    for (int rep = 0; rep < 5; ++rep) {
      const auto t = make_text(testing::repetitive_bytes(rng, 150, 6, sigma, 0.03));
      const auto ss = build_suffix_structures(t);
      const auto idx = MsIndex::build(t, testing::full_options());
      const auto engine = idx.engine();
      for (int k = 0; k < 20; ++k) {
        const Pattern p(testing::random_pattern(rng, t, 120, sigma, PatternKind::mutated));
        std::vector<MismatchDecision> trace;
        engine.two_pass(p, nullptr, &trace);
        for (const auto& d : trace) {
          if (d.prev == kNone || d.next == kNone) continue;
          ++decisions;
          REQUIRE(ss.sa[d.q] == d.pos);
          const auto up = oracle::lce(t, ss.sa[d.prev], d.pos);
          const auto down = oracle::lce(t, ss.sa[d.next], d.pos);
          // The same comparison through the full LCP array.
          std::uint64_t min_up = kNone, min_down = kNone;
          for (auto r = d.prev + 1; r <= d.q; ++r) min_up = std::min(min_up, ss.lcp[r]);
          for (auto r = d.q + 1; r <= d.next; ++r) min_down = std::min(min_down, ss.lcp[r]);
          CHECK(min_up == up);
          CHECK(min_down == down);
          ties += up == down;
          if (d.chose_prev) {
            CHECK(up >= down);
          } else {
            CHECK(down >= up);
          }
          if (up != down) CHECK(d.chose_prev == (up > down));
        }
      }
    }
  }
  CHECK(decisions > 100);
  MESSAGE(decisions, " threshold decisions, ", ties, " ties");
}

TEST_CASE("two_pass accesses telescope") {
  auto rng = testing::make_rng(34);
  const auto t = make_text(testing::repetitive_bytes(rng, 400, 8, 4, 0.01));
  const auto idx = MsIndex::build(t, testing::full_options());
  for (int rep = 0; rep < 50; ++rep) {
    const Pattern p(testing::random_pattern(rng, t, 400, 4, PatternKind::mutated));
    QueryCounters c;
    const auto ms = idx.matching_statistics(p, Variant::two_pass, &c);
    CHECK(c.random_accesses <= 3 * p.size());
    CHECK(lens_of(ms) == lens_of(idx.matching_statistics(p, Variant::standard)));
  }
}

TEST_CASE("substring patterns match fully without restarting") {
  auto rng = testing::make_rng(35);
  const auto t = testing::random_text(rng, 3000, 4);
  const auto idx = MsIndex::build(t, testing::full_options());
  for (int rep = 0; rep < 20; ++rep) {
    const Pattern p(testing::random_pattern(rng, t, 150, 4, PatternKind::substring));
    for (auto v : kAll) {
      QueryCounters c;
      const auto ms = idx.matching_statistics(p, v, &c);
      CHECK(c.steps == p.size());
      CHECK(c.lf_hits <= p.size() - 1);
      CHECK(c.restarts == 1);
      for (std::size_t i = 0; i < ms.size(); ++i) CHECK(ms[i].len == p.size() - i);
    }
  }
}

TEST_CASE("an LF hit needs the tracked row itself to carry the character") {
  // "xa" occurs, but the row reached for "a" is the suffix "ay$" preceded by 'z'.
  const auto idx = MsIndex::build(make_text("xayzay"), testing::full_options());
  for (auto v : kAll) {
    QueryCounters c;
    const auto ms = idx.matching_statistics(Pattern("xa"), v, &c);
    CHECK(ms[0] == MsEntry{0, 2});
    CHECK(c.lf_hits == 0);
  }
  QueryCounters c;
  idx.matching_statistics(Pattern("za"), Variant::standard, &c);
  CHECK(c.lf_hits == 1);
}

TEST_CASE("streaming examples") {
  const auto idx = MsIndex::build(make_text("banana"), BuildOptions{.reversed = true});
  auto s = idx.open_stream(Variant::standard);
  const auto a = s.push('n');
  const auto b = s.push('a');
  const auto c = s.push('n');
  const auto z = s.push('z');
  CHECK(a.len == 1);
  CHECK(b.len == 2);
  CHECK(c.len == 3);
  CHECK(z == MsEntry{});
  const auto banana = make_text("banana");
  const auto body = banana.body();
  CHECK(body[a.pos] == 'n');
  CHECK(Bytes(body.begin() + b.pos, body.begin() + b.pos + 2) == Bytes{'n', 'a'});
  CHECK(Bytes(body.begin() + c.pos, body.begin() + c.pos + 3) == Bytes{'n', 'a', 'n'});
  CHECK_THROWS_AS(s.push(0), Error);
  CHECK_THROWS_AS(s.push(1), Error);
  CHECK_THROWS_AS(MsIndex::build(make_text("banana"), BuildOptions{}).open_stream(Variant::standard),
                  Error);
  CHECK_THROWS_AS(idx.open_stream(Variant::two_pass), Error);
}

TEST_CASE("streamed lengths match the suffix oracle") {
  static_assert(std::is_trivially_copyable_v<StreamSession>);
  static_assert(sizeof(StreamSession) == sizeof(MsEngine) + sizeof(MsCursor) + sizeof(QueryCounters));
  auto rng = testing::make_rng(36);
  for (int rep = 0; rep < 30; ++rep) {
    const std::uint64_t sigma = rep % 3 == 0 ? 2 : rep % 3 == 1 ? 4 : 16;
    const auto t = make_text(testing::repetitive_bytes(rng, 80, 6, sigma, 0.03));
    const auto idx = MsIndex::build(t, BuildOptions{.pfp = kTestPfpParams, .reversed = true});
    const auto stream = testing::random_pattern(rng, t, 150, sigma, PatternKind::absent);
    const auto want = oracle::suffix_match_lengths(t, stream);
    for (auto v : {Variant::standard, Variant::naive, Variant::heuristic}) {
      auto s = idx.open_stream(v);
      bool ok = true;
      for (std::size_t j = 0; j < stream.size() && ok; ++j) {
        const auto e = s.push(stream[j]);
        ok = e.len == want[j];
        if (ok && e.len > 0) {
          ok = e.pos + e.len <= t.size() - 1 &&
               std::equal(stream.begin() + static_cast<std::ptrdiff_t>(j + 1 - e.len),
                          stream.begin() + static_cast<std::ptrdiff_t>(j + 1),
                          t.bytes().begin() + static_cast<std::ptrdiff_t>(e.pos));
        }
      }
      CHECK(ok);
    }
  }
}

TEST_CASE("mem extraction") {
  const std::vector<MsEntry> worked = {{5, 1}, {2, 3}, {3, 2}, {4, 1}, {0, 1}};
  const auto mems = extract_mems(worked, 1);
  REQUIRE(mems.size() == 3);
  CHECK(mems[0] == Mem{0, 5, 1});
  CHECK(mems[1] == Mem{1, 2, 3});
  CHECK(mems[2] == Mem{4, 0, 1});
  CHECK(extract_mems(worked, 4).empty());
  CHECK(extract_mems(worked, 2).size() == 1);
}

TEST_CASE("mems are exact and maximal on random pairs") {
  auto rng = testing::make_rng(37);
  for (int rep = 0; rep < 20; ++rep) {
    const auto t = make_text(testing::repetitive_bytes(rng, 100, 8, 4, 0.02));
    const auto idx = MsIndex::build(t, testing::full_options());
    const auto raw = testing::random_pattern(rng, t, 200, 4, PatternKind::mutated);
    const std::span<const Byte> p(raw);
    const auto ms = idx.matching_statistics(Pattern(raw), Variant::standard);
    const std::uint64_t min_len = 5;
    const auto mems = extract_mems(ms, min_len);
    std::size_t expected = 0;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const bool left_max = i == 0 || oracle::occurrences(t, p.subspan(i - 1, ms[i].len + 1)).empty();
      expected += ms[i].len >= min_len && left_max;
    }
    CHECK(mems.size() == expected);
    for (const auto& m : mems) {
      CHECK(std::equal(p.begin() + static_cast<std::ptrdiff_t>(m.i),
                       p.begin() + static_cast<std::ptrdiff_t>(m.i + m.len),
                       t.bytes().begin() + static_cast<std::ptrdiff_t>(m.pos)));
      if (m.i + m.len < p.size()) CHECK(oracle::occurrences(t, p.subspan(m.i, m.len + 1)).empty());
      if (m.i > 0) CHECK(oracle::occurrences(t, p.subspan(m.i - 1, m.len + 1)).empty());
    }
  }
}
