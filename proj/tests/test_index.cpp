#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "msidx/index.hpp"
#include "test_support.hpp"

using namespace msidx;
using msidx::testing::make_text;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::io;
}

// Observable answers of an index on a fixed set of queries.
std::vector<std::uint64_t> probe(const MsIndex& idx, std::uint64_t salt) {
  std::vector<std::uint64_t> out;
  auto rng = testing::make_rng(salt);
  const auto n = idx.params().n;
  for (int k = 0; k < 10; ++k) {
    std::uniform_int_distribution<std::size_t> len(1, 60);
    const Pattern p(testing::random_bytes(rng, len(rng), 4));
    for (auto v : {Variant::standard, Variant::naive, Variant::heuristic, Variant::two_pass}) {
      if (v == Variant::two_pass && !idx.thresholds()) continue;
      for (auto e : idx.matching_statistics(p, v)) {
        out.push_back(e.pos);
        out.push_back(e.len);
      }
    }
    if (idx.locate_samples()) {
      const auto ms = idx.matching_statistics(p, Variant::standard);
      for (auto pos : idx.locator().locate(ms, 0, 0).collect()) out.push_back(pos);
    }
  }
  std::uniform_int_distribution<std::uint64_t> pos(0, n - 1);
  for (int k = 0; k < 200; ++k) {
    const auto i = pos(rng), j = pos(rng);
    out.push_back(lce(idx.slp(), i, j));
    out.push_back(idx.slp().access(i));
    if (idx.locate_samples()) {
      const auto loc = idx.locator();
      out.push_back(loc.phi(i));
      out.push_back(loc.phi_inv(i));
      out.push_back(loc.plcp(i));
    }
  }
  return out;
}

std::filesystem::path temp_path(const char* name) {
  return std::filesystem::temp_directory_path() / (std::string("msidx_test_") + name);
}

}  // namespace

TEST_CASE("header fields") {
  const auto idx = MsIndex::build(make_text("banana"), testing::full_options());
  CHECK(idx.params().n == 7);
  CHECK(idx.params().r == 5);
  CHECK(idx.params().histogram['a'] == 3);
  CHECK(idx.params().window == kTestPfpParams.window);
  CHECK(idx.flags() == (index_flags::has_locate | index_flags::has_thresholds));
  const auto bytes = idx.serialize();
  CHECK(std::equal(bytes.begin(), bytes.begin() + 8, "MSIDX001"));
  CHECK(bytes[8] == index_flags::has_locate + index_flags::has_thresholds);
}

TEST_CASE("round trip keeps every answer") {
  auto rng = testing::make_rng(60);
  for (int rep = 0; rep < 6; ++rep) {
    BuildOptions o;
    o.pfp = rep % 2 ? PfpParams{10, 100} : kTestPfpParams;
    o.with_locate = rep % 3 != 0;
    o.with_thresholds = rep % 2 == 0;
    o.reversed = rep == 5;
    const auto t = make_text(testing::repetitive_bytes(rng, 300, 5, 4, 0.02));
    const auto idx = MsIndex::build(t, o);
    const auto again = MsIndex::deserialize(idx.serialize());
    CHECK(again.flags() == idx.flags());
    CHECK(again.params() == idx.params());
    CHECK(again.locate_samples() == idx.locate_samples());
    CHECK(again.thresholds() == idx.thresholds());
    CHECK(again.serialize() == idx.serialize());
    CHECK(probe(again, 100 + rep) == probe(idx, 100 + rep));
  }
}

TEST_CASE("save and load") {
  const auto path = temp_path("roundtrip.idx");
  const auto idx = MsIndex::build(make_text("CATTAGCATTAG"), testing::full_options());
  idx.save(path);
  const auto loaded = MsIndex::load(path);
  CHECK(probe(loaded, 7) == probe(idx, 7));
  std::filesystem::remove(path);
  CHECK(code_of([&] { MsIndex::load(path); }) == ErrorCode::io);
}

TEST_CASE("corrupt files are rejected") {
  const auto good = MsIndex::build(make_text("banana"), testing::full_options()).serialize();

  auto version = good;
  version[7] = '2';
  CHECK(code_of([&] { MsIndex::deserialize(version); }) == ErrorCode::version_mismatch);

  auto magic = good;
  magic[0] = 'X';
  CHECK(code_of([&] { MsIndex::deserialize(magic); }) == ErrorCode::format);

  auto trailing = good;
  trailing.insert(trailing.end(), 8, 0);
  CHECK(code_of([&] { MsIndex::deserialize(trailing); }) == ErrorCode::format);

  auto flags = good;
  flags[8] |= 0x10;
  CHECK(code_of([&] { MsIndex::deserialize(flags); }) == ErrorCode::format);

  for (std::size_t cut : {std::size_t{0}, std::size_t{5}, std::size_t{12}, good.size() / 2,
                          good.size() - 1}) {
    const Bytes truncated(good.begin(), good.begin() + static_cast<std::ptrdiff_t>(cut));
    CHECK(code_of([&] { MsIndex::deserialize(truncated); }) == ErrorCode::format);
  }

  // Dropping a flag leaves its section behind as unknown trailing data.
  auto missing = good;
  missing[8] &= static_cast<Byte>(~index_flags::has_thresholds);
  CHECK(code_of([&] { MsIndex::deserialize(missing); }) == ErrorCode::format);
}

TEST_CASE("flipped bytes never crash the loader") {
  const auto good = MsIndex::build(make_text("CATTAGCATTAGGA"), testing::full_options()).serialize();
  auto rng = testing::make_rng(61);
  std::uniform_int_distribution<std::size_t> where(8, good.size() - 1);
  std::uniform_int_distribution<int> byte(0, 255);
  for (int rep = 0; rep < 300; ++rep) {
    auto bad = good;
    bad[where(rng)] = static_cast<Byte>(byte(rng));
    try {
      const auto idx = MsIndex::deserialize(bad);
      (void)idx.params();
    } catch (const Error& e) {
      CHECK((e.code() == ErrorCode::format || e.code() == ErrorCode::version_mismatch));
    }
  }
}

TEST_CASE("fasta and raw bytes through build") {
  const std::string fasta = ">a\nAC\nGT\n>b\nTT\n";
  BuildOptions o;
  o.mode = InputMode::fasta;
  const auto idx = MsIndex::build(as_bytes(fasta), o);
  CHECK(idx.params().n == 8);
  CHECK(idx.params().histogram[kRecordSeparator] == 1);
  const auto ms = idx.matching_statistics(Pattern("GTT"), Variant::standard);
  CHECK(ms[0].len == 2);
  CHECK(code_of([] { MsIndex::build(as_bytes(""), BuildOptions{}); }) == ErrorCode::empty_input);
}
