#include "msidx/index.hpp"

#include <cstring>
#include <fstream>
#include <iterator>

#include "byte_io.hpp"
#include "msidx/suffix_builder.hpp"

namespace msidx {

using detail::ByteReader;
using detail::ByteWriter;

MsIndex MsIndex::build(const Text& input, const BuildOptions& options) {
  const Text text = options.reversed ? input.reversed() : input;

  MsIndex idx;
  idx.flags_ = (options.reversed ? index_flags::reversed : 0) |
               (options.with_locate ? index_flags::has_locate : 0) |
               (options.with_thresholds ? index_flags::has_thresholds : 0);
  {
    const auto ss = build_suffix_structures(text);
    idx.bwt_ = RlBwt(ss);
    if (options.with_thresholds) idx.thresholds_ = build_thresholds(ss, idx.bwt_);
  }
  idx.slp_ = build_slp(text, options.pfp);
  if (options.with_locate) idx.samples_ = build_locate_samples(idx.bwt_);

  idx.params_.window = options.pfp.window;
  idx.params_.modulus = options.pfp.modulus;
  idx.params_.histogram = text.histogram();
  idx.params_.n = text.size();
  idx.params_.r = idx.bwt_.run_count();
  idx.params_.rule_count = idx.slp_.rule_count();
  return idx;
}

MsIndex MsIndex::build(std::span<const Byte> raw, const BuildOptions& options) {
  return build(validate_text(raw, options.mode), options);
}

MsEngine MsIndex::engine() const {
  return MsEngine(bwt_, slp_, thresholds_ ? &*thresholds_ : nullptr);
}

Locator MsIndex::locator() const {
  if (!samples_) throw Error(ErrorCode::missing_section, "index was built without locate samples");
  return Locator(*samples_, slp_);
}

StreamSession MsIndex::open_stream(Variant variant) const {
  if (!reversed())
    throw Error(ErrorCode::invalid_argument, "streaming needs an index built over the reversed text");
  return StreamSession(engine(), variant);
}

std::vector<MsEntry> MsIndex::matching_statistics(const Pattern& pattern, Variant variant,
                                                  QueryCounters* counters) const {
  return engine().compute(pattern, variant, counters);
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

Bytes write_bwt(const RlBwt& bwt) {
  ByteWriter w;
  w.u64(bwt.run_count());
  for (const auto& run : bwt.runs()) {
    w.u64(run.ch);
    w.u64(run.length);
    w.u64(run.sa_first);
    w.u64(run.sa_last);
  }
  return std::move(w).take();
}

RlBwt read_bwt(std::span<const Byte> blob) {
  ByteReader r(blob);
  const auto count = r.count(32);
  std::vector<BwtRun> runs;
  runs.reserve(count);
  std::uint64_t start = 0;
  for (std::uint64_t k = 0; k < count; ++k) {
    const auto ch = r.u64();
    if (ch > 0xFF) throw Error(ErrorCode::format, "BWT run character out of range");
    BwtRun run{static_cast<Byte>(ch), start, r.u64(), r.u64(), r.u64()};
    start += run.length;
    runs.push_back(run);
  }
  if (!r.done()) throw Error(ErrorCode::format, "trailing bytes in BWT section");
  return RlBwt(std::move(runs));
}

Bytes write_slp(const Slp& slp) {
  ByteWriter w;
  w.u64(slp.rule_count());
  w.u64(slp.root());
  for (const auto& rule : slp.rules()) {
    w.u64(rule.left);
    w.u64(rule.right);
  }
  return std::move(w).take();
}

Slp read_slp(std::span<const Byte> blob) {
  ByteReader r(blob);
  const auto count = r.u64();
  const auto root = r.u64();
  if (count > r.remaining() / 16 || count > Rule::kTerminal || root >= count)
    throw Error(ErrorCode::format, "bad grammar header");
  std::vector<Rule> rules;
  rules.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    const auto left = r.u64(), right = r.u64();
    if (left > Rule::kTerminal || right > Rule::kTerminal)
      throw Error(ErrorCode::format, "grammar symbol out of range");
    rules.push_back({static_cast<RuleId>(left), static_cast<RuleId>(right)});
  }
  if (!r.done()) throw Error(ErrorCode::format, "trailing bytes in grammar section");
  return Slp(std::move(rules), static_cast<RuleId>(root));
}

void write_points(ByteWriter& w, const std::vector<SamplePoint>& pts) {
  w.u64(pts.size());
  for (const auto& p : pts) {
    w.u64(p.text);
    w.u64(p.target);
  }
}

std::vector<SamplePoint> read_points(ByteReader& r) {
  const auto count = r.count(16);
  std::vector<SamplePoint> pts(count);
  for (auto& p : pts) {
    p.text = r.u64();
    p.target = r.u64();
  }
  return pts;
}

Bytes write_samples(const LocateSamples& s) {
  ByteWriter w;
  write_points(w, s.pred);
  write_points(w, s.succ);
  return std::move(w).take();
}

LocateSamples read_samples(std::span<const Byte> blob) {
  ByteReader r(blob);
  LocateSamples s;
  s.pred = read_points(r);
  s.succ = read_points(r);
  if (!r.done()) throw Error(ErrorCode::format, "trailing bytes in locate section");
  return s;
}

Bytes write_thresholds(const ThresholdTable& t) {
  ByteWriter w;
  for (int c = 0; c < 256; ++c) {
    const auto row = t.of(static_cast<Byte>(c));
    w.u64(row.size());
    for (auto v : row) w.u64(v);
  }
  return std::move(w).take();
}

ThresholdTable read_thresholds(std::span<const Byte> blob) {
  ByteReader r(blob);
  std::array<std::vector<std::uint64_t>, 256> rows;
  for (auto& row : rows) {
    row.resize(r.count(8));
    for (auto& v : row) v = r.u64();
  }
  if (!r.done()) throw Error(ErrorCode::format, "trailing bytes in threshold section");
  return ThresholdTable(std::move(rows));
}

}  // namespace

Bytes MsIndex::serialize() const {
  ByteWriter w;
  w.raw(std::span<const Byte>(reinterpret_cast<const Byte*>(kIndexMagic), sizeof kIndexMagic));
  w.u64(flags_);
  w.u64(params_.window);
  w.u64(params_.modulus);
  for (auto h : params_.histogram) w.u64(h);
  w.u64(params_.n);
  w.u64(params_.r);
  w.u64(params_.rule_count);
  w.blob(write_bwt(bwt_));
  w.blob(write_slp(slp_));
  if (samples_) w.blob(write_samples(*samples_));
  if (thresholds_) w.blob(write_thresholds(*thresholds_));
  return std::move(w).take();
}

MsIndex MsIndex::deserialize(std::span<const Byte> bytes) {
  ByteReader r(bytes);
  if (bytes.size() < sizeof kIndexMagic) throw Error(ErrorCode::format, "not an index file");
  const auto magic = r.raw(sizeof kIndexMagic);
  if (std::memcmp(magic.data(), kIndexMagic, sizeof kIndexMagic) != 0) {
    if (std::memcmp(magic.data(), kIndexMagic, 5) == 0)
      throw Error(ErrorCode::version_mismatch, "unsupported index version");
    throw Error(ErrorCode::format, "not an index file");
  }

  MsIndex idx;
  idx.flags_ = r.u64();
  if (idx.flags_ & ~index_flags::all) throw Error(ErrorCode::format, "unknown index flags");
  auto& p = idx.params_;
  p.window = r.u64();
  p.modulus = r.u64();
  for (auto& h : p.histogram) h = r.u64();
  p.n = r.u64();
  p.r = r.u64();
  p.rule_count = r.u64();

  idx.bwt_ = read_bwt(r.blob());
  idx.slp_ = read_slp(r.blob());
  if (idx.flags_ & index_flags::has_locate) idx.samples_ = read_samples(r.blob());
  if (idx.flags_ & index_flags::has_thresholds) idx.thresholds_ = read_thresholds(r.blob());
  if (!r.done()) throw Error(ErrorCode::format, "unknown trailing section");

  if (idx.bwt_.size() != p.n || idx.slp_.size() != p.n || idx.bwt_.run_count() != p.r ||
      idx.slp_.rule_count() != p.rule_count)
    throw Error(ErrorCode::format, "index sections disagree with the header");
  if (idx.samples_) {
    const auto& s = *idx.samples_;
    if (s.pred.size() != p.r || s.succ.size() != p.r)
      throw Error(ErrorCode::format, "locate samples disagree with the run count");
    for (const auto* pts : {&s.pred, &s.succ}) {
      for (std::size_t k = 0; k < pts->size(); ++k) {
        const auto& pt = (*pts)[k];
        if (pt.text >= p.n || (pt.target != kNone && pt.target >= p.n) ||
            (k > 0 && (*pts)[k - 1].text >= pt.text))
          throw Error(ErrorCode::format, "bad locate sample");
      }
    }
  }
  if (idx.thresholds_) {
    for (int c = 0; c < 256; ++c) {
      const auto runs = idx.bwt_.runs_of(static_cast<Byte>(c)).size();
      const auto row = idx.thresholds_->of(static_cast<Byte>(c));
      if (row.size() != (runs > 0 ? runs - 1 : 0))
        throw Error(ErrorCode::format, "threshold table disagrees with the BWT");
      for (auto t : row) {
        if (t >= p.n) throw Error(ErrorCode::format, "threshold outside the BWT");
      }
    }
  }
  return idx;
}

void MsIndex::save(const std::filesystem::path& path) const {
  const auto bytes = serialize();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::io, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::io, "write to " + path.string() + " failed");
}

MsIndex MsIndex::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  const Bytes bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::io, "read from " + path.string() + " failed");
  return deserialize(bytes);
}

}  // namespace msidx
