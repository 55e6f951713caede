#include "msidx/msidx.h"

#include <new>
#include <string>

#include "msidx/index.hpp"

struct msidx_index {
  msidx::MsIndex index;
};

struct msidx_stream {
  msidx::StreamSession session;
};

namespace {

thread_local std::string last_error;

msidx_status status_of(msidx::ErrorCode code) {
  using msidx::ErrorCode;
  switch (code) {
    case ErrorCode::format:
    case ErrorCode::version_mismatch:
      return MSIDX_ERR_FORMAT;
    case ErrorCode::io:
      return MSIDX_ERR_IO;
    case ErrorCode::not_a_boundary:
      return MSIDX_ERR_INTERNAL;
    default:
      return MSIDX_ERR_INVALID_INPUT;
  }
}

template <class F>
msidx_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return MSIDX_OK;
  } catch (const msidx::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return MSIDX_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return MSIDX_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw msidx::Error(msidx::ErrorCode::invalid_argument, what);
}

msidx::Variant to_variant(msidx_variant v) {
  switch (v) {
    case MSIDX_VARIANT_STD: return msidx::Variant::standard;
    case MSIDX_VARIANT_NAIVE: return msidx::Variant::naive;
    case MSIDX_VARIANT_HEUR: return msidx::Variant::heuristic;
    case MSIDX_VARIANT_TWOPASS: return msidx::Variant::two_pass;
  }
  throw msidx::Error(msidx::ErrorCode::invalid_argument, "unknown variant");
}

void accumulate(msidx_counters* out, const msidx::QueryCounters& c) {
  if (!out) return;
  out->steps += c.steps;
  out->lf_hits += c.lf_hits;
  out->mismatches += c.mismatches;
  out->restarts += c.restarts;
  out->lce_calls += c.lce_calls;
  out->lce_char_compares += c.lce_char_compares;
  out->lce_skips += c.lce_skips;
  out->random_accesses += c.random_accesses;
}

std::vector<msidx::MsEntry> gather(const uint64_t* pos, const uint64_t* len, size_t m) {
  require(m == 0 || (pos && len), "null matching statistics");
  std::vector<msidx::MsEntry> ms(m);
  for (size_t k = 0; k < m; ++k) ms[k] = {pos[k], len[k]};
  return ms;
}

}  // namespace

extern "C" {

const char* msidx_last_error(void) { return last_error.c_str(); }

const char* msidx_status_string(msidx_status status) {
  switch (status) {
    case MSIDX_OK: return "ok";
    case MSIDX_ERR_INTERNAL: return "internal error";
    case MSIDX_ERR_INVALID_INPUT: return "invalid input";
    case MSIDX_ERR_FORMAT: return "format or version mismatch";
    case MSIDX_ERR_IO: return "I/O error";
  }
  return "unknown status";
}

void msidx_build_options_default(msidx_build_options* opts) {
  if (!opts) return;
  const msidx::BuildOptions d;
  opts->mode = MSIDX_MODE_RAW;
  opts->window = d.pfp.window;
  opts->modulus = d.pfp.modulus;
  opts->reversed = 0;
  opts->with_locate = 0;
  opts->with_thresholds = 0;
}

msidx_status msidx_build(const uint8_t* data, size_t len, const msidx_build_options* opts,
                         msidx_index** out) {
  return guarded([&] {
    require(out != nullptr, "null output handle");
    require(data != nullptr || len == 0, "null input");
    msidx_build_options o;
    msidx_build_options_default(&o);
    if (opts) o = *opts;
    msidx::BuildOptions b;
    b.mode = o.mode == MSIDX_MODE_FASTA ? msidx::InputMode::fasta : msidx::InputMode::raw;
    b.pfp = {o.window, o.modulus};
    b.reversed = o.reversed != 0;
    b.with_locate = o.with_locate != 0;
    b.with_thresholds = o.with_thresholds != 0;
    *out = new msidx_index{msidx::MsIndex::build(std::span<const msidx::Byte>(data, len), b)};
  });
}

msidx_status msidx_load(const char* path, msidx_index** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new msidx_index{msidx::MsIndex::load(path)};
  });
}

msidx_status msidx_save(const msidx_index* idx, const char* path) {
  return guarded([&] {
    require(idx != nullptr && path != nullptr, "null argument");
    idx->index.save(path);
  });
}

void msidx_free(msidx_index* idx) { delete idx; }

msidx_status msidx_get_info(const msidx_index* idx, msidx_info* info) {
  return guarded([&] {
    require(idx != nullptr && info != nullptr, "null argument");
    const auto& p = idx->index.params();
    info->n = p.n;
    info->r = p.r;
    info->rule_count = p.rule_count;
    info->window = p.window;
    info->modulus = p.modulus;
    info->sigma = 0;
    for (auto h : p.histogram) info->sigma += h > 0 ? 1 : 0;
    const auto f = idx->index.flags();
    info->reversed = (f & msidx::index_flags::reversed) != 0;
    info->has_locate = (f & msidx::index_flags::has_locate) != 0;
    info->has_thresholds = (f & msidx::index_flags::has_thresholds) != 0;
  });
}

msidx_status msidx_matching_statistics(const msidx_index* idx, const uint8_t* pattern, size_t m,
                                       msidx_variant variant, uint64_t* pos_out,
                                       uint64_t* len_out, msidx_counters* counters) {
  return guarded([&] {
    require(idx != nullptr && pos_out != nullptr && len_out != nullptr, "null argument");
    require(pattern != nullptr || m == 0, "null pattern");
    const msidx::Pattern p(std::span<const msidx::Byte>(pattern, m));
    msidx::QueryCounters c;
    const auto ms = idx->index.matching_statistics(p, to_variant(variant), &c);
    for (size_t k = 0; k < m; ++k) {
      pos_out[k] = ms[k].pos;
      len_out[k] = ms[k].len;
    }
    accumulate(counters, c);
  });
}

msidx_status msidx_stream_open(const msidx_index* idx, msidx_variant variant, msidx_stream** out) {
  return guarded([&] {
    require(idx != nullptr && out != nullptr, "null argument");
    *out = new msidx_stream{idx->index.open_stream(to_variant(variant))};
  });
}

msidx_status msidx_stream_push(msidx_stream* s, uint8_t c, uint64_t* pos, uint64_t* len) {
  return guarded([&] {
    require(s != nullptr && pos != nullptr && len != nullptr, "null argument");
    const auto e = s->session.push(c);
    *pos = e.pos;
    *len = e.len;
  });
}

msidx_status msidx_stream_counters(const msidx_stream* s, msidx_counters* counters) {
  return guarded([&] {
    require(s != nullptr && counters != nullptr, "null argument");
    *counters = {};
    accumulate(counters, s->session.counters());
  });
}

void msidx_stream_close(msidx_stream* s) { delete s; }

msidx_status msidx_locate(const msidx_index* idx, const uint64_t* ms_pos, const uint64_t* ms_len,
                          size_t m, size_t i, size_t j, msidx_position_fn fn, void* ctx) {
  return guarded([&] {
    require(idx != nullptr && fn != nullptr, "null argument");
    const auto ms = gather(ms_pos, ms_len, m);
    const auto locator = idx->index.locator();
    auto cursor = locator.locate(ms, i, j);
    while (auto p = cursor.next()) {
      if (!fn(ctx, *p)) break;
    }
  });
}

msidx_status msidx_mems(const uint64_t* ms_pos, const uint64_t* ms_len, size_t m,
                        uint64_t min_len, msidx_mem_fn fn, void* ctx) {
  return guarded([&] {
    require(fn != nullptr, "null callback");
    const auto ms = gather(ms_pos, ms_len, m);
    for (const auto& mem : msidx::extract_mems(ms, min_len)) {
      if (!fn(ctx, mem.i, mem.pos, mem.len)) break;
    }
  });
}

}  // extern "C"
