// msidx: build a matching-statistics index and query it from the shell.
//
//   msidx build    text.fa -o idx --mode fasta [--reversed] [--with-locate] [--with-thresholds]
//   msidx ms       idx patterns.txt [--variant std|naive|heur|twopass] [--format tsv|lens]
//   msidx stream   idx                     (stdin bytes -> one "pos<TAB>len" line each)
//   msidx locate   idx PATTERN i j
//   msidx mems     idx patterns.txt [--min-len 25]
//   msidx stats    idx [--with-query patterns.txt]
//   msidx bench    idx patterns.txt [--variants std,heur] [--repeat 3]

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "msidx/msidx.h"

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitIo = 4;

struct Failure {
  int code;
  std::string message;
};

void check(msidx_status s) {
  if (s != MSIDX_OK) throw Failure{static_cast<int>(s), msidx_last_error()};
}

struct IndexDeleter {
  void operator()(msidx_index* p) const { msidx_free(p); }
};
struct StreamDeleter {
  void operator()(msidx_stream* p) const { msidx_stream_close(p); }
};
using IndexHandle = std::unique_ptr<msidx_index, IndexDeleter>;
using StreamHandle = std::unique_ptr<msidx_stream, StreamDeleter>;

IndexHandle load_index(const std::string& path) {
  msidx_index* raw = nullptr;
  check(msidx_load(path.c_str(), &raw));
  return IndexHandle(raw);
}

msidx_info info_of(const msidx_index* idx) {
  msidx_info info{};
  check(msidx_get_info(idx, &info));
  return info;
}

std::string read_all(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitIo, "cannot open " + path};
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Failure{kExitIo, "read from " + path + " failed"};
  return data;
}

// One pattern per non-empty line, or one per record when the input is FASTA.
std::vector<std::string> read_patterns(const std::string& path) {
  const auto data = read_all(path);
  std::vector<std::string> out;
  std::istringstream in(data);
  std::string line;
  const auto first = data.find_first_not_of("\r\n");
  const bool fasta = first != std::string::npos && data[first] == '>';
  bool open = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (fasta) {
      if (!line.empty() && line[0] == '>') {
        out.emplace_back();
        open = true;
      } else if (open) {
        out.back() += line;
      }
    } else if (!line.empty()) {
      out.push_back(line);
    }
  }
  return out;
}

msidx_variant variant_of(const std::string& name) {
  if (name == "std") return MSIDX_VARIANT_STD;
  if (name == "naive") return MSIDX_VARIANT_NAIVE;
  if (name == "heur") return MSIDX_VARIANT_HEUR;
  if (name == "twopass") return MSIDX_VARIANT_TWOPASS;
  throw Failure{kExitInvalid, "unknown variant '" + name + "'"};
}

struct Ms {
  std::vector<uint64_t> pos, len;
};

Ms matching_statistics(const msidx_index* idx, const std::string& pattern, msidx_variant variant,
                       msidx_counters* counters) {
  Ms ms{std::vector<uint64_t>(pattern.size()), std::vector<uint64_t>(pattern.size())};
  check(msidx_matching_statistics(idx, reinterpret_cast<const uint8_t*>(pattern.data()),
                                  pattern.size(), variant, ms.pos.data(), ms.len.data(),
                                  counters));
  return ms;
}

std::string pos_text(uint64_t pos) { return pos == MSIDX_NONE ? std::string() : std::to_string(pos); }

void warn_if_reversed(const msidx_index* idx) {
  if (info_of(idx).reversed)
    std::cerr << "msidx: warning: index covers the reversed text; positions refer to it\n";
}

// ---------------------------------------------------------------------------

struct BuildArgs {
  std::string input, output, mode = "raw";
  uint64_t window = 10, modulus = 100;
  bool reversed = false, locate = false, thresholds = false;
};

void print_summary(const msidx_info& info) {
  std::cout << "n\t" << info.n << "\nr\t" << info.r << "\nrules\t" << info.rule_count << "\n";
}

int cmd_build(const BuildArgs& a) {
  const auto data = read_all(a.input);
  msidx_build_options opts;
  msidx_build_options_default(&opts);
  opts.mode = a.mode == "fasta" ? MSIDX_MODE_FASTA : MSIDX_MODE_RAW;
  opts.window = a.window;
  opts.modulus = a.modulus;
  opts.reversed = a.reversed;
  opts.with_locate = a.locate;
  opts.with_thresholds = a.thresholds;

  msidx_index* raw = nullptr;
  check(msidx_build(reinterpret_cast<const uint8_t*>(data.data()), data.size(), &opts, &raw));
  IndexHandle idx(raw);
  check(msidx_save(idx.get(), a.output.c_str()));
  print_summary(info_of(idx.get()));
  return 0;
}

struct MsArgs {
  std::string index, patterns, variant = "std", format = "tsv";
  unsigned threads = 1;
};

std::string format_block(std::size_t k, const Ms& ms, bool lens_only) {
  std::string out;
  if (lens_only) {
    for (std::size_t i = 0; i < ms.len.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(ms.len[i]);
    }
    out += '\n';
    return out;
  }
  out += '>' + std::to_string(k) + '\n';
  for (std::size_t i = 0; i < ms.len.size(); ++i)
    out += std::to_string(i) + '\t' + pos_text(ms.pos[i]) + '\t' + std::to_string(ms.len[i]) + '\n';
  return out;
}

int cmd_ms(const MsArgs& a) {
  if (a.format != "tsv" && a.format != "lens") throw Failure{kExitInvalid, "unknown format " + a.format};
  auto idx = load_index(a.index);
  warn_if_reversed(idx.get());
  const auto variant = variant_of(a.variant);
  const auto patterns = read_patterns(a.patterns);
  const bool lens = a.format == "lens";

  std::vector<std::string> blocks(patterns.size());
  std::vector<Failure> failures(patterns.size(), Failure{0, {}});
  auto work = [&](std::size_t from, std::size_t step) {
    for (std::size_t k = from; k < patterns.size(); k += step) {
      try {
        blocks[k] = format_block(k, matching_statistics(idx.get(), patterns[k], variant, nullptr), lens);
      } catch (const Failure& f) {
        failures[k] = f;
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(a.threads, patterns.size() ? patterns.size() : 1));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work, t, threads);
  work(0, threads);
  for (auto& th : pool) th.join();

  for (std::size_t k = 0; k < patterns.size(); ++k) {
    if (failures[k].code != 0) {
      std::cout.flush();
      throw Failure{failures[k].code, "pattern " + std::to_string(k) + ": " + failures[k].message};
    }
    std::cout << blocks[k];
  }
  return 0;
}

struct StreamArgs {
  std::string index, variant = "std";
  bool skip_newlines = false;
};

int cmd_stream(const StreamArgs& a) {
  auto idx = load_index(a.index);
  msidx_stream* raw = nullptr;
  check(msidx_stream_open(idx.get(), variant_of(a.variant), &raw));
  StreamHandle stream(raw);

  unsigned char c;
  for (;;) {
    const auto got = ::read(STDIN_FILENO, &c, 1);
    if (got == 0) break;
    if (got < 0) throw Failure{kExitIo, "read from stdin failed"};
    if (a.skip_newlines && (c == '\n' || c == '\r')) continue;
    uint64_t pos = 0, len = 0;
    check(msidx_stream_push(stream.get(), c, &pos, &len));
    std::printf("%s\t%llu\n", pos_text(pos).c_str(), static_cast<unsigned long long>(len));
    std::fflush(stdout);
  }
  return 0;
}

struct LocateArgs {
  std::string index, pattern;
  std::size_t i = 0, j = 0;
};

int cmd_locate(const LocateArgs& a) {
  auto idx = load_index(a.index);
  warn_if_reversed(idx.get());
  const auto ms = matching_statistics(idx.get(), a.pattern, MSIDX_VARIANT_STD, nullptr);
  std::vector<uint64_t> hits;
  check(msidx_locate(
      idx.get(), ms.pos.data(), ms.len.data(), a.pattern.size(), a.i, a.j,
      [](void* ctx, uint64_t p) {
        static_cast<std::vector<uint64_t>*>(ctx)->push_back(p);
        return 1;
      },
      &hits));
  std::sort(hits.begin(), hits.end());
  for (auto p : hits) std::cout << p << '\n';
  return 0;
}

struct MemsArgs {
  std::string index, patterns, variant = "std";
  uint64_t min_len = 25;
};

int cmd_mems(const MemsArgs& a) {
  auto idx = load_index(a.index);
  warn_if_reversed(idx.get());
  const auto variant = variant_of(a.variant);
  const auto patterns = read_patterns(a.patterns);
  for (std::size_t k = 0; k < patterns.size(); ++k) {
    const auto ms = matching_statistics(idx.get(), patterns[k], variant, nullptr);
    std::cout << '>' << k << '\n';
    check(msidx_mems(
        ms.pos.data(), ms.len.data(), patterns[k].size(), a.min_len,
        [](void*, uint64_t i, uint64_t pos, uint64_t len) {
          std::cout << i << '\t' << pos << '\t' << len << '\n';
          return 1;
        },
        nullptr));
  }
  return 0;
}

struct StatsArgs {
  std::string index, query, variant = "std";
};

int cmd_stats(const StatsArgs& a) {
  auto idx = load_index(a.index);
  const auto info = info_of(idx.get());
  print_summary(info);
  std::cout << "sigma\t" << info.sigma << "\nw\t" << info.window << "\np\t" << info.modulus
            << "\nreversed\t" << info.reversed << "\nlocate\t" << info.has_locate
            << "\nthresholds\t" << info.has_thresholds << '\n';
  if (a.query.empty()) return 0;

  const auto variant = variant_of(a.variant);
  const auto patterns = read_patterns(a.query);
  msidx_counters counters{};
  uint64_t total_len = 0, entries = 0, max_len = 0;
  for (const auto& p : patterns) {
    const auto ms = matching_statistics(idx.get(), p, variant, &counters);
    for (auto l : ms.len) {
      total_len += l;
      max_len = std::max(max_len, l);
    }
    entries += ms.len.size();
  }
  // The first character of each pattern always restarts, so it is excluded.
  const uint64_t eligible = counters.steps - patterns.size();
  char buf[64];
  std::cout << "patterns\t" << patterns.size() << '\n';
  std::snprintf(buf, sizeof buf, "%.2f", eligible ? 100.0 * counters.lf_hits / eligible : 0.0);
  std::cout << "lf_hit_percent\t" << buf << '\n';
  std::snprintf(buf, sizeof buf, "%.2f", entries ? static_cast<double>(total_len) / entries : 0.0);
  std::cout << "mean_len\t" << buf << "\nmax_len\t" << max_len << '\n';
  return 0;
}

struct BenchArgs {
  std::string index, patterns, variants = "std,naive,heur";
  unsigned repeat = 1;
};

int cmd_bench(const BenchArgs& a) {
  auto idx = load_index(a.index);
  const auto patterns = read_patterns(a.patterns);
  std::vector<std::pair<std::string, msidx_variant>> variants;
  std::stringstream list(a.variants);
  for (std::string name; std::getline(list, name, ',');) variants.emplace_back(name, variant_of(name));

  std::cout << "variant,pattern_id,micros,lce_calls,lce_skips,lf_hits\n";
  for (const auto& [name, variant] : variants) {
    for (std::size_t k = 0; k < patterns.size(); ++k) {
      for (unsigned rep = 0; rep < a.repeat; ++rep) {
        msidx_counters c{};
        const auto t0 = std::chrono::steady_clock::now();
        matching_statistics(idx.get(), patterns[k], variant, &c);
        const auto us = std::chrono::duration_cast<std::chrono::microseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
        std::cout << name << ',' << k << ',' << us << ',' << c.lce_calls << ',' << c.lce_skips
                  << ',' << c.lf_hits << '\n';
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matching statistics over a run-length BWT and a grammar-compressed text"};
  app.require_subcommand(1);

  BuildArgs build;
  auto* b = app.add_subcommand("build", "build an index from a text file");
  b->add_option("input", build.input, "text file, '-' for stdin")->required();
  b->add_option("-o,--output", build.output, "index file to write")->required();
  b->add_option("--mode", build.mode, "input format")->check(CLI::IsMember({"raw", "fasta"}));
  b->add_option("--w", build.window, "prefix-free parsing window")->check(CLI::Range(uint64_t{2}, uint64_t{1} << 20));
  b->add_option("--p", build.modulus, "prefix-free parsing modulus")->check(CLI::Range(uint64_t{2}, uint64_t{1} << 40));
  b->add_flag("--reversed", build.reversed, "index the reversed text (for stream)");
  b->add_flag("--with-locate", build.locate, "store phi samples for locate");
  b->add_flag("--with-thresholds", build.thresholds, "store thresholds for the twopass variant");

  MsArgs ms;
  auto* m = app.add_subcommand("ms", "matching statistics of each pattern");
  m->add_option("index", ms.index)->required();
  m->add_option("patterns", ms.patterns, "pattern file, '-' for stdin")->required();
  m->add_option("--variant", ms.variant)->check(CLI::IsMember({"std", "naive", "heur", "twopass"}));
  m->add_option("--format", ms.format)->check(CLI::IsMember({"tsv", "lens"}));
  m->add_option("--threads", ms.threads, "patterns processed concurrently")->check(CLI::Range(1u, 1024u));

  StreamArgs stream;
  auto* s = app.add_subcommand("stream", "stream stdin bytes against a reversed index");
  s->add_option("index", stream.index)->required();
  s->add_option("--variant", stream.variant)->check(CLI::IsMember({"std", "naive", "heur"}));
  s->add_flag("--skip-newlines", stream.skip_newlines, "ignore CR and LF bytes");

  LocateArgs locate;
  auto* l = app.add_subcommand("locate", "list occurrences of PATTERN[i..j]");
  l->add_option("index", locate.index)->required();
  l->add_option("pattern", locate.pattern)->required();
  l->add_option("i", locate.i)->required();
  l->add_option("j", locate.j)->required();

  MemsArgs mems;
  auto* e = app.add_subcommand("mems", "maximal exact matches of each pattern");
  e->add_option("index", mems.index)->required();
  e->add_option("patterns", mems.patterns)->required();
  e->add_option("--min-len", mems.min_len);
  e->add_option("--variant", mems.variant)->check(CLI::IsMember({"std", "naive", "heur", "twopass"}));

  StatsArgs stats;
  auto* t = app.add_subcommand("stats", "index summary, optionally with query statistics");
  t->add_option("index", stats.index)->required();
  t->add_option("--with-query", stats.query, "pattern file");
  t->add_option("--variant", stats.variant)->check(CLI::IsMember({"std", "naive", "heur", "twopass"}));

  BenchArgs bench;
  auto* k = app.add_subcommand("bench", "per-variant timings and counters as CSV");
  k->add_option("index", bench.index)->required();
  k->add_option("patterns", bench.patterns)->required();
  k->add_option("--variants", bench.variants, "comma-separated list");
  k->add_option("--repeat", bench.repeat)->check(CLI::Range(1u, 1000000u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? 0 : kExitInvalid;
  }

  try {
    if (*b) return cmd_build(build);
    if (*m) return cmd_ms(ms);
    if (*s) return cmd_stream(stream);
    if (*l) return cmd_locate(locate);
    if (*e) return cmd_mems(mems);
    if (*t) return cmd_stats(stats);
    if (*k) return cmd_bench(bench);
  } catch (const Failure& f) {
    std::cout.flush();
    std::cerr << "msidx: " << f.message << '\n';
    return f.code;
  }
  return 0;
}
