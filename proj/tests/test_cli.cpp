#include "doctest.h"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "process.hpp"

using msidx::testing::Child;
using msidx::testing::run;
namespace fs = std::filesystem;

namespace {

const std::string kCli = MSIDX_CLI_PATH;

class Workdir {
 public:
  Workdir() {
    dir_ = fs::temp_directory_path() / ("msidx_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  ~Workdir() { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& content) const {
    const auto p = path(name);
    std::ofstream(p, std::ios::binary) << content;
    return p;
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  fs::path dir_;
};

std::map<std::string, std::string> key_values(const std::string& out) {
  std::map<std::string, std::string> kv;
  std::istringstream in(out);
  std::string line;
  while (std::getline(in, line)) {
    const auto tab = line.find('\t');
    if (tab != std::string::npos) kv[line.substr(0, tab)] = line.substr(tab + 1);
  }
  return kv;
}

std::string build(const Workdir& w, const std::string& name, const std::string& text,
                  std::vector<std::string> flags = {}) {
  const auto idx = w.path(name + ".idx");
  std::vector<std::string> args = {kCli, "build", w.file(name + ".txt", text), "-o", idx,
                                   "--w", "4", "--p", "11"};
  args.insert(args.end(), flags.begin(), flags.end());
  const auto r = run(args);
  REQUIRE_MESSAGE(r.exit_code == 0, r.err);
  return idx;
}

}  // namespace

TEST_CASE("build prints the summary and stats reads it back") {
  Workdir w;
  const auto idx = w.path("banana.idx");
  const auto r = run({kCli, "build", w.file("banana.txt", "banana"), "-o", idx});
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.rfind("n\t7\nr\t5\nrules\t", 0) == 0);
  const auto s = run({kCli, "stats", idx});
  REQUIRE(s.exit_code == 0);
  const auto kv = key_values(s.out);
  CHECK(kv.at("n") == "7");
  CHECK(kv.at("r") == "5");
  CHECK(kv.at("sigma") == "4");
  CHECK(kv.at("w") == "10");
  CHECK(kv.at("p") == "100");
  CHECK(kv.at("locate") == "0");
}

TEST_CASE("ms output formats") {
  Workdir w;
  const auto idx = build(w, "cattag", "CATTAG", {"--with-thresholds"});
  const auto pats = w.file("p.txt", "GTTAC\nxA\n");
  for (std::string v : {"std", "naive", "heur", "twopass"}) {
    const auto r = run({kCli, "ms", idx, pats, "--variant", v, "--format", "lens"});
    REQUIRE(r.exit_code == 0);
    CHECK(r.out == "1 3 2 1 1\n0 1\n");
  }
  const auto tsv = run({kCli, "ms", idx, pats});
  REQUIRE(tsv.exit_code == 0);
  CHECK(tsv.out == ">0\n0\t5\t1\n1\t2\t3\n2\t3\t2\n3\t4\t1\n4\t0\t1\n>1\n0\t\t0\n1\t4\t1\n");
  const auto threaded = run({kCli, "ms", idx, pats, "--threads", "4"});
  CHECK(threaded.out == tsv.out);
  const auto stdin_run = run({kCli, "ms", idx, "-", "--format", "lens"}, ">q\nGTT\nAC\n");
  CHECK(stdin_run.out == "1 3 2 1 1\n");
}

TEST_CASE("exit codes") {
  Workdir w;
  const auto idx = build(w, "banana", "banana");
  CHECK(run({kCli, "build", w.file("empty.txt", ""), "-o", w.path("e.idx")}).exit_code == 2);
  CHECK(run({kCli, "build", w.file("bad.txt", std::string("ab\0c", 4)), "-o", w.path("b.idx")})
            .exit_code == 2);
  CHECK(run({kCli, "build", w.file("bad.fa", "ACGT\n"), "-o", w.path("f.idx"), "--mode", "fasta"})
            .exit_code == 2);
  CHECK(run({kCli, "build", w.path("missing.txt"), "-o", w.path("m.idx")}).exit_code == 4);
  CHECK(run({kCli, "ms", w.path("missing.idx"), w.file("p.txt", "an\n")}).exit_code == 4);
  CHECK(run({kCli, "ms", idx, w.file("forbidden.txt", std::string("a\x01n\n", 4))}).exit_code == 2);
  CHECK(run({kCli, "ms", idx, w.file("p2.txt", "an\n"), "--variant", "twopass"}).exit_code == 2);
  CHECK(run({kCli, "ms", idx, w.file("p3.txt", "an\n"), "--variant", "bogus"}).exit_code == 2);
  CHECK(run({kCli, "locate", idx, "ana", "0", "2"}).exit_code == 2);
  CHECK(run({kCli, "stream", idx}, "a").exit_code == 2);
  CHECK(run({kCli}).exit_code == 2);

  std::ifstream in(idx, std::ios::binary);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  bytes[7] = '2';
  const auto old = w.file("old.idx", bytes);
  const auto r = run({kCli, "stats", old});
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("version") != std::string::npos);
  CHECK(run({kCli, "stats", w.file("junk.idx", "not an index at all")}).exit_code == 3);
}

TEST_CASE("locate and mems") {
  Workdir w;
  const auto idx = build(w, "banana", "banana", {"--with-locate"});
  const auto r = run({kCli, "locate", idx, "ana", "0", "2"});
  REQUIRE(r.exit_code == 0);
  CHECK(r.out == "1\n3\n");
  CHECK(run({kCli, "locate", idx, "xanax", "0", "2"}).out.empty());

  const auto cattag = build(w, "cattag", "CATTAG");
  const auto m = run({kCli, "mems", cattag, w.file("p.txt", "GTTAC\n"), "--min-len", "1"});
  REQUIRE(m.exit_code == 0);
  CHECK(m.out == ">0\n0\t5\t1\n1\t2\t3\n4\t0\t1\n");
  const auto none = run({kCli, "mems", cattag, w.file("p.txt", "GTTAC\n")});
  CHECK(none.out == ">0\n");
}

TEST_CASE("stats with a query file") {
  Workdir w;
  const std::string s = "ACGGTACCATGACTTGACCAGTACGATCAGGATTACAGATTACGAC";
  std::string text;
  for (int k = 0; k < 16; ++k) text += s;
  const auto idx = build(w, "rep", text);
  const auto r = run({kCli, "stats", idx, "--with-query", w.file("q.txt", s.substr(3, 30) + "\n")});
  REQUIRE(r.exit_code == 0);
  const auto kv = key_values(r.out);
  const auto percent = std::stod(kv.at("lf_hit_percent"));
  CHECK(percent > 50.0);
  CHECK(percent <= 100.0);
  CHECK(kv.at("patterns") == "1");
  CHECK(kv.at("max_len") == "30");
  CHECK(std::stoull(kv.at("r")) * 4 < std::stoull(kv.at("n")));

  const auto small = build(w, "xay", "xayzay");
  const auto q = run({kCli, "stats", small, "--with-query", w.file("q2.txt", "xa\nza\n")});
  const auto kv2 = key_values(q.out);
  CHECK(kv2.at("lf_hit_percent") == "50.00");
  CHECK(kv2.at("mean_len") == "1.50");
}

TEST_CASE("bench writes one row per variant, pattern and repeat") {
  Workdir w;
  const auto idx = build(w, "t", "CATTAGCATTAGGATTACA");
  const auto r = run({kCli, "bench", idx, w.file("q.txt", "GATTAC\nTTAGG\nCAT\n"), "--variants",
                      "std,naive,heur", "--repeat", "2"});
  REQUIRE(r.exit_code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "variant,pattern_id,micros,lce_calls,lce_skips,lf_hits");
  std::map<std::string, std::vector<unsigned long>> calls;
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::vector<std::string> cols;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cols.push_back(c);
    REQUIRE(cols.size() == 6);
    calls[cols[0]].push_back(std::stoul(cols[3]));
  }
  CHECK(rows == 3 * 3 * 2);
  for (std::size_t k = 0; k < calls["std"].size(); ++k) CHECK(calls["heur"][k] <= calls["std"][k]);
}

TEST_CASE("stream answers each byte before the next arrives") {
  Workdir w;
  const auto idx = build(w, "banana", "banana", {"--reversed"});
  Child child({kCli, "stream", idx});
  std::vector<std::string> lines;
  for (char c : std::string("nanz")) {
    child.write_stdin(std::string(1, c));
    std::string line;
    REQUIRE_MESSAGE(child.read_line(line, 5000), "no output for byte ", c);
    lines.push_back(line);
  }
  const auto r = child.finish();
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  REQUIRE(lines.size() == 4);
  CHECK(lines[0].substr(lines[0].find('\t')) == "\t1");
  CHECK(lines[1] == "2\t2");
  CHECK(lines[2] == "2\t3");
  CHECK(lines[3] == "\t0");

  const auto skip = run({kCli, "stream", idx, "--skip-newlines"}, "na\nn\n");
  CHECK(skip.exit_code == 0);
  CHECK(std::count(skip.out.begin(), skip.out.end(), '\n') == 3);
  const auto bad = run({kCli, "stream", idx}, std::string("n\0", 2));
  CHECK(bad.exit_code == 2);
}
