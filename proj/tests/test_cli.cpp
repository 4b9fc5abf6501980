#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"

// End-to-end coverage of the command-line tool named by TRIPIDX_BIN.
namespace {

namespace fs = std::filesystem;

struct run_result {
  int exit_code = -1;
  std::string out;
};

run_result run(const std::string& args) {
  std::string cmd = std::string(TRIPIDX_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  run_result r;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.out.append(buf.data(), got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

struct workspace {
  fs::path dir;
  workspace() {
    dir = fs::temp_directory_path() /
          ("tripidx_cli_" + std::to_string(::getpid()) + "_" +
           std::to_string(counter()++));
    fs::create_directories(dir);
  }
  ~workspace() { fs::remove_all(dir); }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const char* name, const std::string& content = "") const {
    fs::path p = dir / name;
    if (!content.empty()) {
      std::ofstream out(p);
      out << content;
    }
    return p.string();
  }
};

const char* kExampleCorpus =
    "2:2 3:3 10:4 4:5 7:6\n"
    "9:12 8:13 7:14\n"
    "1:5 2:6 3:7\n"
    "3:9 10:10 5:11\n"
    "1:0 2:1 3:2\n"
    "2:10 3:11 10:12 6:13\n";

std::string demo_network() {
  std::string text;
  for (int s = 1; s <= 64; ++s)
    text += "stop " + std::to_string(s) + " s" + std::to_string(s) + "\n";
  text += "line 1";
  for (int s = 1; s <= 40; ++s) text += " " + std::to_string(s);
  text += "\nline 2";
  for (int s = 41; s <= 64; ++s) text += " " + std::to_string(s);
  text += "\nwindow 2 300 1260\n";
  return text;
}

}  // namespace

TEST_CASE("cli: worked-example pipeline answers the frozen goldens") {
  workspace ws;
  std::string corpus = ws.file("e.txt", kExampleCorpus);
  std::string index = ws.file("e.idx");

  run_result built =
      run("build --corpus " + corpus + " --output " + index +
          " --sample-rate 16");
  REQUIRE(built.exit_code == 0);
  CHECK(built.out.find("trips: 6") != std::string::npos);
  CHECK(built.out.find("sequence length: 28") != std::string::npos);

  auto q = [&](const std::string& terms) {
    return run("query --index " + index + " " + terms);
  };
  CHECK(q("uses 3").out == "5\n");
  CHECK(q("uses 10").out == "3\n");
  CHECK(q("starts 1").out == "2\n");
  CHECK(q("ends 7").out == "2\n");
  CHECK(q("starts-ends 1 3").out == "2\n");
  CHECK(q("starts-ends 2 7").out == "1\n");
  CHECK(q("topk 2").out == "3 5\n2 4\n");
  CHECK(q("topk 2 bin").out == "3 5\n2 4\n");
  CHECK(q("starts-between 1 0 4").out == "1\n");
  CHECK(q("ends-between 7 0 10").out == "1\n");
  CHECK(q("uses-between 3 2 9").out == "4\n");
  CHECK(q("starts-ends-between 1 3 0 4 strong").out == "1\n");
  CHECK(q("starts-ends-between 1 3 4 6 weak").out == "1\n");

  run_result verbose = q("--verbose starts 1");
  CHECK(verbose.out.find("[2, 3]") != std::string::npos);

  run_result clock = q("--clock starts-between 1 0:00:00 0:00:20");
  CHECK(clock.out == "1\n");

  run_result stats = run("stats --index " + index);
  CHECK(stats.exit_code == 0);
  CHECK(stats.out.find("stop occurrences: 21") != std::string::npos);
  CHECK(stats.out.find("trips: 6") != std::string::npos);
  CHECK(stats.out.find("2304 codes") != std::string::npos);
}

TEST_CASE("cli: index engine and reference engine agree") {
  workspace ws;
  std::string network = ws.file("net.txt", demo_network());
  std::string corpus = ws.file("c.txt");
  std::string index = ws.file("c.idx");

  REQUIRE(run("generate --network " + network + " --count 400 --seed 11 "
              "--output " + corpus)
              .exit_code == 0);
  REQUIRE(run("build --corpus " + corpus + " --output " + index).exit_code ==
          0);

  const char* queries[] = {"starts 5",
                           "ends 17",
                           "starts-ends 3 9",
                           "uses 23",
                           "topk 7",
                           "starts-between 5 100 1500",
                           "ends-between 17 100 1500",
                           "uses-between 23 100 1500",
                           "starts-ends-between 3 9 0 2000 strong",
                           "starts-ends-between 3 9 0 2000 weak"};
  for (const char* terms : queries) {
    CAPTURE(terms);
    run_result via_index = run("query --index " + index + " " + terms);
    run_result via_oracle =
        run("query --engine oracle --corpus " + corpus + " " + terms);
    REQUIRE(via_index.exit_code == 0);
    REQUIRE(via_oracle.exit_code == 0);
    CHECK(via_index.out == via_oracle.out);
  }
}

TEST_CASE("cli: generation is deterministic per seed") {
  workspace ws;
  std::string network = ws.file("net.txt", demo_network());
  std::string a = ws.file("a.txt"), b = ws.file("b.txt"), c = ws.file("c.txt");
  REQUIRE(run("generate --network " + network +
              " --count 100 --seed 5 --output " + a)
              .exit_code == 0);
  REQUIRE(run("generate --network " + network +
              " --count 100 --seed 5 --output " + b)
              .exit_code == 0);
  REQUIRE(run("generate --network " + network +
              " --count 100 --seed 6 --output " + c)
              .exit_code == 0);
  auto slurp = [](const std::string& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a) != slurp(c));
}

TEST_CASE("cli: bench emits the full csv table") {
  workspace ws;
  std::string corpus = ws.file("e.txt", kExampleCorpus);
  std::string index = ws.file("e.idx");
  REQUIRE(run("build --corpus " + corpus + " --output " + index).exit_code ==
          0);

  run_result r = run("bench --index " + index + " --queries 30 --csv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.rfind("query,mean_us,median_us,count\n", 0) == 0);
  size_t lines = 0;
  for (char ch : r.out)
    if (ch == '\n') ++lines;
  CHECK(lines == 14);  // header + 13 query kinds
  for (const char* name :
       {"starts,", "ends,", "starts-ends,", "uses,", "topk-seq-10,",
        "topk-bin-10,", "topk-seq-1000,", "topk-bin-1000,", "starts-between,",
        "ends-between,", "uses-between,", "starts-ends-between-strong,",
        "starts-ends-between-weak,"})
    CHECK(r.out.find(name) != std::string::npos);
}

TEST_CASE("cli: failures map to the documented exit codes") {
  workspace ws;
  std::string corpus = ws.file("e.txt", kExampleCorpus);
  std::string index = ws.file("e.idx");
  REQUIRE(run("build --corpus " + corpus + " --output " + index).exit_code ==
          0);

  CHECK(run("query --index " + ws.dir.string() + "/missing.idx starts 1")
            .exit_code == 2);
  CHECK(run("query --index " + index + " starts 99").exit_code == 2);
  CHECK(run("query --index " + index + " frobnicate 1").exit_code == 2);
  CHECK(run("query --index " + index + " starts").exit_code == 2);
  CHECK(run("build --corpus " + corpus + " --output " + index +
            " --sample-rate 37")
            .exit_code == 2);
  CHECK(run("bench --index " + index + " --queries 0").exit_code == 2);
  CHECK(run("definitely-not-a-subcommand").exit_code == 2);
  CHECK(run("--help").exit_code == 0);

  std::string broken = ws.file("broken.txt", "1:0 2:zzz\n");
  CHECK(run("build --corpus " + broken + " --output " + index).exit_code == 2);

  // a parseable header with a mangled payload must fail as an io error
  std::string trunc = ws.file("trunc.idx");
  {
    std::ifstream in(index, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)), {});
    std::ofstream out(trunc, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size() / 2));
  }
  CHECK(run("stats --index " + trunc).exit_code == 1);
}
