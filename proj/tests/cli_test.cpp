// Copyright 2026 The tritag Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Drives the installed command line binary as a subprocess: argv[1] is the
// binary, argv[2] the bundled data directory.

#define DOCTEST_CONFIG_IMPLEMENT
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <string>

#include "doctest.h"

namespace {

std::string g_cli;
std::string g_data;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

// Runs `args` appended to the binary, capturing stdout; stderr is dropped.
RunResult run(const std::string& args) {
  std::string out_path = "cli_test_stdout.txt";
  std::string command =
      g_cli + " " + args + " > " + out_path + " 2> /dev/null";
  int status = std::system(command.c_str());
  RunResult result;
  if (status != -1 && WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  result.out = slurp(out_path);
  std::remove(out_path.c_str());
  return result;
}

// A model trained once on the bundled fixture, shared by the tagging tests.
const std::string& fixture_model() {
  static const std::string path = [] {
    std::string model = "cli_test_fixture.tnt";
    RunResult r = run("train -c " + g_data + "/fixture_a.tt -o " + model);
    REQUIRE(r.exit_code == 0);
    return model;
  }();
  return path;
}

}  // namespace

TEST_CASE("train writes a model file and reports nothing on stdout") {
  std::string model = "cli_test_train.tnt";
  RunResult r = run("train -c " + g_data + "/fixture_a.tt -o " + model);
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  std::string bytes = slurp(model);
  CHECK(bytes.starts_with("tnt-model 1\n"));
  CHECK(bytes.ends_with("#SECTION end\n"));
  std::remove(model.c_str());
}

TEST_CASE("training flags land in the stored configuration") {
  std::string model = "cli_test_flags.tnt";
  RunResult r = run("train -c " + g_data + "/fixture_a.tt -o " + model +
                    " --no-cap --beam 250.5 --max-suffix 7 --suffix-freq 3" +
                    " --unknown-cap 2 --tie-break lower --theta-mode sqrt");
  CHECK(r.exit_code == 0);
  std::string bytes = slurp(model);
  CHECK(bytes.find("capitalization 0\n") != std::string::npos);
  CHECK(bytes.find("beam_theta 250.5\n") != std::string::npos);
  CHECK(bytes.find("max_suffix 7\n") != std::string::npos);
  CHECK(bytes.find("suffix_freq_threshold 3\n") != std::string::npos);
  CHECK(bytes.find("unknown_cap 2\n") != std::string::npos);
  CHECK(bytes.find("tie_break lower\n") != std::string::npos);
  CHECK(bytes.find("theta_mode sqrt\n") != std::string::npos);
  std::remove(model.c_str());
}

TEST_CASE("tag reads a file and writes one token-tab-tag line per token") {
  spit("cli_test_in.txt", "the dog barks .\n");
  RunResult r = run("tag -m " + fixture_model() + " cli_test_in.txt");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "the\tDT\ndog\tNN\nbarks\tVB\n.\tSENT\n");
  std::remove("cli_test_in.txt");
}

TEST_CASE("tag reads stdin when no input file is given") {
  spit("cli_test_in.txt", "the dog barks .\n");
  RunResult r = run("tag -m " + fixture_model() + " < cli_test_in.txt");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "the\tDT\ndog\tNN\nbarks\tVB\n.\tSENT\n");
  std::remove("cli_test_in.txt");
}

TEST_CASE("raw streams split on sentence enders, blank line between outputs") {
  spit("cli_test_in.txt", "the dog barks . the cat sleeps .\n");
  RunResult r = run("tag -m " + fixture_model() + " cli_test_in.txt");
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "the\tDT\ndog\tNN\nbarks\tVB\n.\tSENT\n"
        "\n"
        "the\tDT\ncat\tNN\nsleeps\tVB\n.\tSENT\n");
  std::remove("cli_test_in.txt");
}

TEST_CASE("input with blank lines keeps its own sentence boundaries") {
  spit("cli_test_in.txt", "the dog\n\nbarks .\n");
  RunResult r = run("tag -m " + fixture_model() + " cli_test_in.txt");
  CHECK(r.exit_code == 0);
  // "the dog" stays one sentence even though it lacks an ender.
  CHECK(r.out ==
        "the\tDT\ndog\tNN\n"
        "\n"
        "barks\tVB\n.\tSENT\n");
  std::remove("cli_test_in.txt");
}

TEST_CASE("tag writes to a file with -o and keeps stdout empty") {
  spit("cli_test_in.txt", "the dog barks .\n");
  RunResult r = run("tag -m " + fixture_model() +
                    " cli_test_in.txt -o cli_test_out.txt");
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  CHECK(slurp("cli_test_out.txt") == "the\tDT\ndog\tNN\nbarks\tVB\n.\tSENT\n");
  std::remove("cli_test_in.txt");
  std::remove("cli_test_out.txt");
}

TEST_CASE("the reliability flag appends a quotient column") {
  spit("cli_test_in.txt", "the dog barks .\n");
  RunResult r = run("tag --reliability -m " + fixture_model() +
                    " cli_test_in.txt");
  CHECK(r.exit_code == 0);
  // Every fixture token has a single candidate, so every quotient is
  // infinite.
  CHECK(r.out ==
        "the\tDT\tinf\ndog\tNN\tinf\nbarks\tVB\tinf\n.\tSENT\tinf\n");
  std::remove("cli_test_in.txt");
}

TEST_CASE("a beam override of 0 is accepted and 0.5 is a usage error") {
  spit("cli_test_in.txt", "the dog barks .\n");
  RunResult ok = run("tag --beam 0 -m " + fixture_model() + " cli_test_in.txt");
  CHECK(ok.exit_code == 0);
  CHECK(ok.out == "the\tDT\ndog\tNN\nbarks\tVB\n.\tSENT\n");
  RunResult bad =
      run("tag --beam 0.5 -m " + fixture_model() + " cli_test_in.txt");
  CHECK(bad.exit_code == 1);
  std::remove("cli_test_in.txt");
}

TEST_CASE("eval scores a model against gold tags") {
  RunResult r = run("eval -m " + fixture_model() + " -g " + g_data +
                    "/fixture_a.tt");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("tokens 8\n") != std::string::npos);
  CHECK(r.out.find("accuracy 1.000000\n") != std::string::npos);
  CHECK(r.out.find("unknown_tokens 0\n") != std::string::npos);
}

TEST_CASE("xval reports per-fold rows and pooled summary lines") {
  RunResult r = run("xval -c " + g_data + "/fixture_a.tt -k 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("fold\ttokens\taccuracy\tknown\tunknown\n") == 0);
  CHECK(r.out.find("\npooled_accuracy ") != std::string::npos);
  CHECK(r.out.find("mean_accuracy ") != std::string::npos);
}

TEST_CASE("learncurve prints one size and accuracy pair per line") {
  RunResult r = run("learncurve -c " + g_data +
                    "/sample.tt --sizes 500,1000 --repeats 2" +
                    " --test-tokens 500 --seed 7");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("500\t") == 0);
  CHECK(r.out.find("\n1000\t") != std::string::npos);

  RunResult full = run("learncurve -c " + g_data +
                       "/sample.tt --sizes 500 --repeats 2" +
                       " --test-tokens 500 --seed 7 --full");
  CHECK(full.exit_code == 0);
  CHECK(full.out.find("requested\tmean_train\taccuracy\t") == 0);
}

TEST_CASE("relcurve prints one threshold and accuracy pair per line") {
  RunResult r = run("relcurve -c " + g_data +
                    "/fixture_a.tt -k 2 --thresholds 10,100");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("10\t") == 0);
  CHECK(r.out.find("\n100\t") != std::string::npos);

  RunResult full = run("relcurve -c " + g_data +
                       "/fixture_a.tt -k 2 --thresholds 10 --full");
  CHECK(full.exit_code == 0);
  CHECK(full.out.find("threshold\treliable_share\t") == 0);
}

TEST_CASE("training twice produces byte-identical models") {
  RunResult a = run("train -c " + g_data + "/fixture_a.tt -o cli_test_a.tnt");
  RunResult b = run("train -c " + g_data + "/fixture_a.tt -o cli_test_b.tnt");
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  std::string bytes = slurp("cli_test_a.tnt");
  CHECK(!bytes.empty());
  CHECK(bytes == slurp("cli_test_b.tnt"));
  std::remove("cli_test_a.tnt");
  std::remove("cli_test_b.tnt");
}

TEST_CASE("usage problems exit 1 and data problems exit 2") {
  CHECK(run("").exit_code == 1);                       // missing subcommand
  CHECK(run("train -c x.tt").exit_code == 1);          // missing -o
  CHECK(run("xval -c x.tt -k 1").exit_code == 1);      // folds below range
  CHECK(run("train -c cli_test_missing.tt -o cli_test_x.tnt").exit_code == 2);
  CHECK(run("tag -m cli_test_missing.tnt cli_test_missing.txt").exit_code == 2);
  spit("cli_test_bad.tt", "word_without_tab\n");
  CHECK(run("train -c cli_test_bad.tt -o cli_test_x.tnt").exit_code == 2);
  std::remove("cli_test_bad.tt");
}

int run_all(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: %s <cli-binary> <data-dir>\n", argv[0]);
    return 99;
  }
  g_cli = argv[1];
  g_data = argv[2];
  doctest::Context context;
  context.applyCommandLine(1, argv);
  int res = context.run();
  std::remove(fixture_model().c_str());
  return res;
}

int main(int argc, char** argv) { return run_all(argc, argv); }
