// Copyright 2026 The hcstruct Authors.
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

// End-to-end runs of the hcs binary on the files in samples/.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run hcs(const std::string& args) {
  const std::string cmd = std::string(HCS_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  for (std::size_t got; (got = fread(buf, 1, sizeof buf, pipe)) > 0;)
    r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string sample(const std::string& name) {
  return std::string(HCS_SAMPLES_DIR) + "/" + name;
}

std::string golden(const std::string& name) {
  std::ifstream in(std::string(HCS_GOLDEN_DIR) + "/" + name, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Cli, CostOfPathSplit) {
  const auto r = hcs("cost " + sample("p4.txt") + " " + sample("p4_split.nwk"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "dasgupta: 8\ntotal: 2\nbase: 2\nratio: 1\nconsistent: yes\n");
}

TEST(Cli, CostRecordsAndFractions) {
  const auto r = hcs("--records cost " + sample("p5.txt") + " " +
                     sample("p5_caterpillar.nwk"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "cost dasgupta=12 total=4 base=3 ratio=4/3_(1.33333333333) "
            "consistent=no\n");
}

TEST(Cli, CostOfMatrixGraph) {
  const auto r = hcs("cost " + sample("weighted_p4_matrix.txt") + " " +
                     sample("matrix_split.nwk"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("total: 2\n"), std::string::npos);
  EXPECT_NE(r.out.find("consistent: yes\n"), std::string::npos);
}

TEST(Cli, DetectVerdicts) {
  auto r = hcs("detect " + sample("p4.txt"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "verdict: perfect\ntree: ((a,b),(c,d));\n");

  r = hcs("detect " + sample("linked_stars8.txt"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("verdict: perfect\n", 0), 0u);

  r = hcs("detect " + sample("p5.txt"));
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out.rfind("verdict: not-perfect\nfailing_set: a b c d e\n", 0),
            0u);
}

TEST(Cli, DetectEmitsTreeFile) {
  const auto path = std::filesystem::temp_directory_path() / "hcs_cli_emit.nwk";
  std::filesystem::remove(path);
  const auto r = hcs("detect " + sample("k4.txt") + " --emit-tree " +
                     path.string());
  EXPECT_EQ(r.code, 0);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.back(), ';');
  // The emitted tree reads back and scores ratio 1.
  const auto c = hcs("cost " + sample("k4.txt") + " " + path.string());
  EXPECT_NE(c.out.find("ratio: 1\n"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(Cli, Approx) {
  auto r = hcs("approx " + sample("p4_perturbed.txt") + " --delta 1.5");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "verdict: ok\nratio: 1\nguarantee: ratio <= 3.25 * rho*\n"
            "tree: ((a,b),(c,d));\n");

  r = hcs("approx " + sample("contradiction.txt") + " --delta 1");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "verdict: fail\nconflicting_set: a b d c\n");

  EXPECT_EQ(hcs("approx " + sample("p4.txt") + " --delta 0.5").code, 2);
  EXPECT_EQ(hcs("approx " + sample("p4.txt") + " --delta abc").code, 2);
}

TEST(Cli, Brute) {
  const auto r = hcs("brute " + sample("p5.txt"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "rho*: 4/3 (1.33333333333)\ntotal: 4\nbase: 3\n"
            "tree: ((a,(b,c)),(d,e));\ntrees_searched: 105\n");
  EXPECT_EQ(hcs("--jobs 4 brute " + sample("p5.txt")).out, r.out);
  EXPECT_EQ(hcs("brute " + sample("p11.txt")).code, 6);
}

TEST(Cli, RandomMatchesGolden) {
  const auto r = hcs("random --er 300 0.5 --trials 20 --seed 7");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, golden("random_er300.txt"));
  EXPECT_EQ(hcs("--jobs 8 random --er 300 0.5 --trials 20 --seed 7").out,
            r.out);
}

TEST(Cli, RandomRecordsMatchGolden) {
  const auto r = hcs("--records random --planted 40 0.6 0.2 --trials 5 --seed 1");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, golden("random_planted40_records.txt"));
}

TEST(Cli, ErrorExitCodes) {
  EXPECT_EQ(hcs("random --planted 7 0.5 0.1 --trials 2 --seed 1").code, 2);
  EXPECT_EQ(hcs("random --er 10 1.5 --trials 2 --seed 1").code, 2);
  EXPECT_EQ(hcs("random --er 10 0.5 --trials 0 --seed 1").code, 2);
  EXPECT_EQ(hcs("random --trials 2 --seed 1").code, 2);
  EXPECT_EQ(hcs("random --er 10 0.5 --planted 10 0.5 0.1 --trials 2 --seed 1")
                .code,
            2);
  EXPECT_EQ(hcs("").code, 2);
  EXPECT_EQ(hcs("frobnicate").code, 2);
  EXPECT_EQ(hcs("detect " + sample("does_not_exist.txt")).code, 3);
  EXPECT_EQ(hcs("detect " + sample("p4_split.nwk")).code, 4);
  EXPECT_EQ(hcs("cost " + sample("p4.txt") + " " + sample("missing_leaf.nwk"))
                .code,
            5);
  EXPECT_EQ(hcs("--epsilon -1 detect " + sample("p4.txt")).code, 2);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(hcs("--help").code, 0); }

}  // namespace
