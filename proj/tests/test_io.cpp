// Copyright 2026 The BSSC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bssc/io.hpp"

using namespace bssc;

namespace {

CVec read(const std::string& text, int m) {
    std::istringstream in(text);
    return read_signal_csv(in, m);
}

SweepSpec spec(const std::string& text) {
    std::istringstream in(text);
    return parse_sweep_spec(in);
}

}  // namespace

TEST(SignalCsv, ReadsAnyOrderWithHeader) {
    const CVec v = read("index,re,im\n1, 0.5 ,-1\n0,1e-3,0\n\n", 1);
    EXPECT_EQ(v, (CVec{cd(1e-3, 0), cd(0.5, -1)}));
    EXPECT_EQ(read("0,1,0\n1,0,1\n", 1), (CVec{1.0, cd(0, 1)}));
}

TEST(SignalCsv, RoundTrips) {
    const CVec x{cd(0.1, -0.2), cd(1.0 / 3.0, 0), cd(-1e-300, 5), cd(0, 0)};
    EXPECT_EQ(read(signal_csv(x), 2), x);
}

TEST(SignalCsv, RejectsMalformed) {
    EXPECT_THROW(read("0,1,0\n", 1), IoError);            // missing index
    EXPECT_THROW(read("0,1,0\n0,1,0\n1,0,0\n", 1), IoError);  // duplicate
    EXPECT_THROW(read("0,1,0\n2,0,0\n", 1), IoError);     // out of range
    EXPECT_THROW(read("0,1\n1,0\n", 1), IoError);         // field count
    EXPECT_THROW(read("0,x,0\n1,0,0\n", 1), IoError);     // bad number
    EXPECT_THROW(read("0,nan,0\n1,0,0\n", 1), IoError);   // not finite
    EXPECT_THROW(read("0,1,0\nz,0,0\n", 1), IoError);     // bad index after the first line
    std::ifstream in(std::string(BSSC_TEST_DATA) + "/malformed_signal.csv");
    EXPECT_THROW(read_signal_csv(in, 2), IoError);
}

TEST(SweepSpec, ParsesGridInOrder) {
    std::ifstream in(std::string(BSSC_TEST_DATA) + "/sweep_small.txt");
    const SweepSpec s = parse_sweep_spec(in);
    ASSERT_EQ(s.configs.size(), 6u);
    EXPECT_EQ(s.configs[0].codebook, CodebookKind::bssc);
    EXPECT_EQ(s.configs[3].codebook, CodebookKind::bc);
    EXPECT_EQ(s.configs[4].users, 2);
    EXPECT_EQ(s.configs[4].trials, 50u);
    EXPECT_EQ(s.configs[4].seed, 5u);
    EXPECT_FALSE(s.out.has_value());

    const SweepSpec d = spec("m = [4,5]\nusers = 2 # comment\nnoise = 0, 0.5\nout = \"r.csv\"\nformat = svg\n");
    ASSERT_EQ(d.configs.size(), 4u);
    EXPECT_EQ(d.configs[0].trials, 1000u);
    EXPECT_EQ(d.configs[0].seed, 1u);
    EXPECT_EQ(d.configs[1].noise_variance, 0.5);
    EXPECT_EQ(d.configs[2].m, 5);
    EXPECT_EQ(*d.out, "r.csv");
    EXPECT_EQ(*d.format, "svg");
}

TEST(SweepSpec, Errors) {
    EXPECT_THROW(spec("users = 1\n"), ConfigError);
    EXPECT_THROW(spec("m = 3\n"), ConfigError);
    EXPECT_THROW(spec("m = 3\nusers = 1\ncolour = red\n"), ConfigError);
    EXPECT_THROW(spec("m = 3\nusers = 1\nm = 4\n"), ConfigError);
    EXPECT_THROW(spec("m = 3\nusers 1\n"), ConfigError);
    EXPECT_THROW(spec("m = 3,\nusers = 1\n"), ConfigError);
    EXPECT_THROW(spec("m = three\nusers = 1\n"), ConfigError);
    EXPECT_THROW(spec("m = 3\nusers = 1\ntrials = 5, 6\n"), ConfigError);
    EXPECT_THROW(spec("m = 3\nusers = 1\ncodebook = rm\n"), ConfigError);
    EXPECT_THROW(spec("m = 3\nusers = 1\nnoise = loud\n"), ConfigError);
}

TEST(AtomicWrite, WritesAndReplaces) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / ("bssc_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
    fs::create_directories(dir);
    const fs::path f = dir / "out.csv";
    atomic_write(f, "first\n");
    atomic_write(f, "second\n");
    std::ifstream in(f);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), "second\n");
    EXPECT_EQ(std::distance(fs::directory_iterator(dir), fs::directory_iterator()), 1);
    EXPECT_THROW(atomic_write(dir / "missing" / "x.csv", "x"), IoError);
    fs::remove_all(dir);
}
