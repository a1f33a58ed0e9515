// Copyright 2026 The Chronobell Authors
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

#include "chronobell/lambda_store.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "chronobell/errors.hpp"

using namespace chronobell;

namespace {

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("chronobell_test_" + name);
}

std::vector<char> slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::shared_ptr<const LambdaFile> file_of(std::vector<std::uint64_t> words) {
    return std::make_shared<const LambdaFile>(std::move(words), 0);
}

}  // namespace

TEST(lambda_store, generation_is_deterministic_and_byte_identical) {
    auto p1 = temp_path("a.lmda");
    auto p2 = temp_path("b.lmda");
    generate_lambda_file(1, 10).write(p1);
    generate_lambda_file(1, 10).write(p2);
    auto b1 = slurp(p1);
    EXPECT_EQ(b1, slurp(p2));
    EXPECT_EQ(b1.size(), LambdaFile::kHeaderSize + 80);
    std::filesystem::remove(p1);
    std::filesystem::remove(p2);
}

TEST(lambda_store, seed_sensitivity) {
    auto a = generate_lambda_file(1, 10);
    auto b = generate_lambda_file(2, 10);
    EXPECT_FALSE(std::equal(a.words().begin(), a.words().end(), b.words().begin()));
}

TEST(lambda_store, zero_count_is_an_error) { EXPECT_THROW(generate_lambda_file(1, 0), EmptyFileError); }

TEST(lambda_store, header_layout_is_little_endian) {
    LambdaFile f({0x0102030405060708ull}, 0xAABBull);
    auto bytes = f.to_bytes();
    ASSERT_EQ(bytes.size(), 29u);
    EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "LMDA");
    EXPECT_EQ(bytes[4], 1);
    EXPECT_EQ(bytes[5], 1);  // count = 1
    for (int i = 6; i < 13; ++i) EXPECT_EQ(bytes[i], 0);
    EXPECT_EQ(bytes[13], 0xBB);
    EXPECT_EQ(bytes[14], 0xAA);
    EXPECT_EQ(bytes[21], 0x08);
    EXPECT_EQ(bytes[28], 0x01);
}

TEST(lambda_store, file_round_trip_and_corruption) {
    auto f = generate_lambda_file(9, 33);
    auto bytes = f.to_bytes();
    auto g = LambdaFile::from_bytes(bytes);
    EXPECT_TRUE(std::equal(f.words().begin(), f.words().end(), g.words().begin()));
    EXPECT_EQ(g.seed(), 9u);

    auto bad_magic = bytes;
    bad_magic[0] = 'X';
    EXPECT_THROW(LambdaFile::from_bytes(bad_magic), FileFormatError);
    auto truncated = bytes;
    truncated.pop_back();
    EXPECT_THROW(LambdaFile::from_bytes(truncated), FileFormatError);
    auto bad_version = bytes;
    bad_version[4] = 7;
    EXPECT_THROW(LambdaFile::from_bytes(bad_version), FileFormatError);
}

TEST(lambda_store, next_real_examples) {
    auto s = LambdaStream::over_file(file_of({0, std::uint64_t{1} << 63, ~std::uint64_t{0}}));
    EXPECT_EQ(s.next_real(), 0.0);
    EXPECT_EQ(s.next_real(), 0.5);
    double top = s.next_real();
    EXPECT_LT(top, 1.0);
    EXPECT_GT(top, 1.0 - 1e-15);
    EXPECT_THROW(s.next_real(), StreamExhaustedError);
}

TEST(lambda_store, streams_replay) {
    auto f = std::make_shared<const LambdaFile>(generate_lambda_file(4, 100));
    auto s1 = LambdaStream::over_file(f);
    auto s2 = LambdaStream::over_file(f);
    std::vector<double> first;
    for (int i = 0; i < 50; ++i) first.push_back(s1.next_real());
    for (int i = 0; i < 50; ++i) EXPECT_EQ(s2.next_real(), first[i]);
    s1.rewind();
    for (int i = 0; i < 50; ++i) EXPECT_EQ(s1.next_real(), first[i]);
}

TEST(lambda_store, seed_stream_matches_generated_file) {
    auto f = std::make_shared<const LambdaFile>(generate_lambda_file(77, 500));
    auto fs = LambdaStream::over_file(f);
    auto gs = LambdaStream::from_seed(77);
    for (int i = 0; i < 500; ++i) EXPECT_EQ(fs.next_word(), gs.next_word());
    EXPECT_EQ(fs.split(3, 100).next_real(), gs.split(3, 100).next_real());
}

TEST(lambda_store, split_is_order_independent_and_disjoint) {
    auto f = std::make_shared<const LambdaFile>(generate_lambda_file(5, 64 * 10));
    auto base = LambdaStream::over_file(f);

    auto read = [](LambdaStream s) {
        std::vector<double> v;
        while (s.remaining() > 0) v.push_back(s.next_real());
        return v;
    };
    auto five_first = read(base.split(5));
    auto three_after = read(base.split(3));
    auto three_first = read(base.split(3));
    auto five_after = read(base.split(5));
    EXPECT_EQ(five_first, five_after);
    EXPECT_EQ(three_first, three_after);

    // Cursor position of the parent is irrelevant.
    auto moved = base;
    moved.next_real();
    moved.next_real();
    EXPECT_EQ(read(moved.split(5)), five_first);

    for (std::uint64_t i = 0; i < 10; ++i) {
        for (std::uint64_t j = i + 1; j < 10; ++j) {
            auto si = base.split(i);
            auto sj = base.split(j);
            EXPECT_TRUE(si.end() <= sj.begin() || sj.end() <= si.begin());
        }
    }
    EXPECT_THROW(base.split(10), CapacityError);

    // Nested splits stay inside the parent window.
    auto nested = base.split(2).split(3, 8);
    EXPECT_EQ(nested.begin(), 2u * 64 + 3u * 8);
    EXPECT_THROW(base.split(2).split(8, 8), CapacityError);
}

TEST(lambda_store, substream_exhaustion_does_not_wrap) {
    auto base = LambdaStream::from_seed(1);
    auto sub = base.split(0, 2);
    sub.next_real();
    sub.next_real();
    EXPECT_THROW(sub.next_real(), StreamExhaustedError);
}

TEST(lambda_store, split_replays_after_reload) {
    auto path = temp_path("reload.lmda");
    generate_lambda_file(12, 640).write(path);
    auto s1 = LambdaStream::over_file(std::make_shared<const LambdaFile>(LambdaFile::read(path))).split(5);
    auto s2 = LambdaStream::over_file(std::make_shared<const LambdaFile>(LambdaFile::read(path))).split(5);
    for (int i = 0; i < 64; ++i) EXPECT_EQ(s1.next_real(), s2.next_real());
    std::filesystem::remove(path);
}

TEST(lambda_store, uniformity_chi_square_and_ks) {
    const std::size_t n = 100000;
    auto f = generate_lambda_file(7, n);
    std::vector<double> v;
    v.reserve(n);
    std::array<double, 16> bins{};
    double mean = 0;
    for (auto w : f.words()) {
        double x = word_to_unit(w);
        ASSERT_GE(x, 0.0);
        ASSERT_LT(x, 1.0);
        v.push_back(x);
        mean += x;
        bins[static_cast<std::size_t>(x * 16)] += 1;
    }
    mean /= n;
    EXPECT_NEAR(mean, 0.5, 0.01);

    double chi2 = 0;
    const double expected = n / 16.0;
    for (double b : bins) chi2 += (b - expected) * (b - expected) / expected;
    // chi-square, 15 degrees of freedom, upper 0.1% point.
    EXPECT_LT(chi2, 37.697);

    std::sort(v.begin(), v.end());
    double d = 0;
    for (std::size_t i = 0; i < n; ++i) {
        d = std::max({d, (i + 1.0) / n - v[i], v[i] - double(i) / n});
    }
    // Asymptotic Kolmogorov-Smirnov critical value at alpha = 0.001.
    EXPECT_LT(d, 1.9495 / std::sqrt(double(n)));
}
