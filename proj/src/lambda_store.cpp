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

#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include "chronobell/errors.hpp"

namespace chronobell {

namespace {

void put_le64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
}

std::uint64_t get_le64(std::span<const std::uint8_t> in, std::size_t offset) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
        v |= std::uint64_t{in[offset + static_cast<std::size_t>(i)]} << (8 * i);
    }
    return v;
}

}  // namespace

std::uint64_t counter_word(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double word_to_unit(std::uint64_t word) { return std::ldexp(static_cast<double>(word >> 11), -53); }

LambdaFile::LambdaFile(std::vector<std::uint64_t> words, std::uint64_t seed) : words_(std::move(words)), seed_(seed) {
    if (words_.empty()) {
        throw EmptyFileError("a lambda file must hold at least one word");
    }
}

LambdaFile LambdaFile::from_bytes(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kHeaderSize || std::memcmp(bytes.data(), kMagic, 4) != 0) {
        throw FileFormatError("not a lambda file (bad magic or truncated header)");
    }
    if (bytes[4] != kVersion) {
        throw FileFormatError("unsupported lambda file version " + std::to_string(bytes[4]));
    }
    std::uint64_t count = get_le64(bytes, 5);
    std::uint64_t seed = get_le64(bytes, 13);
    if ((bytes.size() - kHeaderSize) % 8 != 0 || (bytes.size() - kHeaderSize) / 8 != count) {
        throw FileFormatError(
            "lambda file header declares " + std::to_string(count) + " words but payload holds " +
            std::to_string((bytes.size() - kHeaderSize) / 8));
    }
    std::vector<std::uint64_t> words(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        words[i] = get_le64(bytes, kHeaderSize + 8 * i);
    }
    return LambdaFile(std::move(words), seed);
}

LambdaFile LambdaFile::read(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FileFormatError("cannot open lambda file " + path.string());
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_bytes(bytes);
}

std::vector<std::uint8_t> LambdaFile::to_bytes() const {
    std::vector<std::uint8_t> out;
    out.reserve(kHeaderSize + 8 * words_.size());
    out.insert(out.end(), kMagic, kMagic + 4);
    out.push_back(kVersion);
    put_le64(out, words_.size());
    put_le64(out, seed_);
    for (auto w : words_) {
        put_le64(out, w);
    }
    return out;
}

void LambdaFile::write(const std::filesystem::path& path) const {
    auto bytes = to_bytes();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw FileFormatError("cannot open " + path.string() + " for writing");
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw FileFormatError("failed writing lambda file " + path.string());
    }
}

LambdaFile generate_lambda_file(std::uint64_t seed, std::uint64_t count) {
    if (count == 0) {
        throw EmptyFileError("count must be at least 1");
    }
    std::vector<std::uint64_t> words(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        words[i] = counter_word(seed, i);
    }
    return LambdaFile(std::move(words), seed);
}

LambdaStream LambdaStream::over_file(std::shared_ptr<const LambdaFile> file, std::string label) {
    if (!file) {
        throw ParameterError("lambda stream needs a file");
    }
    LambdaStream s;
    s.end_ = file->size();
    s.file_ = std::move(file);
    s.label_ = std::move(label);
    return s;
}

LambdaStream LambdaStream::from_seed(std::uint64_t seed, std::uint64_t capacity, std::string label) {
    LambdaStream s;
    s.seed_ = seed;
    s.end_ = capacity;
    s.label_ = label.empty() ? "seed:" + std::to_string(seed) : std::move(label);
    return s;
}

std::uint64_t LambdaStream::word_at(std::uint64_t absolute) const {
    return file_ ? file_->word(absolute) : counter_word(seed_, absolute);
}

std::uint64_t LambdaStream::next_word() {
    if (cursor_ >= end_) {
        throw StreamExhaustedError(
            "lambda stream '" + label_ + "' exhausted after " + std::to_string(end_ - begin_) + " words");
    }
    return word_at(cursor_++);
}

double LambdaStream::next_real() { return word_to_unit(next_word()); }

LambdaStream LambdaStream::split(std::uint64_t trial_index, std::uint64_t block) const {
    if (block == 0) {
        throw ParameterError("split block size must be positive");
    }
    const std::uint64_t window = end_ - begin_;
    if (trial_index >= window / block) {
        throw CapacityError(
            "split index " + std::to_string(trial_index) + " with block " + std::to_string(block) +
            " exceeds the " + std::to_string(window) + " words of stream '" + label_ + "'");
    }
    LambdaStream s = *this;
    s.begin_ = begin_ + trial_index * block;
    s.end_ = s.begin_ + block;
    s.cursor_ = s.begin_;
    s.label_ = label_ + "/" + std::to_string(trial_index);
    return s;
}

}  // namespace chronobell
