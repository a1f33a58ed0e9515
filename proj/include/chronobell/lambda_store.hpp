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

// Persistent source of the classical random numbers that drive every
// simulation. A file holds 64-bit words; each word w is read as the real
// floor(w / 2^11) / 2^53, which lies in [0, 1) and equals w / 2^64 up to the
// 53-bit resolution of a double.
//
// On-disk layout (all integers little-endian):
//
//   offset  size  field
//        0     4  magic "LMDA"
//        4     1  version (1)
//        5     8  word count
//       13     8  seed the payload was generated from (provenance only)
//       21   8*n  payload words
//
// Word i of the file generated from seed s is the i-th SplitMix64 output for
// initial state s, so a seed-backed stream and the file written from the same
// seed produce identical values.

#ifndef CHRONOBELL_LAMBDA_STORE_HPP
#define CHRONOBELL_LAMBDA_STORE_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace chronobell {

inline constexpr std::uint64_t kDefaultBlockSize = 64;

/// SplitMix64 output number `index` (0-based) for initial state `seed`.
std::uint64_t counter_word(std::uint64_t seed, std::uint64_t index);

/// Maps a word to [0, 1) keeping its top 53 bits.
double word_to_unit(std::uint64_t word);

class LambdaFile {
   public:
    static constexpr char kMagic[4] = {'L', 'M', 'D', 'A'};
    static constexpr std::uint8_t kVersion = 1;
    static constexpr std::size_t kHeaderSize = 21;

    LambdaFile(std::vector<std::uint64_t> words, std::uint64_t seed);

    static LambdaFile from_bytes(std::span<const std::uint8_t> bytes);
    static LambdaFile read(const std::filesystem::path& path);

    std::vector<std::uint8_t> to_bytes() const;
    void write(const std::filesystem::path& path) const;

    std::uint64_t seed() const { return seed_; }
    std::size_t size() const { return words_.size(); }
    std::uint64_t word(std::size_t i) const { return words_[i]; }
    std::span<const std::uint64_t> words() const { return words_; }

   private:
    std::vector<std::uint64_t> words_;
    std::uint64_t seed_;
};

/// Deterministic in (seed, count). Throws EmptyFileError for count == 0.
LambdaFile generate_lambda_file(std::uint64_t seed, std::uint64_t count);

/// Cursor over a contiguous window of lambda words.
///
/// A stream is backed either by a LambdaFile (shared, immutable) or by the
/// counter generator directly. Streams are cheap value types but are
/// single-owner: do not mutate one from several threads. Parallel work
/// should take one `split` per trial instead.
class LambdaStream {
   public:
    static LambdaStream over_file(std::shared_ptr<const LambdaFile> file, std::string label = "file");
    /// Counter-generator stream with the given capacity in words.
    static LambdaStream from_seed(
        std::uint64_t seed, std::uint64_t capacity = std::uint64_t{1} << 62, std::string label = "");

    /// Next real in [0, 1). Throws StreamExhaustedError at the end of the window.
    double next_real();
    std::uint64_t next_word();

    /// Substream owning words [i*block, (i+1)*block) of this stream's window.
    /// Depends only on the window and the index, never on this stream's cursor.
    /// Throws CapacityError if the block does not fit.
    LambdaStream split(std::uint64_t trial_index, std::uint64_t block = kDefaultBlockSize) const;

    void rewind() { cursor_ = begin_; }

    std::uint64_t begin() const { return begin_; }
    std::uint64_t end() const { return end_; }
    std::uint64_t position() const { return cursor_; }
    std::uint64_t remaining() const { return end_ - cursor_; }
    const std::string& label() const { return label_; }

   private:
    LambdaStream() = default;
    std::uint64_t word_at(std::uint64_t absolute) const;

    std::shared_ptr<const LambdaFile> file_;
    std::uint64_t seed_ = 0;
    std::uint64_t begin_ = 0;
    std::uint64_t end_ = 0;
    std::uint64_t cursor_ = 0;
    std::string label_;
};

}  // namespace chronobell

#endif
