// Copyright 2026 The ddkit Authors.
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

#ifndef DDKIT_COMMON_HPP_
#define DDKIT_COMMON_HPP_

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ddkit {

// Identifies a noun phrase inside a document: 1-based sentence number and
// 1-based NP index within that sentence. Rendered as "3/2".
struct MentionKey {
  int sentence = 0;
  int index = 0;

  auto operator<=>(const MentionKey &) const = default;

  std::string str() const;
  static std::optional<MentionKey> Parse(std::string_view text);
};

struct MentionKeyHash {
  std::size_t operator()(const MentionKey &k) const noexcept {
    return std::hash<long long>()((static_cast<long long>(k.sentence) << 32) ^
                                  static_cast<unsigned>(k.index));
  }
};

// Base class of every data error raised by the toolkit. The CLI maps these to
// exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string ToLower(std::string_view s);

// True for tokens made only of non-alphanumeric characters.
bool IsPunctuation(std::string_view token);

// Validates UTF-8 byte sequences (rejects overlongs and surrogates).
bool IsValidUtf8(std::string_view bytes);

}  // namespace ddkit

#endif  // DDKIT_COMMON_HPP_
