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

#include "ddkit/common.hpp"

#include <cctype>
#include <charconv>

namespace ddkit {

std::string MentionKey::str() const {
  return std::to_string(sentence) + "/" + std::to_string(index);
}

std::optional<MentionKey> MentionKey::Parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos || slash == 0 ||
      slash + 1 >= text.size()) {
    return std::nullopt;
  }
  auto number = [](std::string_view part) -> std::optional<int> {
    for (char ch : part) {
      if (ch < '0' || ch > '9') return std::nullopt;
    }
    int value = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(),
                                     value);
    if (ec != std::errc() || ptr != part.data() + part.size() || value < 1) {
      return std::nullopt;
    }
    return value;
  };
  auto s = number(text.substr(0, slash));
  auto i = number(text.substr(slash + 1));
  if (!s || !i) return std::nullopt;
  return MentionKey{*s, *i};
}

std::string ToLower(std::string_view s) {
  std::string out(s);
  for (char &ch : out) {
    ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  return out;
}

bool IsPunctuation(std::string_view token) {
  if (token.empty()) return false;
  for (char ch : token) {
    auto u = static_cast<unsigned char>(ch);
    // Non-ASCII bytes belong to letters as far as we are concerned.
    if (u >= 0x80 || std::isalnum(u)) return false;
  }
  return true;
}

bool IsValidUtf8(std::string_view bytes) {
  std::size_t i = 0;
  const std::size_t n = bytes.size();
  while (i < n) {
    auto b = static_cast<unsigned char>(bytes[i]);
    if (b < 0x80) {
      ++i;
      continue;
    }
    int extra;
    unsigned cp;
    if ((b & 0xE0) == 0xC0) {
      extra = 1;
      cp = b & 0x1F;
    } else if ((b & 0xF0) == 0xE0) {
      extra = 2;
      cp = b & 0x0F;
    } else if ((b & 0xF8) == 0xF0) {
      extra = 3;
      cp = b & 0x07;
    } else {
      return false;
    }
    for (int k = 1; k <= extra; ++k) {
      if (i + k >= n) return false;
      auto c = static_cast<unsigned char>(bytes[i + k]);
      if ((c & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (c & 0x3F);
    }
    static constexpr unsigned kMin[] = {0, 0x80, 0x800, 0x10000};
    if (cp < kMin[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += extra + 1;
  }
  return true;
}

}  // namespace ddkit
