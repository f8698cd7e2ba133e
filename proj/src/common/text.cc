// Copyright 2026 The FedNgram Authors.
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

#include "fedngram/common/text.h"

namespace fedngram {

std::vector<std::string> SplitTokens(std::string_view line) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    size_t begin = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > begin) out.emplace_back(line.substr(begin, i - begin));
  }
  return out;
}

std::vector<std::string> SplitFields(std::string_view line, char delim) {
  std::vector<std::string> out;
  size_t begin = 0;
  for (size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == delim) {
      out.emplace_back(line.substr(begin, i - begin));
      begin = i + 1;
    }
  }
  return out;
}

std::string Lowercase(std::string_view token) {
  std::string out;
  out.reserve(token.size());
  for (size_t i = 0; i < token.size(); ++i) {
    const unsigned char c = token[i];
    if (c >= 'A' && c <= 'Z') {
      out.push_back(static_cast<char>(c + 0x20));
    } else if (c == 0xC3 && i + 1 < token.size()) {
      // Latin-1 supplement: U+00C0..U+00DE map to +0x20 except U+00D7 (x).
      const unsigned char d = token[i + 1];
      out.push_back(static_cast<char>(c));
      if (d >= 0x80 && d <= 0x9E && d != 0x97) {
        out.push_back(static_cast<char>(d + 0x20));
      } else {
        out.push_back(static_cast<char>(d));
      }
      ++i;
    } else {
      out.push_back(static_cast<char>(c));
    }
  }
  return out;
}

std::string RenderPiece(std::string_view piece, bool word_initial) {
  std::string out;
  if (word_initial) out.push_back('_');
  for (char c : piece) {
    if (c == '_') out += "\\_";
    else if (c == '\\') out += "\\\\";
    else out.push_back(c);
  }
  return out;
}

std::string ParsePiece(std::string_view rendered, bool* word_initial) {
  size_t i = 0;
  bool initial = false;
  if (!rendered.empty() && rendered[0] == '_') {
    initial = true;
    i = 1;
  }
  std::string out;
  for (; i < rendered.size(); ++i) {
    if (rendered[i] == '\\' && i + 1 < rendered.size()) {
      out.push_back(rendered[i + 1]);
      ++i;
    } else {
      out.push_back(rendered[i]);
    }
  }
  if (word_initial != nullptr) *word_initial = initial;
  return out;
}

}  // namespace fedngram
