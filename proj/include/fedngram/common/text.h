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

#ifndef FEDNGRAM_COMMON_TEXT_H_
#define FEDNGRAM_COMMON_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace fedngram {

// Splits on runs of spaces/tabs; empty fields are dropped.
std::vector<std::string> SplitTokens(std::string_view line);

// Splits on a single delimiter, keeping empty fields.
std::vector<std::string> SplitFields(std::string_view line, char delim);

// Case-erasure map u(.): UTF-8 aware lowercasing covering ASCII and the
// Latin-1 supplement (A-Z plus À..Þ, which handles the accented letters of
// the languages this toolkit targets).  Other code points pass through.
std::string Lowercase(std::string_view token);

// Word-initial marker handling for serialized word-piece token streams.
// A piece occurrence that begins a word is rendered with a leading "_";
// literal underscores in the raw text are escaped as "\_".
std::string RenderPiece(std::string_view piece, bool word_initial);
// Inverse of RenderPiece; *word_initial reports whether the marker was set.
std::string ParsePiece(std::string_view rendered, bool* word_initial);

}  // namespace fedngram

#endif  // FEDNGRAM_COMMON_TEXT_H_
