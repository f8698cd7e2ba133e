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

#ifndef FEDNGRAM_NGRAM_SYMBOL_TABLE_H_
#define FEDNGRAM_NGRAM_SYMBOL_TABLE_H_

#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fedngram {

// Bijective token <-> dense id mapping.  Ids 0..2 are always the reserved
// sentence-start, sentence-end, and unknown-word tokens.
class SymbolTable {
 public:
  static constexpr int kBos = 0;
  static constexpr int kEos = 1;
  static constexpr int kUnk = 2;

  static constexpr const char* kBosToken = "<s>";
  static constexpr const char* kEosToken = "</s>";
  static constexpr const char* kUnkToken = "<unk>";

  SymbolTable();

  // Returns the id of token, adding it if absent.
  int AddSymbol(std::string_view token);
  // Returns the id of token, or -1 if absent.
  int Find(std::string_view token) const;
  // Returns the id of token, or kUnk if absent.
  int FindOrUnk(std::string_view token) const;

  const std::string& Token(int id) const;
  int size() const { return static_cast<int>(tokens_.size()); }

  // Number of symbols eligible as regular model labels (everything except
  // the sentence-start and sentence-end tokens).
  int num_regular() const { return size() - 2; }
  static bool IsRegular(int id) { return id != kBos && id != kEos; }

  // Maps every token through the given sentence, unknown tokens to kUnk.
  std::vector<int> MapSentence(const std::vector<std::string>& tokens) const;
  std::vector<std::string> UnmapSentence(const std::vector<int>& ids) const;

  bool ContentEquals(const SymbolTable& other) const;

  // Builds a table from a token list (reserved tokens prepended if missing).
  static std::shared_ptr<const SymbolTable> FromTokens(
      const std::vector<std::string>& tokens);

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> ids_;
};

using SymbolTablePtr = std::shared_ptr<const SymbolTable>;

}  // namespace fedngram

#endif  // FEDNGRAM_NGRAM_SYMBOL_TABLE_H_
