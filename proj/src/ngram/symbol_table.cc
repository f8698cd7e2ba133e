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

#include "fedngram/ngram/symbol_table.h"

#include "fedngram/common/error.h"

namespace fedngram {

SymbolTable::SymbolTable() {
  AddSymbol(kBosToken);
  AddSymbol(kEosToken);
  AddSymbol(kUnkToken);
}

int SymbolTable::AddSymbol(std::string_view token) {
  auto it = ids_.find(std::string(token));
  if (it != ids_.end()) return it->second;
  const int id = static_cast<int>(tokens_.size());
  tokens_.emplace_back(token);
  ids_.emplace(tokens_.back(), id);
  return id;
}

int SymbolTable::Find(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  return it == ids_.end() ? -1 : it->second;
}

int SymbolTable::FindOrUnk(std::string_view token) const {
  const int id = Find(token);
  return id < 0 ? kUnk : id;
}

const std::string& SymbolTable::Token(int id) const {
  Require(id >= 0 && id < size(), "symbol id out of range");
  return tokens_[id];
}

std::vector<int> SymbolTable::MapSentence(
    const std::vector<std::string>& tokens) const {
  std::vector<int> ids;
  ids.reserve(tokens.size());
  for (const auto& token : tokens) ids.push_back(FindOrUnk(token));
  return ids;
}

std::vector<std::string> SymbolTable::UnmapSentence(
    const std::vector<int>& ids) const {
  std::vector<std::string> tokens;
  tokens.reserve(ids.size());
  for (int id : ids) tokens.push_back(Token(id));
  return tokens;
}

bool SymbolTable::ContentEquals(const SymbolTable& other) const {
  return tokens_ == other.tokens_;
}

std::shared_ptr<const SymbolTable> SymbolTable::FromTokens(
    const std::vector<std::string>& tokens) {
  auto table = std::make_shared<SymbolTable>();
  for (const auto& token : tokens) table->AddSymbol(token);
  return table;
}

}  // namespace fedngram
