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

#ifndef FEDNGRAM_NGRAM_ARPA_H_
#define FEDNGRAM_NGRAM_ARPA_H_

#include <memory>
#include <string>

#include "fedngram/ngram/model.h"

namespace fedngram {

// ARPA text serialization.  Probabilities and backoff weights are log10
// with seven decimals; internal zero weights use the conventional -99
// pseudo-zero.  Entries within a section are sorted by token ids.  The
// backoff column is present exactly when the entry's token sequence is a
// state of the model, so write -> read -> write is byte-identical.
std::string WriteArpa(const BackoffNGramModel& model);
void WriteArpaFile(const BackoffNGramModel& model, const std::string& path);

// Parses ARPA text.  Malformed headers, section count mismatches, and
// non-finite log probabilities raise DataError naming the offending line.
// An existing symbol table may be supplied to keep ids aligned across
// models; new tokens are not permitted in that case.
ModelPtr ReadArpa(const std::string& text,
                  SymbolTablePtr symbols = nullptr);
ModelPtr ReadArpaFile(const std::string& path,
                      SymbolTablePtr symbols = nullptr);

}  // namespace fedngram

#endif  // FEDNGRAM_NGRAM_ARPA_H_
