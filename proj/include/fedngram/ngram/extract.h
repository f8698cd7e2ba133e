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

#ifndef FEDNGRAM_NGRAM_EXTRACT_H_
#define FEDNGRAM_NGRAM_EXTRACT_H_

#include <vector>

#include "fedngram/ngram/counts.h"
#include "fedngram/ngram/topology.h"

namespace fedngram {

// Sentences as vectors of symbol ids (unknowns already mapped to <unk>).
using IdCorpus = std::vector<std::vector<int>>;

// n-grams with corpus count >= min_count[order-1] (the last entry repeats
// for higher orders; empty means threshold 1 everywhere), closed under
// context and suffix so every state's backoff target exists.  Sentences are
// padded with the sentence-start context and contribute an end event.
TopologyPtr ExtractTopology(const IdCorpus& corpus, int order,
                            SymbolTablePtr vocab,
                            const std::vector<int64_t>& min_count = {});

// Hard n-gram counts on an existing topology: each observed token adds one
// unit at its backoff-resolved reading state, each sentence end one unit at
// the resolved final state, with backoff traversals tracked.  Feeding the
// result to KlMinimize yields the count-trained model for that topology.
ExpectedCounts CountCorpus(const NGramTopology& topology,
                           const IdCorpus& corpus);

IdCorpus MapCorpus(const std::vector<std::vector<std::string>>& sentences,
                   const SymbolTable& vocab);

}  // namespace fedngram

#endif  // FEDNGRAM_NGRAM_EXTRACT_H_
