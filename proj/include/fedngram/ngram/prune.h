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

#ifndef FEDNGRAM_NGRAM_PRUNE_H_
#define FEDNGRAM_NGRAM_PRUNE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fedngram/ngram/model.h"

namespace fedngram {

// Relative-entropy score of removing one order>=2 entry: the weighted KL
// divergence between the model and the model with the entry removed and the
// state's backoff weight readjusted, using context marginals chained from
// the model's own probabilities.  Lower scores are pruned first.
double EntryRemovalScore(const BackoffNGramModel& model, int state,
                         int label_or_end, bool is_end);

// Removes lowest-scoring order>=2 entries (ties broken lexicographically on
// order, context string, label string) until the serialized entry count is
// within max_ngrams, then rebuilds the topology and recomputes backoff
// weights.  An entry is skipped while other retained entries still need its
// state.  Unigrams are never removed; budgets that cannot hold them raise
// DataError.
ModelPtr Prune(const BackoffNGramModel& model, int64_t max_ngrams,
               int64_t max_unigrams);

}  // namespace fedngram

#endif  // FEDNGRAM_NGRAM_PRUNE_H_
