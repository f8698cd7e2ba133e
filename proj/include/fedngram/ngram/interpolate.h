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

#ifndef FEDNGRAM_NGRAM_INTERPOLATE_H_
#define FEDNGRAM_NGRAM_INTERPOLATE_H_

#include "fedngram/ngram/model.h"

namespace fedngram {

// Linear mixture of two models over the union of their n-gram entries:
// each explicit entry receives mix * p_a + (1 - mix) * p_b of the two
// models' backoff-evaluated probabilities at that context, then backoff
// weights are recomputed so normalization holds.  Entries whose mixture
// probability is zero (possible only at mix 0 or 1) are dropped.
// Requires identical symbol tables.
ModelPtr Interpolate(const BackoffNGramModel& a, const BackoffNGramModel& b,
                     double mix);

}  // namespace fedngram

#endif  // FEDNGRAM_NGRAM_INTERPOLATE_H_
