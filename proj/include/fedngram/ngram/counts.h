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

#ifndef FEDNGRAM_NGRAM_COUNTS_H_
#define FEDNGRAM_NGRAM_COUNTS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "fedngram/ngram/automaton.h"

namespace fedngram {

// Accumulated counts C(x, q) from the counting step, keyed to an automaton:
// one slot per arc, per-state sentence-end slots, and per-state backoff
// traversal slots (mass that crossed the state's failure edge).  All values
// are nonnegative.
class ExpectedCounts {
 public:
  ExpectedCounts() = default;
  explicit ExpectedCounts(const BackoffAutomaton& automaton)
      : arc_(automaton.num_arcs(), 0.0),
        end_(automaton.num_states(), 0.0),
        backoff_(automaton.num_states(), 0.0) {}

  double arc(int64_t arc_id) const { return arc_[arc_id]; }
  double end(int state) const { return end_[state]; }
  double backoff(int state) const { return backoff_[state]; }

  void AddArc(int64_t arc_id, double value) { arc_[arc_id] += value; }
  void AddEnd(int state, double value) { end_[state] += value; }
  void AddBackoff(int state, double value) { backoff_[state] += value; }

  int64_t num_arcs() const { return static_cast<int64_t>(arc_.size()); }
  int num_states() const { return static_cast<int>(end_.size()); }

  // Sum of arc and end counts (backoff traversals are bookkeeping, not
  // probability mass, and are excluded).
  double TotalMass() const;

  void AddFrom(const ExpectedCounts& other);
  void Scale(double factor);

  // True if every count is nonnegative and finite.
  bool Valid() const;

 private:
  std::vector<double> arc_;
  std::vector<double> end_;
  std::vector<double> backoff_;
};

}  // namespace fedngram

#endif  // FEDNGRAM_NGRAM_COUNTS_H_
