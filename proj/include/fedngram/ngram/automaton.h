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

#ifndef FEDNGRAM_NGRAM_AUTOMATON_H_
#define FEDNGRAM_NGRAM_AUTOMATON_H_

#include <cstdint>
#include <span>

namespace fedngram {

// One labeled transition of a deterministic backoff automaton.  Arcs of a
// state are stored contiguously and sorted by label, so both binary search
// and ordered iteration are cheap.
struct Arc {
  int32_t label = -1;
  int32_t dest = -1;
  // Output word label for transducer-derived automata; -1 means epsilon.
  int32_t output = -1;
};

// Read-only view of a deterministic WFA skeleton with failure (backoff)
// transitions.  Implemented by NGramTopology and ComposedTopology so that
// the counting step and KL minimization work on either.
class BackoffAutomaton {
 public:
  virtual ~BackoffAutomaton() = default;

  virtual int num_states() const = 0;
  virtual int64_t num_arcs() const = 0;
  virtual int initial_state() const = 0;

  // Arcs leaving a state, sorted by label.  Global arc ids are
  // arc_offset(state) + position within the span.
  virtual std::span<const Arc> arcs(int state) const = 0;
  virtual int64_t arc_offset(int state) const = 0;

  // Global arc id of (state, label), or -1 when the label is not explicit.
  virtual int64_t FindArc(int state, int label) const = 0;

  // Backoff target, or -1 for the root of the backoff forest.
  virtual int backoff(int state) const = 0;

  // True when the state carries an explicit sentence-end weight.
  virtual bool final_explicit(int state) const = 0;
};

}  // namespace fedngram

#endif  // FEDNGRAM_NGRAM_AUTOMATON_H_
