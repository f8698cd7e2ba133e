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

#ifndef FEDNGRAM_NGRAM_TOPOLOGY_H_
#define FEDNGRAM_NGRAM_TOPOLOGY_H_

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fedngram/ngram/automaton.h"
#include "fedngram/ngram/symbol_table.h"

namespace fedngram {

class NGramTopology;
using TopologyPtr = std::shared_ptr<const NGramTopology>;

// Mutable accumulator of n-gram entries.  Build() closes the entry set:
//   - every entry's context chain is present (an entry "a b c" forces the
//     entry "a b", recursively), so each state owns the line that carries
//     its backoff weight in ARPA form;
//   - the state set is suffix-closed, so backoff targets always exist.
// Entries ending in the sentence-end token become explicit finals of their
// context state.  The sentence-start token is only legal as a context
// prefix, never as a transition label.
class TopologyBuilder {
 public:
  TopologyBuilder(SymbolTablePtr symbols, int order);

  // tokens = context + label, length in [1, order].  Returns false if the
  // entry was already present.
  bool AddNGram(std::span<const int> tokens);
  void AddFinal(std::span<const int> context);

  bool HasNGram(std::span<const int> tokens) const;

  TopologyPtr Build() &&;

 private:
  struct StateEntry {
    std::map<int, int> arcs;  // label -> placeholder (sorted)
    bool final_explicit = false;
  };

  StateEntry& EnsureState(const std::vector<int>& context);

  SymbolTablePtr symbols_;
  int order_;
  std::map<std::vector<int>, StateEntry> states_;
};

// Immutable n-gram skeleton: states identified by contexts of up to
// order-1 token ids, deterministic labeled transitions, one backoff edge
// per non-root state, explicit-final flags.  The root (empty context) is
// always an explicit final so sentence-end probabilities resolve.
class NGramTopology : public BackoffAutomaton {
 public:
  int order() const { return order_; }
  const SymbolTablePtr& symbols() const { return symbols_; }

  int num_states() const override { return static_cast<int>(state_arc_begin_.size()) - 1; }
  int64_t num_arcs() const override { return static_cast<int64_t>(arcs_.size()); }
  int initial_state() const override { return initial_; }
  int root_state() const { return root_; }

  std::span<const Arc> arcs(int state) const override {
    return std::span<const Arc>(arcs_.data() + state_arc_begin_[state],
                                state_arc_begin_[state + 1] - state_arc_begin_[state]);
  }
  int64_t arc_offset(int state) const override { return state_arc_begin_[state]; }
  int64_t FindArc(int state, int label) const override;
  int backoff(int state) const override { return backoff_[state]; }
  bool final_explicit(int state) const override { return final_explicit_[state]; }

  std::span<const int> context(int state) const {
    return std::span<const int>(context_pool_.data() + context_begin_[state],
                                context_begin_[state + 1] - context_begin_[state]);
  }
  int context_length(int state) const {
    return static_cast<int>(context_begin_[state + 1] - context_begin_[state]);
  }
  std::string ContextString(int state) const;

  // State id of the given context, or -1.
  int FindState(std::span<const int> context) const;
  // Longest suffix of `tokens` (bounded by order-1) registered as a state.
  int LongestSuffixState(std::span<const int> tokens) const;
  // Destination of reading `label` from `state`: longest registered suffix
  // of context(state) + label.
  int Advance(int state, int label) const;

  // Number of serialized n-gram entries per order (1-based; entries are
  // transitions, explicit finals, and the <s> pseudo-entry).
  std::vector<int64_t> EntryCountsPerOrder() const;
  int64_t TotalEntries() const;

  // States sorted by increasing context length (root first); the backoff
  // parent of any state precedes it.
  const std::vector<int>& states_by_depth() const { return states_by_depth_; }

 private:
  friend class TopologyBuilder;
  NGramTopology() = default;

  SymbolTablePtr symbols_;
  int order_ = 1;
  int root_ = 0;
  int initial_ = 0;

  // Context storage: concatenated pool with per-state offsets.
  std::vector<int> context_pool_;
  std::vector<int64_t> context_begin_;

  std::vector<Arc> arcs_;
  std::vector<int64_t> state_arc_begin_;
  std::vector<int> backoff_;
  std::vector<uint8_t> final_explicit_;
  std::vector<int> states_by_depth_;

  // Context -> state lookup.
  std::map<std::vector<int>, int> state_index_;
};

}  // namespace fedngram

#endif  // FEDNGRAM_NGRAM_TOPOLOGY_H_
