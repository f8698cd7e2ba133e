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

#include "fedngram/ngram/topology.h"

#include <algorithm>

#include "fedngram/common/error.h"

namespace fedngram {

TopologyBuilder::TopologyBuilder(SymbolTablePtr symbols, int order)
    : symbols_(std::move(symbols)), order_(order) {
  Require(order_ >= 1, "n-gram order must be >= 1");
  Require(symbols_ != nullptr, "topology needs a symbol table");
  EnsureState({});
  if (order_ >= 2) EnsureState({SymbolTable::kBos});
}

TopologyBuilder::StateEntry& TopologyBuilder::EnsureState(
    const std::vector<int>& context) {
  auto it = states_.find(context);
  if (it != states_.end()) return it->second;
  it = states_.emplace(context, StateEntry{}).first;
  if (!context.empty()) {
    // The state's own entry carries its backoff weight when serialized; the
    // lone exception is the sentence-start context, which has no real
    // probability and is written as a pseudo-entry.
    if (context != std::vector<int>{SymbolTable::kBos}) {
      AddNGram(context);
    }
    EnsureState(std::vector<int>(context.begin() + 1, context.end()));
  }
  return states_.find(context)->second;
}

bool TopologyBuilder::AddNGram(std::span<const int> tokens) {
  Require(!tokens.empty() && static_cast<int>(tokens.size()) <= order_,
          "n-gram length must be in [1, order]");
  const int label = tokens.back();
  if (label == SymbolTable::kEos) {
    AddFinal(tokens.subspan(0, tokens.size() - 1));
    return true;
  }
  Require(label != SymbolTable::kBos, "<s> cannot be a transition label");
  Require(label >= 0 && label < symbols_->size(), "label id out of range");
  for (size_t i = 0; i + 1 < tokens.size(); ++i) {
    Require(tokens[i] != SymbolTable::kEos, "</s> inside an n-gram context");
    Require(i == 0 || tokens[i] != SymbolTable::kBos,
            "<s> only allowed at the start of a context");
  }
  const std::vector<int> context(tokens.begin(), tokens.end() - 1);
  StateEntry& state = EnsureState(context);
  if (state.arcs.count(label)) return false;
  state.arcs.emplace(label, 0);
  if (tokens.size() > 1) AddNGram(tokens.subspan(tokens.size() - 1, 1));
  return true;
}

void TopologyBuilder::AddFinal(std::span<const int> context) {
  std::vector<int> ctx(context.begin(), context.end());
  const int max_len = order_ - 1;
  if (static_cast<int>(ctx.size()) > max_len) {
    ctx.erase(ctx.begin(), ctx.end() - max_len);
  }
  EnsureState(ctx).final_explicit = true;
}

bool TopologyBuilder::HasNGram(std::span<const int> tokens) const {
  if (tokens.empty()) return false;
  if (tokens.back() == SymbolTable::kEos) {
    auto it = states_.find(
        std::vector<int>(tokens.begin(), tokens.end() - 1));
    return it != states_.end() && it->second.final_explicit;
  }
  auto it = states_.find(std::vector<int>(tokens.begin(), tokens.end() - 1));
  return it != states_.end() && it->second.arcs.count(tokens.back()) > 0;
}

TopologyPtr TopologyBuilder::Build() && {
  auto topo = std::shared_ptr<NGramTopology>(new NGramTopology());
  topo->symbols_ = symbols_;
  topo->order_ = order_;

  // states_ is keyed lexicographically, so ids are deterministic and the
  // root (empty context) is state 0.
  int id = 0;
  for (auto& [context, entry] : states_) {
    topo->state_index_.emplace(context, id++);
  }
  const int num_states = id;
  topo->root_ = 0;

  topo->context_begin_.assign(1, 0);
  topo->state_arc_begin_.assign(1, 0);
  topo->backoff_.assign(num_states, -1);
  topo->final_explicit_.assign(num_states, 0);

  for (auto& [context, entry] : states_) {
    const int state = topo->state_index_.at(context);
    topo->context_pool_.insert(topo->context_pool_.end(), context.begin(),
                               context.end());
    topo->context_begin_.push_back(
        static_cast<int64_t>(topo->context_pool_.size()));
    topo->final_explicit_[state] = entry.final_explicit ? 1 : 0;
    if (!context.empty()) {
      const std::vector<int> suffix(context.begin() + 1, context.end());
      topo->backoff_[state] = topo->state_index_.at(suffix);
    }
    for (const auto& [label, unused] : entry.arcs) {
      Arc arc;
      arc.label = label;
      arc.dest = -2;  // filled below once the state index is complete
      topo->arcs_.push_back(arc);
    }
    topo->state_arc_begin_.push_back(static_cast<int64_t>(topo->arcs_.size()));
  }
  topo->final_explicit_[topo->root_] = 1;
  topo->initial_ =
      order_ >= 2 ? topo->state_index_.at({SymbolTable::kBos}) : topo->root_;

  // Destinations: longest registered suffix of context + label.
  for (int state = 0; state < num_states; ++state) {
    const auto ctx = topo->context(state);
    std::vector<int> extended(ctx.begin(), ctx.end());
    extended.push_back(-1);
    auto arcs = std::span<Arc>(
        topo->arcs_.data() + topo->state_arc_begin_[state],
        topo->state_arc_begin_[state + 1] - topo->state_arc_begin_[state]);
    for (Arc& arc : arcs) {
      extended.back() = arc.label;
      arc.dest = topo->LongestSuffixState(extended);
    }
  }

  topo->states_by_depth_.resize(num_states);
  for (int i = 0; i < num_states; ++i) topo->states_by_depth_[i] = i;
  std::stable_sort(topo->states_by_depth_.begin(),
                   topo->states_by_depth_.end(), [&](int a, int b) {
                     return topo->context_length(a) < topo->context_length(b);
                   });
  return topo;
}

int64_t NGramTopology::FindArc(int state, int label) const {
  Require(state >= 0 && state < num_states(), "state id out of range");
  const auto span = arcs(state);
  auto it = std::lower_bound(
      span.begin(), span.end(), label,
      [](const Arc& arc, int l) { return arc.label < l; });
  if (it == span.end() || it->label != label) return -1;
  return arc_offset(state) + (it - span.begin());
}

int NGramTopology::FindState(std::span<const int> context) const {
  auto it = state_index_.find(std::vector<int>(context.begin(), context.end()));
  return it == state_index_.end() ? -1 : it->second;
}

int NGramTopology::LongestSuffixState(std::span<const int> tokens) const {
  int max_len = std::min<int>(static_cast<int>(tokens.size()), order_ - 1);
  for (int len = max_len; len >= 1; --len) {
    const int state = FindState(tokens.subspan(tokens.size() - len, len));
    if (state >= 0) return state;
  }
  return root_;
}

int NGramTopology::Advance(int state, int label) const {
  Require(state >= 0 && state < num_states(), "state id out of range");
  const auto ctx = context(state);
  std::vector<int> extended(ctx.begin(), ctx.end());
  extended.push_back(label);
  return LongestSuffixState(extended);
}

std::string NGramTopology::ContextString(int state) const {
  std::string out;
  for (int token : context(state)) {
    if (!out.empty()) out.push_back(' ');
    out += symbols_->Token(token);
  }
  return out;
}

std::vector<int64_t> NGramTopology::EntryCountsPerOrder() const {
  std::vector<int64_t> counts(order_, 0);
  for (int state = 0; state < num_states(); ++state) {
    const int ctx_len = context_length(state);
    counts[ctx_len] += static_cast<int64_t>(arcs(state).size());
    if (final_explicit_[state]) counts[ctx_len] += 1;
  }
  if (order_ >= 2) counts[0] += 1;  // the <s> pseudo-entry
  return counts;
}

int64_t NGramTopology::TotalEntries() const {
  int64_t total = 0;
  for (int64_t c : EntryCountsPerOrder()) total += c;
  return total;
}

}  // namespace fedngram
