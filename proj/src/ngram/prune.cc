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

#include "fedngram/ngram/prune.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "fedngram/common/error.h"

namespace fedngram {

namespace {

// Model-derived context marginal: chained conditional probabilities, with
// the sentence-start token contributing a unit factor.
double ContextMarginal(const BackoffNGramModel& model,
                       std::span<const int> context) {
  double p = 1.0;
  for (size_t i = 0; i < context.size(); ++i) {
    if (context[i] == SymbolTable::kBos) continue;
    p *= model.ProbAtContext(context.subspan(0, i), context[i]);
  }
  return p;
}

struct BackoffParts {
  double numerator = 0.0;    // explicit mass left over at the state
  double denominator = 0.0;  // parent mass outside the explicit set
};

BackoffParts StateBackoffParts(const BackoffNGramModel& model, int state) {
  const NGramTopology& topo = model.topology();
  const int parent = topo.backoff(state);
  double kept = 0.0;
  double shadowed = 0.0;
  const auto arcs = topo.arcs(state);
  for (size_t i = 0; i < arcs.size(); ++i) {
    kept += model.arc_weight(topo.arc_offset(state) + i);
    shadowed += model.ProbAtContext(topo.context(parent), arcs[i].label);
  }
  if (topo.final_explicit(state)) {
    kept += model.final_weight(state);
    shadowed += model.EndProb(parent);
  }
  BackoffParts parts;
  parts.numerator = std::max(1.0 - kept, 1e-12);
  parts.denominator = std::max(1.0 - shadowed, 1e-12);
  return parts;
}

}  // namespace

double EntryRemovalScore(const BackoffNGramModel& model, int state,
                         int label_or_end, bool is_end) {
  const NGramTopology& topo = model.topology();
  const int parent = topo.backoff(state);
  Require(parent >= 0, "unigram entries are not scoreable for removal");

  double entry_prob;
  double parent_prob;
  if (is_end) {
    entry_prob = model.final_weight(state);
    parent_prob = model.EndProb(parent);
  } else {
    const int64_t arc_id = topo.FindArc(state, label_or_end);
    Require(arc_id >= 0, "no such transition to score");
    entry_prob = model.arc_weight(arc_id);
    parent_prob = model.Resolve(parent, label_or_end).prob;
  }
  if (parent_prob <= 0.0) return std::numeric_limits<double>::infinity();
  if (entry_prob <= 0.0) return 0.0;

  const BackoffParts parts = StateBackoffParts(model, state);
  const double alpha_old = parts.numerator / parts.denominator;
  const double alpha_new =
      (parts.numerator + entry_prob) / (parts.denominator + parent_prob);
  const double divergence =
      entry_prob * std::log(entry_prob / (alpha_new * parent_prob)) +
      parts.numerator * std::log(alpha_old / alpha_new);
  return ContextMarginal(model, topo.context(state)) * divergence;
}

ModelPtr Prune(const BackoffNGramModel& model, int64_t max_ngrams,
               int64_t max_unigrams) {
  const NGramTopology& topo = model.topology();
  const auto per_order = topo.EntryCountsPerOrder();
  RequireData(per_order[0] <= max_unigrams,
              "unigram budget below the model's unigram count");
  RequireData(max_ngrams >= per_order[0],
              "n-gram budget cannot hold the required unigrams");

  int64_t total = topo.TotalEntries();
  if (total <= max_ngrams) {
    return std::make_shared<BackoffNGramModel>(model);
  }

  struct Candidate {
    double score;
    int order;
    std::string context_str;
    std::string label_str;
    std::vector<int> tokens;  // context + label; finals end with kEos
    int state;
    int label;
    bool is_end;
  };
  std::vector<Candidate> candidates;
  for (int state = 0; state < topo.num_states(); ++state) {
    if (topo.context_length(state) == 0) continue;
    const auto ctx = topo.context(state);
    for (const Arc& arc : topo.arcs(state)) {
      Candidate c;
      c.score = EntryRemovalScore(model, state, arc.label, false);
      c.order = topo.context_length(state) + 1;
      c.context_str = topo.ContextString(state);
      c.label_str = model.symbols()->Token(arc.label);
      c.tokens.assign(ctx.begin(), ctx.end());
      c.tokens.push_back(arc.label);
      c.state = state;
      c.label = arc.label;
      c.is_end = false;
      candidates.push_back(std::move(c));
    }
    if (topo.final_explicit(state)) {
      Candidate c;
      c.score = EntryRemovalScore(model, state, -1, true);
      c.order = topo.context_length(state) + 1;
      c.context_str = topo.ContextString(state);
      c.label_str = SymbolTable::kEosToken;
      c.tokens.assign(ctx.begin(), ctx.end());
      c.tokens.push_back(SymbolTable::kEos);
      c.state = state;
      c.label = -1;
      c.is_end = true;
      candidates.push_back(std::move(c));
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              if (a.score != b.score) return a.score < b.score;
              if (a.order != b.order) return a.order < b.order;
              if (a.context_str != b.context_str)
                return a.context_str < b.context_str;
              return a.label_str < b.label_str;
            });

  // An entry is removable only while no retained entry needs its state:
  // no live arcs or final at the state, and no live state backing off into
  // it.  Dependents are strictly longer, so repeated passes terminate.
  std::set<std::vector<int>> removed;
  auto entry_alive = [&](std::span<const int> tokens) {
    return removed.find(std::vector<int>(tokens.begin(), tokens.end())) ==
           removed.end();
  };
  std::vector<std::vector<int>> backing_in(topo.num_states());
  for (int state = 0; state < topo.num_states(); ++state) {
    const int parent = topo.backoff(state);
    if (parent >= 0) backing_in[parent].push_back(state);
  }
  auto state_alive = [&](int state) {
    const auto ctx = topo.context(state);
    if (ctx.empty()) return true;
    if (ctx.size() == 1 && ctx[0] == SymbolTable::kBos) return true;
    return entry_alive(ctx);
  };
  auto blocked = [&](const Candidate& c) {
    if (c.is_end) return false;
    const int as_state = topo.FindState(c.tokens);
    if (as_state < 0) return false;
    const auto ctx = topo.context(as_state);
    std::vector<int> tokens(ctx.begin(), ctx.end());
    tokens.push_back(-1);
    for (const Arc& arc : topo.arcs(as_state)) {
      tokens.back() = arc.label;
      if (entry_alive(tokens)) return true;
    }
    if (topo.final_explicit(as_state)) {
      tokens.back() = SymbolTable::kEos;
      if (entry_alive(tokens)) return true;
    }
    for (int t : backing_in[as_state]) {
      if (t != as_state && state_alive(t)) return true;
    }
    return false;
  };

  while (total > max_ngrams) {
    bool progress = false;
    for (const Candidate& c : candidates) {
      if (total <= max_ngrams) break;
      if (!entry_alive(c.tokens) || blocked(c)) continue;
      removed.insert(c.tokens);
      --total;
      progress = true;
    }
    Require(progress, "pruning made no progress toward the budget");
  }

  // Rebuild from the retained entries; the retained set is context-closed
  // because a state's own entry stays blocked while its arcs live.
  TopologyBuilder builder(model.symbols(), topo.order());
  std::map<std::vector<int>, double> kept_trans;
  std::map<std::vector<int>, double> kept_finals;
  for (int state = 0; state < topo.num_states(); ++state) {
    const auto ctx = topo.context(state);
    std::vector<int> tokens(ctx.begin(), ctx.end());
    tokens.push_back(-1);
    const auto arcs = topo.arcs(state);
    for (size_t i = 0; i < arcs.size(); ++i) {
      tokens.back() = arcs[i].label;
      if (!entry_alive(tokens)) continue;
      kept_trans[tokens] = model.arc_weight(topo.arc_offset(state) + i);
    }
    if (topo.final_explicit(state)) {
      tokens.back() = SymbolTable::kEos;
      if (topo.context_length(state) == 0 || entry_alive(tokens)) {
        kept_finals[std::vector<int>(ctx.begin(), ctx.end())] =
            model.final_weight(state);
      }
    }
  }
  for (const auto& [tokens, w] : kept_trans) builder.AddNGram(tokens);
  for (const auto& [ctx, w] : kept_finals) builder.AddFinal(ctx);
  TopologyPtr pruned = std::move(builder).Build();

  std::vector<double> arc_weights(pruned->num_arcs(), 0.0);
  std::vector<double> final_weights(pruned->num_states(), 0.0);
  for (const auto& [tokens, w] : kept_trans) {
    const std::span<const int> ctx(tokens.data(), tokens.size() - 1);
    arc_weights[pruned->FindArc(pruned->FindState(ctx), tokens.back())] = w;
  }
  for (const auto& [ctx, w] : kept_finals) {
    final_weights[pruned->FindState(ctx)] = w;
  }
  std::vector<double> backoff =
      ComputeBackoffWeights(*pruned, arc_weights, final_weights);
  return std::make_shared<BackoffNGramModel>(
      std::move(pruned), std::move(arc_weights), std::move(backoff),
      std::move(final_weights));
}

}  // namespace fedngram
