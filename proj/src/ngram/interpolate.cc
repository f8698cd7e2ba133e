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

#include "fedngram/ngram/interpolate.h"

#include <map>
#include <vector>

#include "fedngram/common/error.h"

namespace fedngram {

namespace {

void CollectEntries(const NGramTopology& topo,
                    std::map<std::vector<int>, bool>* transitions,
                    std::map<std::vector<int>, bool>* finals) {
  for (int state = 0; state < topo.num_states(); ++state) {
    const auto ctx = topo.context(state);
    std::vector<int> tokens(ctx.begin(), ctx.end());
    tokens.push_back(-1);
    for (const Arc& arc : topo.arcs(state)) {
      tokens.back() = arc.label;
      (*transitions)[tokens] = true;
    }
    if (topo.final_explicit(state)) {
      (*finals)[std::vector<int>(ctx.begin(), ctx.end())] = true;
    }
  }
}

}  // namespace

ModelPtr Interpolate(const BackoffNGramModel& a, const BackoffNGramModel& b,
                     double mix) {
  Require(mix >= 0.0 && mix <= 1.0, "mix weight must be in [0, 1]");
  RequireData(a.symbols()->ContentEquals(*b.symbols()),
              "interpolation requires identical vocabularies");

  std::map<std::vector<int>, bool> transitions;
  std::map<std::vector<int>, bool> finals;
  CollectEntries(a.topology(), &transitions, &finals);
  CollectEntries(b.topology(), &transitions, &finals);

  std::map<std::vector<int>, double> trans_prob;
  for (const auto& [tokens, unused] : transitions) {
    const std::span<const int> ctx(tokens.data(), tokens.size() - 1);
    const int label = tokens.back();
    const double p = mix * a.ProbAtContext(ctx, label) +
                     (1.0 - mix) * b.ProbAtContext(ctx, label);
    if (p > 0.0) trans_prob.emplace(tokens, p);
  }
  std::map<std::vector<int>, double> final_prob;
  for (const auto& [ctx, unused] : finals) {
    const double p = mix * a.EndProbAtContext(ctx) +
                     (1.0 - mix) * b.EndProbAtContext(ctx);
    if (p > 0.0 || ctx.empty()) final_prob.emplace(ctx, p);
  }

  const int order = std::max(a.topology().order(), b.topology().order());
  TopologyBuilder builder(a.symbols(), order);
  for (const auto& [tokens, p] : trans_prob) builder.AddNGram(tokens);
  for (const auto& [ctx, p] : final_prob) builder.AddFinal(ctx);
  TopologyPtr topo = std::move(builder).Build();

  std::vector<double> arc_weights(topo->num_arcs(), 0.0);
  std::vector<double> final_weights(topo->num_states(), 0.0);
  for (const auto& [tokens, p] : trans_prob) {
    const std::span<const int> ctx(tokens.data(), tokens.size() - 1);
    const int state = topo->FindState(ctx);
    arc_weights[topo->FindArc(state, tokens.back())] = p;
  }
  for (const auto& [ctx, p] : final_prob) {
    final_weights[topo->FindState(ctx)] = p;
  }
  std::vector<double> backoff =
      ComputeBackoffWeights(*topo, arc_weights, final_weights);
  return std::make_shared<BackoffNGramModel>(
      std::move(topo), std::move(arc_weights), std::move(backoff),
      std::move(final_weights));
}

}  // namespace fedngram
