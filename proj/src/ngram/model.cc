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

#include "fedngram/ngram/model.h"

#include <cmath>

#include "fedngram/common/error.h"

namespace fedngram {

BackoffNGramModel::BackoffNGramModel(TopologyPtr topology,
                                     std::vector<double> arc_weights,
                                     std::vector<double> backoff_weights,
                                     std::vector<double> final_weights)
    : topology_(std::move(topology)),
      arc_weights_(std::move(arc_weights)),
      backoff_weights_(std::move(backoff_weights)),
      final_weights_(std::move(final_weights)) {
  Require(topology_ != nullptr, "model needs a topology");
  Require(static_cast<int64_t>(arc_weights_.size()) == topology_->num_arcs(),
          "arc weight vector size mismatch");
  Require(static_cast<int>(backoff_weights_.size()) == topology_->num_states(),
          "backoff weight vector size mismatch");
  Require(static_cast<int>(final_weights_.size()) == topology_->num_states(),
          "final weight vector size mismatch");
}

Resolution BackoffNGramModel::Resolve(int state, int label) const {
  const NGramTopology& topo = *topology_;
  Require(state >= 0 && state < topo.num_states(), "state id out of range");
  int mapped = label;
  if (mapped < 0 || mapped >= symbols()->size() ||
      topo.FindArc(topo.root_state(), mapped) < 0) {
    // Unreadable everywhere: queries map to the unknown token, which always
    // carries an explicit unigram in pipeline-built models.
    mapped = SymbolTable::kUnk;
    Require(topo.FindArc(topo.root_state(), mapped) >= 0,
            "label unreadable and model has no <unk> unigram");
  }
  double weight = 1.0;
  int q = state;
  while (true) {
    const int64_t arc_id = topo.FindArc(q, mapped);
    if (arc_id >= 0) {
      Resolution r;
      r.state = q;
      r.dest = topo.arcs(q)[arc_id - topo.arc_offset(q)].dest;
      r.prob = weight * arc_weights_[arc_id];
      return r;
    }
    weight *= backoff_weights_[q];
    q = topo.backoff(q);
    Require(q >= 0, "backoff chain ended before the root unigram");
  }
}

double BackoffNGramModel::EndProb(int state) const {
  const NGramTopology& topo = *topology_;
  Require(state >= 0 && state < topo.num_states(), "state id out of range");
  double weight = 1.0;
  int q = state;
  while (true) {
    if (topo.final_explicit(q)) return weight * final_weights_[q];
    const int parent = topo.backoff(q);
    if (parent < 0) return 0.0;
    weight *= backoff_weights_[q];
    q = parent;
  }
}

double BackoffNGramModel::ProbAtContext(std::span<const int> context,
                                        int label) const {
  const NGramTopology& topo = *topology_;
  if (label < 0 || topo.FindArc(topo.root_state(), label) < 0) return 0.0;
  int q = topo.LongestSuffixState(context);
  double weight = 1.0;
  while (true) {
    const int64_t arc_id = topo.FindArc(q, label);
    if (arc_id >= 0) return weight * arc_weights_[arc_id];
    weight *= backoff_weights_[q];
    q = topo.backoff(q);
  }
}

double BackoffNGramModel::EndProbAtContext(std::span<const int> context) const {
  return EndProb(topology_->LongestSuffixState(context));
}

double BackoffNGramModel::SequenceLogProb(std::span<const int> sentence) const {
  const NGramTopology& topo = *topology_;
  int state = topo.initial_state();
  double logprob = 0.0;
  for (int token : sentence) {
    const Resolution r = Resolve(state, token);
    logprob += std::log(r.prob);
    state = r.dest;
  }
  return logprob + std::log(EndProb(state));
}

double BackoffNGramModel::MaxNormalizationError() const {
  const NGramTopology& topo = *topology_;
  double max_err = 0.0;
  for (int state = 0; state < topo.num_states(); ++state) {
    double total = EndProb(state);
    for (const Arc& root_arc : topo.arcs(topo.root_state())) {
      total += Resolve(state, root_arc.label).prob;
    }
    max_err = std::max(max_err, std::fabs(total - 1.0));
  }
  return max_err;
}

std::vector<double> ComputeBackoffWeights(
    const NGramTopology& topology, const std::vector<double>& arc_weights,
    const std::vector<double>& final_weights) {
  constexpr double kTinyMass = 1e-12;
  std::vector<double> backoff(topology.num_states(), 1.0);
  // Evaluated conditional p(x|state) using weights computed so far; valid
  // for states whose ancestors are already processed (root-first order).
  auto prob_at = [&](int state, int label) {
    double weight = 1.0;
    int q = state;
    while (q >= 0) {
      const int64_t arc_id = topology.FindArc(q, label);
      if (arc_id >= 0) return weight * arc_weights[arc_id];
      weight *= backoff[q];
      q = topology.backoff(q);
    }
    return 0.0;
  };
  auto end_at = [&](int state) {
    double weight = 1.0;
    int q = state;
    while (q >= 0) {
      if (topology.final_explicit(q)) return weight * final_weights[q];
      weight *= backoff[q];
      q = topology.backoff(q);
    }
    return 0.0;
  };
  for (int state : topology.states_by_depth()) {
    const int parent = topology.backoff(state);
    if (parent < 0) continue;
    double kept = 0.0;
    double shadowed = 0.0;
    const auto arcs = topology.arcs(state);
    for (size_t i = 0; i < arcs.size(); ++i) {
      kept += arc_weights[topology.arc_offset(state) + i];
      shadowed += prob_at(parent, arcs[i].label);
    }
    if (topology.final_explicit(state)) {
      kept += final_weights[state];
      shadowed += end_at(parent);
    }
    double numerator = 1.0 - kept;
    double denominator = 1.0 - shadowed;
    if (numerator < kTinyMass) numerator = kTinyMass;
    if (denominator < kTinyMass) denominator = kTinyMass;
    backoff[state] = numerator / denominator;
  }
  return backoff;
}

}  // namespace fedngram
