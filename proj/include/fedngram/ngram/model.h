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

#ifndef FEDNGRAM_NGRAM_MODEL_H_
#define FEDNGRAM_NGRAM_MODEL_H_

#include <memory>
#include <span>
#include <vector>

#include "fedngram/ngram/topology.h"

namespace fedngram {

struct Resolution {
  int state = -1;       // state where the label was read
  int dest = -1;        // state after reading it
  double prob = 0.0;    // product of traversed backoff weights and the arc weight
};

// Backoff n-gram model: an NGramTopology plus transition weights in (0, 1],
// per-state backoff weights > 0, and per-state sentence-end weights.
// Sentence end is a final weight, not an ordinary symbol; a state with an
// explicit final uses it directly, otherwise end probability backs off.
// Immutable after construction; all queries are const and thread-safe.
class BackoffNGramModel {
 public:
  // Weight vectors are parallel to topology arc ids / state ids.  Backoff
  // weights of the root and of states absent from the topology are ignored
  // but must be sized; final weights at states without the explicit-final
  // flag must be zero.
  BackoffNGramModel(TopologyPtr topology, std::vector<double> arc_weights,
                    std::vector<double> backoff_weights,
                    std::vector<double> final_weights);

  const NGramTopology& topology() const { return *topology_; }
  const TopologyPtr& topology_ptr() const { return topology_; }
  const SymbolTablePtr& symbols() const { return topology_->symbols(); }

  double arc_weight(int64_t arc_id) const { return arc_weights_[arc_id]; }
  double backoff_weight(int state) const { return backoff_weights_[state]; }
  double final_weight(int state) const { return final_weights_[state]; }

  // Follows the backoff path from `state` until `label` is readable and
  // returns the traversal product times the arc weight.  Labels unreadable
  // everywhere fall back to the unknown token; if even that is unreadable
  // the model cannot serve the query and a ContractViolation is thrown.
  Resolution Resolve(int state, int label) const;

  // Sentence-end probability with backoff resolution.
  double EndProb(int state) const;

  // Probability of `label` at an arbitrary token context (longest-suffix
  // state lookup), 0.0 if the label is unreadable.  No unknown mapping;
  // used by interpolation and pruning.
  double ProbAtContext(std::span<const int> context, int label) const;
  double EndProbAtContext(std::span<const int> context) const;

  // Natural-log probability of a full sentence including its end event.
  // Tokens are ids from the model's symbol table (unknowns already mapped).
  double SequenceLogProb(std::span<const int> sentence) const;

  // Max over states of |sum_x p(x|q) + p(end|q) - 1|, by full enumeration
  // of the symbols readable at the root.
  double MaxNormalizationError() const;

 private:
  TopologyPtr topology_;
  std::vector<double> arc_weights_;
  std::vector<double> backoff_weights_;
  std::vector<double> final_weights_;
};

using ModelPtr = std::shared_ptr<const BackoffNGramModel>;

// Recomputes backoff weights so that every state's conditional distribution
// (explicit arcs + explicit final + backed-off remainder) sums to one.
// Processes states root-first; weights of explicit entries are untouched.
std::vector<double> ComputeBackoffWeights(
    const NGramTopology& topology, const std::vector<double>& arc_weights,
    const std::vector<double>& final_weights);

}  // namespace fedngram

#endif  // FEDNGRAM_NGRAM_MODEL_H_
