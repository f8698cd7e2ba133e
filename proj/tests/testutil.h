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

#ifndef FEDNGRAM_TESTS_TESTUTIL_H_
#define FEDNGRAM_TESTS_TESTUTIL_H_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fedngram/common/rng.h"
#include "fedngram/common/text.h"
#include "fedngram/ngram/extract.h"
#include "fedngram/ngram/model.h"

namespace fedngram::testutil {

// One hand-written n-gram entry: space-separated tokens; a trailing </s>
// marks an explicit final, e.g. {"a b", 0.7} or {"a </s>", 0.2}.
struct EntrySpec {
  std::string ngram;
  double prob;
};

inline ModelPtr BuildModel(SymbolTablePtr symbols, int order,
                           const std::vector<EntrySpec>& entries) {
  TopologyBuilder builder(symbols, order);
  for (const auto& spec : entries) {
    std::vector<int> tokens;
    for (const auto& token : SplitTokens(spec.ngram)) {
      tokens.push_back(symbols->Find(token));
    }
    builder.AddNGram(tokens);
  }
  TopologyPtr topo = std::move(builder).Build();
  std::vector<double> arc_weights(topo->num_arcs(), 0.0);
  std::vector<double> final_weights(topo->num_states(), 0.0);
  for (const auto& spec : entries) {
    std::vector<int> tokens;
    for (const auto& token : SplitTokens(spec.ngram)) {
      tokens.push_back(symbols->Find(token));
    }
    const std::span<const int> ctx(tokens.data(), tokens.size() - 1);
    if (tokens.back() == SymbolTable::kEos) {
      final_weights[topo->FindState(ctx)] = spec.prob;
    } else {
      arc_weights[topo->FindArc(topo->FindState(ctx), tokens.back())] =
          spec.prob;
    }
  }
  auto backoff = ComputeBackoffWeights(*topo, arc_weights, final_weights);
  return std::make_shared<BackoffNGramModel>(topo, std::move(arc_weights),
                                             std::move(backoff),
                                             std::move(final_weights));
}

inline SymbolTablePtr Vocab(const std::vector<std::string>& words) {
  return SymbolTable::FromTokens(words);
}

// Random sentences over the first `vocab_size` regular words of `symbols`.
inline IdCorpus RandomCorpus(Rng& rng, const SymbolTable& symbols,
                             int num_sentences, int max_len) {
  IdCorpus corpus;
  std::vector<int> regular;
  for (int id = 3; id < symbols.size(); ++id) regular.push_back(id);
  for (int s = 0; s < num_sentences; ++s) {
    const int len = static_cast<int>(rng.UniformInt(max_len + 1));
    std::vector<int> sentence;
    for (int i = 0; i < len; ++i) {
      sentence.push_back(regular[rng.UniformInt(regular.size())]);
    }
    corpus.push_back(std::move(sentence));
  }
  return corpus;
}

// Random normalized model: random topology from a random corpus, random
// explicit weights (root sums to one; elsewhere a margin is left for
// backoff), backoff weights recomputed.
inline ModelPtr RandomModel(Rng& rng, int vocab_size, int order,
                            int num_sentences = 40) {
  std::vector<std::string> words;
  for (int i = 0; i < vocab_size; ++i) words.push_back("w" + std::to_string(i));
  auto symbols = Vocab(words);
  IdCorpus corpus = RandomCorpus(rng, *symbols, num_sentences, 6);
  corpus.push_back({});  // make sure an empty sentence shows up sometimes
  TopologyPtr topo = ExtractTopology(corpus, order, symbols);

  std::vector<double> arc_weights(topo->num_arcs(), 0.0);
  std::vector<double> final_weights(topo->num_states(), 0.0);
  for (int state = 0; state < topo->num_states(); ++state) {
    const auto arcs = topo->arcs(state);
    const int slots =
        static_cast<int>(arcs.size()) + (topo->final_explicit(state) ? 1 : 0);
    if (slots == 0) continue;
    std::vector<double> raw(slots);
    double total = 0.0;
    for (double& v : raw) {
      v = 0.05 + rng.Uniform();
      total += v;
    }
    // Root is fully explicit; other states keep mass back for the
    // backoff remainder.
    const double scale =
        (state == topo->root_state()) ? 1.0 : 0.3 + 0.6 * rng.Uniform();
    for (double& v : raw) v = v / total * scale;
    for (size_t i = 0; i < arcs.size(); ++i) {
      arc_weights[topo->arc_offset(state) + i] = raw[i];
    }
    if (topo->final_explicit(state)) final_weights[state] = raw.back();
  }
  auto backoff = ComputeBackoffWeights(*topo, arc_weights, final_weights);
  return std::make_shared<BackoffNGramModel>(topo, std::move(arc_weights),
                                             std::move(backoff),
                                             std::move(final_weights));
}

}  // namespace fedngram::testutil

#endif  // FEDNGRAM_TESTS_TESTUTIL_H_
