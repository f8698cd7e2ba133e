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

#include "fedngram/ngram/extract.h"

#include <map>

#include "fedngram/common/error.h"

namespace fedngram {

namespace {

int64_t ThresholdForOrder(const std::vector<int64_t>& min_count, int order) {
  if (min_count.empty()) return 1;
  const size_t i = std::min<size_t>(order - 1, min_count.size() - 1);
  return std::max<int64_t>(1, min_count[i]);
}

}  // namespace

TopologyPtr ExtractTopology(const IdCorpus& corpus, int order,
                            SymbolTablePtr vocab,
                            const std::vector<int64_t>& min_count) {
  Require(order >= 1, "order must be >= 1");
  std::map<std::vector<int>, int64_t> counts;
  std::vector<int> padded;
  for (const auto& sentence : corpus) {
    padded.clear();
    padded.push_back(SymbolTable::kBos);
    for (int token : sentence) {
      padded.push_back(SymbolTable::IsRegular(token) ? token
                                                     : SymbolTable::kUnk);
    }
    padded.push_back(SymbolTable::kEos);
    // All n-grams ending at a real token or the end event; the bare <s>
    // unigram never counts as an entry.
    for (size_t end = 1; end < padded.size(); ++end) {
      for (int k = 1; k <= order; ++k) {
        if (static_cast<size_t>(k) > end + 1) break;
        const std::vector<int> gram(padded.begin() + (end + 1 - k),
                                    padded.begin() + (end + 1));
        ++counts[gram];
      }
    }
  }
  TopologyBuilder builder(std::move(vocab), order);
  for (const auto& [gram, count] : counts) {
    if (count >= ThresholdForOrder(min_count, static_cast<int>(gram.size()))) {
      builder.AddNGram(gram);
    }
  }
  return std::move(builder).Build();
}

ExpectedCounts CountCorpus(const NGramTopology& topology,
                           const IdCorpus& corpus) {
  ExpectedCounts counts(topology);
  for (const auto& sentence : corpus) {
    int state = topology.initial_state();
    for (int raw : sentence) {
      int token = raw;
      if (token < 0 || token >= topology.symbols()->size() ||
          topology.FindArc(topology.root_state(), token) < 0) {
        token = SymbolTable::kUnk;
      }
      int q = state;
      int64_t arc_id;
      while ((arc_id = topology.FindArc(q, token)) < 0) {
        counts.AddBackoff(q, 1.0);
        q = topology.backoff(q);
        Require(q >= 0, "token unreadable; topology lacks <unk> unigram");
      }
      counts.AddArc(arc_id, 1.0);
      state = topology.Advance(state, token);
    }
    int q = state;
    while (!topology.final_explicit(q)) {
      counts.AddBackoff(q, 1.0);
      q = topology.backoff(q);
    }
    counts.AddEnd(q, 1.0);
  }
  return counts;
}

IdCorpus MapCorpus(const std::vector<std::vector<std::string>>& sentences,
                   const SymbolTable& vocab) {
  IdCorpus corpus;
  corpus.reserve(sentences.size());
  for (const auto& sentence : sentences) {
    corpus.push_back(vocab.MapSentence(sentence));
  }
  return corpus;
}

}  // namespace fedngram
