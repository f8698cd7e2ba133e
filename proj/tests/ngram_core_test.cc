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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "fedngram/common/error.h"
#include "fedngram/ngram/arpa.h"
#include "fedngram/ngram/extract.h"
#include "fedngram/ngram/interpolate.h"
#include "fedngram/ngram/model.h"
#include "fedngram/ngram/prune.h"
#include "testutil.h"

using namespace fedngram;
using testutil::BuildModel;
using testutil::EntrySpec;
using testutil::Vocab;

namespace {

// Independent n-gram set oracle for topology extraction.
std::set<std::vector<int>> NaiveNGramSet(const IdCorpus& corpus, int order,
                                         int64_t threshold) {
  std::map<std::vector<int>, int64_t> counts;
  for (auto sentence : corpus) {
    sentence.insert(sentence.begin(), SymbolTable::kBos);
    sentence.push_back(SymbolTable::kEos);
    for (size_t i = 1; i < sentence.size(); ++i) {
      for (int k = 1; k <= order && static_cast<size_t>(k) <= i + 1; ++k) {
        ++counts[std::vector<int>(sentence.begin() + i + 1 - k,
                                  sentence.begin() + i + 1)];
      }
    }
  }
  std::set<std::vector<int>> kept;
  for (const auto& [gram, count] : counts) {
    if (count >= threshold) kept.insert(gram);
  }
  return kept;
}

std::set<std::vector<int>> TopologyNGramSet(const NGramTopology& topo) {
  std::set<std::vector<int>> out;
  for (int state = 0; state < topo.num_states(); ++state) {
    const auto ctx = topo.context(state);
    std::vector<int> tokens(ctx.begin(), ctx.end());
    tokens.push_back(-1);
    for (const Arc& arc : topo.arcs(state)) {
      tokens.back() = arc.label;
      out.insert(tokens);
    }
    if (topo.final_explicit(state) && !ctx.empty()) {
      tokens.back() = SymbolTable::kEos;
      out.insert(tokens);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("resolve on a unigram-only model") {
  auto symbols = Vocab({"a", "b"});
  auto m = BuildModel(symbols, 1, {{"a", 0.6}, {"b", 0.4}});
  const int a = symbols->Find("a");
  const Resolution r = m->Resolve(m->topology().root_state(), a);
  CHECK(r.prob == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(r.dest == m->topology().root_state());
}

TEST_CASE("resolve follows backoff with the product of traversed weights") {
  auto symbols = Vocab({"a", "b"});
  auto m = BuildModel(symbols, 2, {{"a", 0.6}, {"b", 0.4}, {"a a", 0.7}});
  const int a = symbols->Find("a");
  const int b = symbols->Find("b");
  const int state_a = m->topology().FindState(std::vector<int>{a});
  REQUIRE(state_a >= 0);
  // Backoff weight of state "a" is forced to (1-0.7)/(1-0.6) = 0.75.
  CHECK(m->backoff_weight(state_a) == doctest::Approx(0.75).epsilon(1e-12));
  const Resolution r = m->Resolve(state_a, b);
  CHECK(r.prob == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(r.state == m->topology().root_state());
  // Conditioned at "a", total mass over {a, b} is exactly one.
  const double total = m->Resolve(state_a, a).prob + r.prob;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("resolve maps unreadable labels to <unk> and validates state ids") {
  auto symbols = Vocab({"a", "x"});
  auto m = BuildModel(symbols, 1, {{"a", 0.5}, {"<unk>", 0.5}});
  const Resolution r = m->Resolve(0, symbols->Find("x"));
  CHECK(r.prob == doctest::Approx(0.5));
  CHECK_THROWS_AS(m->Resolve(999, symbols->Find("a")), ContractViolation);
}

TEST_CASE("seq_logprob trivials") {
  auto symbols = Vocab({"a", "b"});
  SUBCASE("two tokens at 0.1 each with end prob 1") {
    // Order-1 model where a,b split 0.2 and end takes 0.8 cannot give end
    // prob one; construct the degenerate distribution directly instead.
    auto m = BuildModel(symbols, 2,
                        {{"a", 0.1}, {"b", 0.1}, {"</s>", 0.8}});
    std::vector<int> sentence = {symbols->Find("a"), symbols->Find("b")};
    // p = 0.1 * 0.1 * p(end | b); end backs off through "b" with weight 1
    // since state b has no explicit entries.
    const double expected = std::log(0.1 * 0.1 * 0.8);
    CHECK(m->SequenceLogProb(sentence) == doctest::Approx(expected));
  }
  SUBCASE("empty sentence returns log of immediate end probability") {
    auto m = BuildModel(symbols, 2,
                        {{"a", 0.5}, {"</s>", 0.5}, {"<s> </s>", 0.5}});
    CHECK(m->SequenceLogProb({}) == doctest::Approx(std::log(0.5)));
  }
}

TEST_CASE("seq_logprob matches a naive per-position suffix walk") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto m = testutil::RandomModel(rng, 4, 3);
    const auto& topo = m->topology();
    const auto& symbols = *m->symbols();
    std::vector<int> sentence;
    for (int i = 0; i < 3; ++i) {
      sentence.push_back(3 + static_cast<int>(rng.UniformInt(4)));
    }
    // Naive oracle: evaluate each conditional from the raw context by
    // longest-suffix lookup, multiplying the skipped backoff weights.
    std::vector<int> history = {SymbolTable::kBos};
    double expected = 0.0;
    auto prob_by_hand = [&](const std::vector<int>& ctx, int label) {
      double weight = 1.0;
      int state = topo.LongestSuffixState(ctx);
      while (true) {
        const int64_t arc = topo.FindArc(state, label);
        if (arc >= 0) return weight * m->arc_weight(arc);
        if (state == topo.root_state()) return 0.0;
        weight *= m->backoff_weight(state);
        state = topo.backoff(state);
      }
    };
    bool all_readable = true;
    for (int token : sentence) {
      const double p = prob_by_hand(history, token);
      if (p == 0.0) all_readable = false;
      expected += std::log(p);
      history.push_back(token);
    }
    double weight = 1.0;
    int state = topo.LongestSuffixState(history);
    while (!topo.final_explicit(state)) {
      weight *= m->backoff_weight(state);
      state = topo.backoff(state);
    }
    expected += std::log(weight * m->final_weight(state));
    if (all_readable && std::isfinite(expected)) {
      CHECK(m->SequenceLogProb(sentence) ==
            doctest::Approx(expected).epsilon(1e-12));
    }
    (void)symbols;
  }
}

TEST_CASE("extract_topology trivial corpora") {
  auto symbols = Vocab({"a", "b"});
  const int a = symbols->Find("a");
  const int b = symbols->Find("b");
  SUBCASE("single bigram corpus") {
    auto topo = ExtractTopology({{a, b}}, 2, symbols);
    CHECK(topo->FindState(std::vector<int>{a}) >= 0);
    CHECK(topo->FindState(std::vector<int>{b}) >= 0);
    const int state_a = topo->FindState(std::vector<int>{a});
    CHECK(topo->FindArc(state_a, b) >= 0);
  }
  SUBCASE("threshold 2 removes singleton bigrams but keeps closure") {
    auto topo = ExtractTopology({{a, b}, {a}, {b}}, 2, symbols, {1, 2});
    const int state_a = topo->FindState(std::vector<int>{a});
    REQUIRE(state_a >= 0);
    CHECK(topo->FindArc(state_a, b) < 0);
    CHECK(topo->FindArc(topo->root_state(), a) >= 0);
    CHECK(topo->FindArc(topo->root_state(), b) >= 0);
  }
  SUBCASE("empty corpus gives the root-only topology") {
    auto topo = ExtractTopology({}, 2, symbols);
    CHECK(topo->num_arcs() == 0);
    CHECK(topo->num_states() == 2);  // root and the <s> context
  }
}

TEST_CASE("extract_topology matches the naive counting oracle") {
  Rng rng(11);
  auto symbols = Vocab({"u", "v", "w", "x"});
  IdCorpus corpus = testutil::RandomCorpus(rng, *symbols, 100, 8);
  for (int64_t threshold : {1, 2}) {
    auto topo = ExtractTopology(corpus, 3, symbols,
                                {threshold, threshold, threshold});
    // With a uniform threshold the counted set is automatically closed, so
    // the extracted entry set must match the oracle exactly.
    CHECK(TopologyNGramSet(*topo) == NaiveNGramSet(corpus, 3, threshold));
  }
}

TEST_CASE("interpolation trivials and hand mixture") {
  auto symbols = Vocab({"a", "b"});
  auto m1 = BuildModel(symbols, 2,
                       {{"a", 0.5}, {"b", 0.3}, {"</s>", 0.2}, {"a b", 0.6}});
  auto m2 = BuildModel(symbols, 2,
                       {{"a", 0.2}, {"b", 0.5}, {"</s>", 0.3}, {"b b", 0.4}});

  SUBCASE("self interpolation is an identity on conditionals") {
    auto mid = Interpolate(*m1, *m1, 0.5);
    for (int state = 0; state < mid->topology().num_states(); ++state) {
      const auto ctx = mid->topology().context(state);
      for (const std::string t : {"a", "b"}) {
        const int label = symbols->Find(t);
        CHECK(mid->ProbAtContext(ctx, label) ==
              doctest::Approx(m1->ProbAtContext(ctx, label)).epsilon(1e-12));
      }
      CHECK(mid->EndProbAtContext(ctx) ==
            doctest::Approx(m1->EndProbAtContext(ctx)).epsilon(1e-12));
    }
  }
  SUBCASE("mix 1.0 reproduces the first model's evaluated probabilities") {
    auto mid = Interpolate(*m1, *m2, 1.0);
    for (int state = 0; state < mid->topology().num_states(); ++state) {
      const auto ctx = mid->topology().context(state);
      for (const std::string t : {"a", "b"}) {
        const int label = symbols->Find(t);
        CHECK(mid->ProbAtContext(ctx, label) ==
              doctest::Approx(m1->ProbAtContext(ctx, label)).epsilon(1e-9));
      }
    }
  }
  SUBCASE("each explicit probability is the hand mixture") {
    const double mix = 0.25;
    auto mid = Interpolate(*m1, *m2, mix);
    const auto& topo = mid->topology();
    for (int state = 0; state < topo.num_states(); ++state) {
      const auto ctx = topo.context(state);
      const auto arcs = topo.arcs(state);
      for (size_t i = 0; i < arcs.size(); ++i) {
        const double expected = mix * m1->ProbAtContext(ctx, arcs[i].label) +
                                (1 - mix) * m2->ProbAtContext(ctx, arcs[i].label);
        CHECK(mid->arc_weight(topo.arc_offset(state) + i) ==
              doctest::Approx(expected).epsilon(1e-12));
      }
    }
    CHECK(mid->MaxNormalizationError() < 1e-9);
  }
  SUBCASE("mismatched vocabularies are rejected") {
    auto other = BuildModel(Vocab({"a", "c"}), 1, {{"a", 1.0}});
    CHECK_THROWS_AS(Interpolate(*m1, *other, 0.5), DataError);
  }
}

TEST_CASE("pruning trivials") {
  auto symbols = Vocab({"a", "b"});
  auto m = BuildModel(symbols, 2,
                      {{"a", 0.4}, {"b", 0.3}, {"</s>", 0.3},
                       {"a b", 0.5}, {"b a", 0.2}, {"a </s>", 0.1}});
  const int64_t total = m->topology().TotalEntries();
  const int64_t unigrams = m->topology().EntryCountsPerOrder()[0];

  SUBCASE("already within budget returns an unchanged model") {
    auto pruned = Prune(*m, total, unigrams);
    CHECK(pruned->topology().TotalEntries() == total);
    CHECK(WriteArpa(*pruned) == WriteArpa(*m));
  }
  SUBCASE("budget equal to the unigram count strips higher orders") {
    auto pruned = Prune(*m, unigrams, unigrams);
    CHECK(pruned->topology().EntryCountsPerOrder()[1] == 0);
    // Unigram probabilities are untouched and still sum, with the end
    // weight, to one.
    CHECK(pruned->MaxNormalizationError() < 1e-9);
    CHECK(pruned->ProbAtContext({}, symbols->Find("a")) ==
          doctest::Approx(0.4));
  }
  SUBCASE("budgets that cannot hold the unigrams are rejected") {
    CHECK_THROWS_AS(Prune(*m, unigrams - 1, unigrams), DataError);
    CHECK_THROWS_AS(Prune(*m, total, unigrams - 1), DataError);
  }
}

TEST_CASE("pruning keeps the top-scored entries of a bigram model") {
  // In an order-2 model no bigram is a context, so removal is unblocked and
  // the retained set must match a pure score ranking.
  Rng rng(23);
  auto m = testutil::RandomModel(rng, 8, 2, 120);
  const auto& topo = m->topology();
  const auto per_order = topo.EntryCountsPerOrder();
  const int64_t budget = per_order[0] + per_order[1] / 2;
  auto pruned = Prune(*m, budget, per_order[0]);
  CHECK(pruned->topology().TotalEntries() == budget);
  CHECK(pruned->MaxNormalizationError() < 1e-9);

  // Oracle: score everything, sort with the documented tie-break, keep the
  // top entries.
  struct Scored {
    double score;
    int order;
    std::string ctx;
    std::string label;
    std::vector<int> tokens;
  };
  std::vector<Scored> scored;
  for (int state = 0; state < topo.num_states(); ++state) {
    if (topo.context_length(state) == 0) continue;
    const auto ctx = topo.context(state);
    for (const Arc& arc : topo.arcs(state)) {
      Scored s;
      s.score = EntryRemovalScore(*m, state, arc.label, false);
      s.order = 2;
      s.ctx = topo.ContextString(state);
      s.label = m->symbols()->Token(arc.label);
      s.tokens.assign(ctx.begin(), ctx.end());
      s.tokens.push_back(arc.label);
      scored.push_back(std::move(s));
    }
    if (topo.final_explicit(state)) {
      Scored s;
      s.score = EntryRemovalScore(*m, state, -1, true);
      s.order = 2;
      s.ctx = topo.ContextString(state);
      s.label = SymbolTable::kEosToken;
      s.tokens.assign(ctx.begin(), ctx.end());
      s.tokens.push_back(SymbolTable::kEos);
      scored.push_back(std::move(s));
    }
  }
  std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
    if (a.score != b.score) return a.score > b.score;  // keep best first
    if (a.order != b.order) return a.order > b.order;
    if (a.ctx != b.ctx) return a.ctx > b.ctx;
    return a.label > b.label;
  });
  const size_t keep = budget - per_order[0];
  std::set<std::vector<int>> expected;
  for (size_t i = 0; i < keep; ++i) expected.insert(scored[i].tokens);

  std::set<std::vector<int>> actual;
  const auto& ptopo = pruned->topology();
  for (int state = 0; state < ptopo.num_states(); ++state) {
    if (ptopo.context_length(state) == 0) continue;
    const auto ctx = ptopo.context(state);
    std::vector<int> tokens(ctx.begin(), ctx.end());
    tokens.push_back(-1);
    for (const Arc& arc : ptopo.arcs(state)) {
      tokens.back() = arc.label;
      actual.insert(tokens);
    }
    if (ptopo.final_explicit(state)) {
      tokens.back() = SymbolTable::kEos;
      actual.insert(tokens);
    }
  }
  CHECK(actual == expected);
}

TEST_CASE("arpa round trip is identical at serialized precision") {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    auto m = testutil::RandomModel(rng, 5, 3);
    const std::string text = WriteArpa(*m);
    auto back = ReadArpa(text);
    // Second serialization must be byte-identical.
    CHECK(WriteArpa(*back) == text);
    // And the weights agree to the 7 serialized decimals (log10 domain).
    CHECK(back->topology().num_arcs() == m->topology().num_arcs());
    for (int64_t arc = 0; arc < m->topology().num_arcs(); ++arc) {
      CHECK(std::log10(back->arc_weight(arc)) ==
            doctest::Approx(std::log10(m->arc_weight(arc))).epsilon(1e-6));
    }
  }
}

TEST_CASE("arpa errors") {
  SUBCASE("count mismatch names the offending section") {
    const std::string text =
        "\\data\\\n"
        "ngram 1=3\n"
        "\n"
        "\\1-grams:\n"
        "-0.301030\ta\n"
        "-0.301030\tb\n"
        "\n"
        "\\end\\\n";
    CHECK_THROWS_WITH_AS(ReadArpa(text),
                         doctest::Contains("declares 3 entries"), DataError);
  }
  SUBCASE("malformed header") {
    CHECK_THROWS_AS(ReadArpa("\\1-grams:\n"), DataError);
  }
  SUBCASE("non-finite log probability") {
    const std::string text =
        "\\data\\\n"
        "ngram 1=1\n"
        "\n"
        "\\1-grams:\n"
        "nan\ta\n"
        "\n"
        "\\end\\\n";
    CHECK_THROWS_WITH_AS(ReadArpa(text), doctest::Contains("line 5"),
                         DataError);
  }
}

TEST_CASE("hand-written two-unigram arpa reads as one-half each") {
  const std::string text =
      "\\data\\\n"
      "ngram 1=3\n"
      "\n"
      "\\1-grams:\n"
      "-0.30103\ta\n"
      "-0.30103\tb\n"
      "-99\t</s>\n"
      "\n"
      "\\end\\\n";
  auto m = ReadArpa(text);
  const int a = m->symbols()->Find("a");
  const int b = m->symbols()->Find("b");
  CHECK(m->Resolve(m->topology().root_state(), a).prob ==
        doctest::Approx(0.5).epsilon(1e-4));
  CHECK(m->Resolve(m->topology().root_state(), b).prob ==
        doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("randomized models satisfy the core structural invariants") {
  Rng rng(47);
  for (int trial = 0; trial < 40; ++trial) {
    const int vocab = 2 + static_cast<int>(rng.UniformInt(8));
    const int order = 1 + static_cast<int>(rng.UniformInt(3));
    auto m = testutil::RandomModel(rng, vocab, order);
    const auto& topo = m->topology();

    // Normalization by full enumeration.
    CHECK(m->MaxNormalizationError() < 1e-6);

    for (int state = 0; state < topo.num_states(); ++state) {
      // Determinism: arcs sorted strictly by label.
      const auto arcs = topo.arcs(state);
      for (size_t i = 1; i < arcs.size(); ++i) {
        CHECK(arcs[i - 1].label < arcs[i].label);
      }
      // Backoff acyclicity: chains shrink and end at the root.
      int q = state;
      int hops = 0;
      while (topo.backoff(q) >= 0) {
        CHECK(topo.context_length(topo.backoff(q)) <
              topo.context_length(q));
        q = topo.backoff(q);
        ++hops;
        REQUIRE(hops <= order);
      }
      CHECK(q == topo.root_state());
      // Suffix closure: destinations are the longest registered suffix,
      // verified by brute-force search over all suffixes.
      const auto ctx = topo.context(state);
      for (const Arc& arc : topo.arcs(state)) {
        std::vector<int> extended(ctx.begin(), ctx.end());
        extended.push_back(arc.label);
        int best = topo.root_state();
        int best_len = 0;
        for (int len = 1;
             len <= std::min<int>(extended.size(), topo.order() - 1); ++len) {
          const int s = topo.FindState(std::span<const int>(
              extended.data() + extended.size() - len, len));
          if (s >= 0 && len > best_len) {
            best = s;
            best_len = len;
          }
        }
        CHECK(arc.dest == best);
      }
    }
  }
}
