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

#include "fedngram/ngram/arpa.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "fedngram/common/error.h"
#include "fedngram/common/io.h"
#include "fedngram/common/text.h"

namespace fedngram {

namespace {

constexpr double kLog10PseudoZero = -99.0;

std::string FormatLog10(double weight) {
  const double log10w = weight <= 0.0 ? kLog10PseudoZero : std::log10(weight);
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.7f", log10w);
  return buffer;
}

struct PendingEntry {
  double prob = 0.0;       // linear domain
  bool has_backoff = false;
  double backoff = 1.0;    // linear domain
};

[[noreturn]] void ParseError(size_t line_no, const std::string& message) {
  throw DataError("ARPA line " + std::to_string(line_no + 1) + ": " + message);
}

double ParseLog10(const std::string& field, size_t line_no) {
  size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(field, &consumed);
  } catch (const std::exception&) {
    ParseError(line_no, "bad log probability '" + field + "'");
  }
  if (consumed != field.size() || !std::isfinite(value)) {
    ParseError(line_no, "non-finite log probability '" + field + "'");
  }
  return std::pow(10.0, value);
}

}  // namespace

std::string WriteArpa(const BackoffNGramModel& model) {
  const NGramTopology& topo = model.topology();
  const SymbolTable& symbols = *model.symbols();
  const auto section_counts = topo.EntryCountsPerOrder();

  std::ostringstream out;
  out << "\\data\\\n";
  for (int k = 1; k <= topo.order(); ++k) {
    out << "ngram " << k << "=" << section_counts[k - 1] << "\n";
  }
  for (int k = 1; k <= topo.order(); ++k) {
    out << "\n\\" << k << "-grams:\n";
    // Entries of this order sorted by token-id sequence: transitions,
    // explicit finals, and (at order 1) the <s> pseudo-entry.
    std::map<std::vector<int>, std::string> lines;
    for (int state = 0; state < topo.num_states(); ++state) {
      if (topo.context_length(state) != k - 1) continue;
      const auto ctx = topo.context(state);
      std::vector<int> tokens(ctx.begin(), ctx.end());
      tokens.push_back(-1);
      const auto arcs = topo.arcs(state);
      for (size_t i = 0; i < arcs.size(); ++i) {
        tokens.back() = arcs[i].label;
        std::string line = FormatLog10(model.arc_weight(topo.arc_offset(state) + i));
        line.push_back('\t');
        for (size_t t = 0; t < tokens.size(); ++t) {
          if (t > 0) line.push_back(' ');
          line += symbols.Token(tokens[t]);
        }
        const int as_state = topo.FindState(tokens);
        if (as_state >= 0) {
          line.push_back('\t');
          line += FormatLog10(model.backoff_weight(as_state));
        }
        lines.emplace(tokens, std::move(line));
      }
      if (topo.final_explicit(state)) {
        tokens.back() = SymbolTable::kEos;
        std::string line = FormatLog10(model.final_weight(state));
        line.push_back('\t');
        for (size_t t = 0; t < tokens.size(); ++t) {
          if (t > 0) line.push_back(' ');
          line += symbols.Token(tokens[t]);
        }
        lines.emplace(tokens, std::move(line));
      }
    }
    if (k == 1 && topo.order() >= 2) {
      const int bos_state = topo.FindState(std::vector<int>{SymbolTable::kBos});
      std::string line = FormatLog10(0.0);  // <s> is never predicted
      line.push_back('\t');
      line += SymbolTable::kBosToken;
      line.push_back('\t');
      line += FormatLog10(model.backoff_weight(bos_state));
      lines.emplace(std::vector<int>{SymbolTable::kBos}, std::move(line));
    }
    for (const auto& [tokens, line] : lines) out << line << "\n";
  }
  out << "\n\\end\\\n";
  return out.str();
}

void WriteArpaFile(const BackoffNGramModel& model, const std::string& path) {
  WriteFile(path, WriteArpa(model));
}

ModelPtr ReadArpa(const std::string& text, SymbolTablePtr symbols) {
  std::vector<std::string> lines = SplitFields(text, '\n');
  size_t i = 0;
  auto skip_blank = [&]() {
    while (i < lines.size() && SplitTokens(lines[i]).empty()) ++i;
  };

  skip_blank();
  if (i >= lines.size() || lines[i] != "\\data\\") {
    ParseError(i, "expected \\data\\ header");
  }
  ++i;
  std::vector<int64_t> declared;
  while (i < lines.size() && lines[i].rfind("ngram ", 0) == 0) {
    const std::string rest = lines[i].substr(6);
    const auto eq = rest.find('=');
    if (eq == std::string::npos) ParseError(i, "malformed ngram count line");
    int order = 0;
    int64_t count = 0;
    try {
      order = std::stoi(rest.substr(0, eq));
      count = std::stoll(rest.substr(eq + 1));
    } catch (const std::exception&) {
      ParseError(i, "malformed ngram count line");
    }
    if (order != static_cast<int>(declared.size()) + 1) {
      ParseError(i, "ngram counts out of order");
    }
    declared.push_back(count);
    ++i;
  }
  if (declared.empty()) ParseError(i, "no ngram counts declared");
  const int order = static_cast<int>(declared.size());

  std::shared_ptr<SymbolTable> local_table;
  if (symbols == nullptr) {
    local_table = std::make_shared<SymbolTable>();
  }
  auto token_id = [&](const std::string& token, size_t line_no) {
    if (local_table != nullptr) return local_table->AddSymbol(token);
    const int id = symbols->Find(token);
    if (id < 0) ParseError(line_no, "token not in symbol table: " + token);
    return id;
  };

  // First pass: parse sections into (tokens, prob, backoff) triples.
  struct RawEntry {
    std::vector<int> tokens;
    PendingEntry weights;
  };
  std::vector<RawEntry> entries;
  for (int k = 1; k <= order; ++k) {
    skip_blank();
    const std::string header = "\\" + std::to_string(k) + "-grams:";
    if (i >= lines.size() || lines[i] != header) {
      ParseError(i, "expected section header " + header);
    }
    const size_t header_line = i;
    ++i;
    int64_t seen = 0;
    while (i < lines.size() && !lines[i].empty() && lines[i][0] != '\\') {
      if (SplitTokens(lines[i]).empty()) break;
      const auto fields = SplitFields(lines[i], '\t');
      if (fields.size() < 2 || fields.size() > 3) {
        ParseError(i, "expected 2 or 3 tab-separated fields");
      }
      RawEntry entry;
      entry.weights.prob = ParseLog10(fields[0], i);
      const auto tokens = SplitTokens(fields[1]);
      if (static_cast<int>(tokens.size()) != k) {
        ParseError(i, "token count does not match section order");
      }
      for (const auto& token : tokens) {
        entry.tokens.push_back(token_id(token, i));
      }
      if (fields.size() == 3) {
        entry.weights.has_backoff = true;
        entry.weights.backoff = ParseLog10(fields[2], i);
      }
      entries.push_back(std::move(entry));
      ++seen;
      ++i;
    }
    if (seen != declared[k - 1]) {
      ParseError(header_line,
                 "section declares " + std::to_string(declared[k - 1]) +
                     " entries but lists " + std::to_string(seen));
    }
    skip_blank();
  }
  if (i >= lines.size() || lines[i] != "\\end\\") {
    ParseError(i, "expected \\end\\ footer");
  }

  SymbolTablePtr table =
      symbols != nullptr ? symbols : SymbolTablePtr(local_table);

  // Second pass: build the topology, then attach weights.
  TopologyBuilder builder(table, order);
  int64_t num_transitions = 0;
  for (const auto& entry : entries) {
    if (entry.tokens.size() == 1 && entry.tokens[0] == SymbolTable::kBos) {
      continue;  // pseudo-entry; the initial state always exists
    }
    builder.AddNGram(entry.tokens);
    if (entry.tokens.back() != SymbolTable::kEos) ++num_transitions;
  }
  TopologyPtr topo = std::move(builder).Build();
  if (topo->num_arcs() != num_transitions) {
    throw DataError(
        "ARPA model is not closed under contexts/suffixes: " +
        std::to_string(num_transitions) + " transitions listed, " +
        std::to_string(topo->num_arcs()) + " required");
  }

  std::vector<double> arc_weights(topo->num_arcs(), 0.0);
  std::vector<double> backoff(topo->num_states(), 1.0);
  std::vector<double> finals(topo->num_states(), 0.0);
  for (const auto& entry : entries) {
    const bool is_bos_pseudo =
        entry.tokens.size() == 1 && entry.tokens[0] == SymbolTable::kBos;
    if (entry.tokens.back() == SymbolTable::kEos) {
      const std::vector<int> ctx(entry.tokens.begin(), entry.tokens.end() - 1);
      finals[topo->FindState(ctx)] = entry.weights.prob;
    } else if (!is_bos_pseudo) {
      const std::vector<int> ctx(entry.tokens.begin(), entry.tokens.end() - 1);
      const int state = topo->FindState(ctx);
      arc_weights[topo->FindArc(state, entry.tokens.back())] =
          entry.weights.prob;
    }
    if (entry.weights.has_backoff) {
      const int as_state = topo->FindState(entry.tokens);
      if (as_state >= 0) backoff[as_state] = entry.weights.backoff;
    }
  }
  return std::make_shared<BackoffNGramModel>(
      std::move(topo), std::move(arc_weights), std::move(backoff),
      std::move(finals));
}

ModelPtr ReadArpaFile(const std::string& path, SymbolTablePtr symbols) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ReadArpa(buffer.str(), std::move(symbols));
}

}  // namespace fedngram
