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

#include "fedngram/common/io.h"

#include <fstream>
#include <sstream>

#include "fedngram/common/error.h"
#include "fedngram/common/text.h"

namespace fedngram {

std::vector<std::string> ReadLines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) {
      line.pop_back();
    }
    lines.push_back(line);
  }
  return lines;
}

void WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path);
  out << contents;
  if (!out) throw DataError("write failed: " + path);
}

std::vector<std::vector<std::string>> ReadCorpus(const std::string& path) {
  std::vector<std::vector<std::string>> corpus;
  for (const std::string& line : ReadLines(path)) {
    corpus.push_back(SplitTokens(line));
  }
  return corpus;
}

void WriteCorpus(const std::string& path,
                 const std::vector<std::vector<std::string>>& sentences) {
  std::ostringstream out;
  for (const auto& sentence : sentences) {
    for (size_t i = 0; i < sentence.size(); ++i) {
      if (i > 0) out << ' ';
      out << sentence[i];
    }
    out << '\n';
  }
  WriteFile(path, out.str());
}

}  // namespace fedngram
