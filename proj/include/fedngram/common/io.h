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

#ifndef FEDNGRAM_COMMON_IO_H_
#define FEDNGRAM_COMMON_IO_H_

#include <string>
#include <vector>

namespace fedngram {

// Reads all lines of a UTF-8 text file; strips trailing "\r"/"\n".
// Throws DataError if the file cannot be opened.
std::vector<std::string> ReadLines(const std::string& path);

void WriteFile(const std::string& path, const std::string& contents);

// Corpus files: one sentence per line, tokens separated by spaces.
std::vector<std::vector<std::string>> ReadCorpus(const std::string& path);
void WriteCorpus(const std::string& path,
                 const std::vector<std::vector<std::string>>& sentences);

}  // namespace fedngram

#endif  // FEDNGRAM_COMMON_IO_H_
