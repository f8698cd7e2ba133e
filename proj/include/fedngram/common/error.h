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

#ifndef FEDNGRAM_COMMON_ERROR_H_
#define FEDNGRAM_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace fedngram {

// Error taxonomy mirrors the CLI exit codes: usage errors exit 1, data
// errors 2, numeric failures 3.  Contract violations indicate caller bugs
// (bad state ids, mismatched vocabularies) and also exit 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

class ContractViolation : public Error {
 public:
  using Error::Error;
};

inline void Require(bool condition, const std::string& message) {
  if (!condition) throw ContractViolation(message);
}

inline void RequireData(bool condition, const std::string& message) {
  if (!condition) throw DataError(message);
}

}  // namespace fedngram

#endif  // FEDNGRAM_COMMON_ERROR_H_
