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

#include "fedngram/ngram/counts.h"

#include <cmath>

#include "fedngram/common/error.h"

namespace fedngram {

double ExpectedCounts::TotalMass() const {
  double total = 0.0;
  for (double v : arc_) total += v;
  for (double v : end_) total += v;
  return total;
}

void ExpectedCounts::AddFrom(const ExpectedCounts& other) {
  Require(arc_.size() == other.arc_.size() && end_.size() == other.end_.size(),
          "count shapes differ");
  for (size_t i = 0; i < arc_.size(); ++i) arc_[i] += other.arc_[i];
  for (size_t i = 0; i < end_.size(); ++i) end_[i] += other.end_[i];
  for (size_t i = 0; i < backoff_.size(); ++i) backoff_[i] += other.backoff_[i];
}

void ExpectedCounts::Scale(double factor) {
  for (double& v : arc_) v *= factor;
  for (double& v : end_) v *= factor;
  for (double& v : backoff_) v *= factor;
}

bool ExpectedCounts::Valid() const {
  auto ok = [](const std::vector<double>& values) {
    for (double v : values) {
      if (!(v >= 0.0) || !std::isfinite(v)) return false;
    }
    return true;
  };
  return ok(arc_) && ok(end_) && ok(backoff_);
}

}  // namespace fedngram
