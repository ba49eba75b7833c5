// Copyright 2026 The AuctionLab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AUCTIONLAB_FRACTION_H_
#define AUCTIONLAB_FRACTION_H_

#include <cstdint>
#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace auctionlab {

// A non-negative rational in lowest terms, e.g. a quota fraction "2/3".
struct Fraction {
  int64_t num = 0;
  int64_t den = 1;

  double ToDouble() const { return static_cast<double>(num) / den; }
  std::string ToString() const;
  // num * n / den, which must be an integer.
  absl::StatusOr<int> TimesInteger(int n) const;

  friend bool operator==(const Fraction&, const Fraction&) = default;
};

// Accepts "p/q", an integer, or a finite decimal such as "0.25".
absl::StatusOr<Fraction> ParseFraction(absl::string_view text);

}  // namespace auctionlab

#endif  // AUCTIONLAB_FRACTION_H_
