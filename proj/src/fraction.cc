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

#include "auctionlab/fraction.h"

#include <charconv>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace auctionlab {
namespace {

bool ParseInt(absl::string_view s, int64_t& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

absl::StatusOr<Fraction> Reduced(int64_t num, int64_t den, absl::string_view text) {
  if (den <= 0 || num < 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("fraction '", text, "' must be non-negative with positive denominator"));
  }
  const int64_t g = std::gcd(num, den);
  return Fraction{num / g, den / g};
}

}  // namespace

std::string Fraction::ToString() const {
  return den == 1 ? absl::StrCat(num) : absl::StrCat(num, "/", den);
}

absl::StatusOr<int> Fraction::TimesInteger(int n) const {
  const int64_t scaled = num * static_cast<int64_t>(n);
  if (scaled % den != 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        ToString(), " x ", n, " is not an integer"));
  }
  return static_cast<int>(scaled / den);
}

absl::StatusOr<Fraction> ParseFraction(absl::string_view text) {
  const auto bad = [&] {
    return absl::InvalidArgumentError(absl::StrCat("bad fraction '", text, "'"));
  };
  int64_t num = 0, den = 1;
  if (auto slash = text.find('/'); slash != absl::string_view::npos) {
    if (!ParseInt(text.substr(0, slash), num) || !ParseInt(text.substr(slash + 1), den)) {
      return bad();
    }
    return Reduced(num, den, text);
  }
  if (auto dot = text.find('.'); dot != absl::string_view::npos) {
    absl::string_view whole = text.substr(0, dot);
    absl::string_view frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 15) return bad();
    int64_t w = 0, f = 0;
    if ((!whole.empty() && !ParseInt(whole, w)) || !ParseInt(frac, f) || f < 0) {
      return bad();
    }
    for (size_t i = 0; i < frac.size(); ++i) den *= 10;
    return Reduced(w * den + f, den, text);
  }
  if (!ParseInt(text, num)) return bad();
  return Reduced(num, 1, text);
}

}  // namespace auctionlab
