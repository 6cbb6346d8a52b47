// Copyright 2026 The lexalign Authors
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

#ifndef LEXALIGN_ERROR_HPP_
#define LEXALIGN_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace lexalign {

/// Every failure raised by the library carries one of these codes. The
/// spelling returned by `to_string` doubles as the reason code written into
/// gap cells of alignment tables.
enum class ErrorCode {
  // input / data
  kIo,
  kMalformedRow,
  kDuplicateLexicalization,
  kUnknownDomain,
  kBadHeader,
  kBadMagic,
  kGapOutsideSubdomain,
  // lookup
  kUnknownWord,
  kUnknownQuery,
  kUnknownLanguage,
  kUnknownConcept,
  kConceptNotLexicalized,
  kConceptNotEmbedded,
  // numeric
  kDimensionMismatch,
  kZeroNorm,
  kEmptyCloud,
  kEmptyCandidateSet,
  kLengthMismatch,
  kConstantInput,
  kTooFewSurvivors,
  kRangeViolation,
  kRankDeficient,
  kInsufficientSamples,
  kInsufficientOverlap,
  kInsufficientPairs,
  kNoCommonKeys,
  kNoComparableTraits,
  kInvalidCoordinate,
  kCloudTooSmall,
  kEmptySubdomain,
  kTooFewDomains,
  kEmptyTable,
  kInvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// True for codes that describe bad or missing input data rather than a
/// failed computation.
bool is_data_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lexalign

#endif  // LEXALIGN_ERROR_HPP_
