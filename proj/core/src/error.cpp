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

#include "lexalign/error.hpp"

namespace lexalign {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kIo: return "io_error";
    case ErrorCode::kMalformedRow: return "malformed_row";
    case ErrorCode::kDuplicateLexicalization: return "duplicate_lexicalization";
    case ErrorCode::kUnknownDomain: return "unknown_domain";
    case ErrorCode::kBadHeader: return "bad_header";
    case ErrorCode::kBadMagic: return "bad_magic";
    case ErrorCode::kGapOutsideSubdomain: return "gap_outside_subdomain";
    case ErrorCode::kUnknownWord: return "unknown_word";
    case ErrorCode::kUnknownQuery: return "unknown_query";
    case ErrorCode::kUnknownLanguage: return "unknown_language";
    case ErrorCode::kUnknownConcept: return "unknown_concept";
    case ErrorCode::kConceptNotLexicalized: return "concept_not_lexicalized";
    case ErrorCode::kConceptNotEmbedded: return "concept_not_embedded";
    case ErrorCode::kDimensionMismatch: return "dimension_mismatch";
    case ErrorCode::kZeroNorm: return "zero_norm";
    case ErrorCode::kEmptyCloud: return "empty_cloud";
    case ErrorCode::kEmptyCandidateSet: return "empty_candidate_set";
    case ErrorCode::kLengthMismatch: return "length_mismatch";
    case ErrorCode::kConstantInput: return "constant_input";
    case ErrorCode::kTooFewSurvivors: return "too_few_survivors";
    case ErrorCode::kRangeViolation: return "range_violation";
    case ErrorCode::kRankDeficient: return "rank_deficient";
    case ErrorCode::kInsufficientSamples: return "insufficient_samples";
    case ErrorCode::kInsufficientOverlap: return "insufficient_overlap";
    case ErrorCode::kInsufficientPairs: return "insufficient_pairs";
    case ErrorCode::kNoCommonKeys: return "no_common_keys";
    case ErrorCode::kNoComparableTraits: return "no_comparable_traits";
    case ErrorCode::kInvalidCoordinate: return "invalid_coordinate";
    case ErrorCode::kCloudTooSmall: return "cloud_too_small";
    case ErrorCode::kEmptySubdomain: return "empty_subdomain";
    case ErrorCode::kTooFewDomains: return "too_few_domains";
    case ErrorCode::kEmptyTable: return "empty_table";
    case ErrorCode::kInvalidArgument: return "invalid_argument";
  }
  return "unknown";
}

bool is_data_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kIo:
    case ErrorCode::kMalformedRow:
    case ErrorCode::kDuplicateLexicalization:
    case ErrorCode::kUnknownDomain:
    case ErrorCode::kBadHeader:
    case ErrorCode::kBadMagic:
    case ErrorCode::kGapOutsideSubdomain:
    case ErrorCode::kUnknownLanguage:
    case ErrorCode::kUnknownConcept:
    case ErrorCode::kUnknownWord:
    case ErrorCode::kInvalidCoordinate:
      return true;
    default:
      return false;
  }
}

}  // namespace lexalign
