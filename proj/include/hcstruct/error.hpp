// Copyright 2026 The hcstruct Authors.
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hcs {

/// Error categories raised by the library. Negative verdicts (a graph that is
/// not perfect, an inconsistent constraint set) are results, not errors.
enum class Errc {
  duplicate_edge,
  invalid_weight,
  self_loop,
  invalid_triplet,
  invalid_vertex,
  parse_error,
  leaf_mismatch,
  not_zero_base,
  invalid_delta,
  too_large,
  invalid_param,
  io,
};

constexpr std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::duplicate_edge: return "DuplicateEdge";
    case Errc::invalid_weight: return "InvalidWeight";
    case Errc::self_loop: return "SelfLoop";
    case Errc::invalid_triplet: return "InvalidTriplet";
    case Errc::invalid_vertex: return "InvalidVertex";
    case Errc::parse_error: return "ParseError";
    case Errc::leaf_mismatch: return "LeafMismatch";
    case Errc::not_zero_base: return "NotZeroBase";
    case Errc::invalid_delta: return "InvalidDelta";
    case Errc::too_large: return "TooLarge";
    case Errc::invalid_param: return "InvalidParam";
    case Errc::io: return "Io";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace hcs
