// Copyright 2026 The cohthermo Authors
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

#include "cohthermo/error.hpp"

namespace cohthermo {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::PositivityViolation: return "PositivityViolation";
    case ErrorKind::RegimeViolation: return "RegimeViolation";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NotProductInitial: return "NotProductInitial";
    case ErrorKind::NotUnitaryEvolution: return "NotUnitaryEvolution";
    case ErrorKind::NotThermalInitial: return "NotThermalInitial";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NotResonant: return "NotResonant";
    case ErrorKind::NotAnEngine: return "NotAnEngine";
  }
  return "Unknown";
}

}  // namespace cohthermo
