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

#pragma once

#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace cohthermo::io {

/// Round-trip-safe decimal: 17 significant digits, "nan"/"inf"/"-inf" for
/// non-finite values.
std::string format_double(double x);

/// Comma-separated, header first, LF line endings.
class CsvWriter {
 public:
  CsvWriter(std::ostream& os, std::vector<std::string> header);

  void row(std::span<const double> values);
  void row(std::initializer_list<double> values) { row(std::span<const double>(values.begin(), values.size())); }

  std::size_t columns() const noexcept { return columns_; }

 private:
  std::ostream& os_;
  std::size_t columns_;
};

}  // namespace cohthermo::io
