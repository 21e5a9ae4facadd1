// Copyright 2026 The graddp Authors
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

#ifndef GRADDP_HEXFLOAT_HPP_
#define GRADDP_HEXFLOAT_HPP_

#include <string>

namespace graddp {

// Hexadecimal float encoding ("%a" form, e.g. "0x1.8p+1"). Round trips are
// bit-exact, which the persistence formats rely on: atom detection compares
// stored noise values for exact equality.
std::string to_hex_float(double value);

// Parses either a hex float or a plain decimal. Throws std::invalid_argument
// on garbage or trailing characters.
double from_hex_float(const std::string& text);

}  // namespace graddp

#endif  // GRADDP_HEXFLOAT_HPP_
