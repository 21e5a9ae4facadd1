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

#ifndef GRADDP_ERRORS_HPP_
#define GRADDP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace graddp {

// Requesting a level strictly between two already-sampled levels of a chain.
// There is no supported conditional law given both neighbors, so such
// queries are rejected instead of approximated.
class BridgeUnsupportedError : public std::runtime_error {
 public:
  BridgeUnsupportedError(double requested, double lower, double upper)
      : std::runtime_error("level " + std::to_string(requested) +
                           " lies strictly between sampled levels " +
                           std::to_string(lower) + " and " +
                           std::to_string(upper) +
                           "; interior extension is unsupported"),
        requested_(requested),
        lower_(lower),
        upper_(upper) {}

  double requested() const { return requested_; }
  double lower() const { return lower_; }
  double upper() const { return upper_; }

 private:
  double requested_;
  double lower_;
  double upper_;
};

// Malformed or unversioned persistence records.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace graddp

#endif  // GRADDP_ERRORS_HPP_
