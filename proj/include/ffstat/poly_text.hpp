/*
   Copyright 2026 The ffstat Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ffstat/poly.hpp"

namespace ffstat {

class PolyParseError : public std::invalid_argument {
public:
    PolyParseError(const std::string& what, std::size_t position)
        : std::invalid_argument(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Parses either ascending comma-separated coefficients ("1,0,1") or the
/// symbolic form ("X^2+1", "2X^3+X+2", "2*X^2-X"). Coefficients are
/// decimal element indices in [0, q).
Poly parse_poly(std::string_view text, const FieldPtr& field);

/// Symbolic form, descending degree, no spaces: "X^2+2X+2". Unit
/// coefficients are omitted on nonconstant terms; zero prints as "0".
std::string to_string(const Poly& f);

/// Ascending comma-separated coefficient indices: "2,2,1".
std::string to_coeff_string(const Poly& f);

}  // namespace ffstat
