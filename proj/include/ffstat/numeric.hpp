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

#include <gmpxx.h>

#include <complex>
#include <vector>

namespace ffstat {

using cld = std::complex<long double>;

/// Reciprocal roots rho_j of an integer polynomial sum_j c_j u^j = c_0 prod (1 - rho_j u),
/// c_0 != 0, listed once per distinct root. Repeated factors are removed
/// exactly (gcd with the derivative over Q) before the companion-matrix
/// eigenvalues are polished by Newton steps in long double.
std::vector<cld> reciprocal_roots(const std::vector<mpz_class>& coeffs);

/// All reciprocal roots, each repeated by its multiplicity (Yun's
/// square-free decomposition over Q, then the same root finder).
std::vector<cld> reciprocal_roots_with_multiplicity(const std::vector<mpz_class>& coeffs);

/// max_j | |rho_j| - sqrt(q) | / sqrt(q); 0 for an empty list.
double rh_deviation(const std::vector<cld>& roots, unsigned long q);

}  // namespace ffstat
