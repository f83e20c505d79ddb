// Copyright 2026 The unitok Authors.
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

#ifndef UNITOK_DIGAMMA_HPP_
#define UNITOK_DIGAMMA_HPP_

namespace unitok {

// ψ(x) for x > 0, via upward recurrence to x >= 6 and the asymptotic series.
// Absolute error below 1e-10 on (0, ∞).
double digamma(double x);

}  // namespace unitok

#endif  // UNITOK_DIGAMMA_HPP_
