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

#include "unitok/digamma.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <cmath>
#include <random>

#include "gtest/gtest.h"

namespace unitok {
namespace {

TEST(DigammaTest, KnownValues) {
  constexpr double kEulerGamma = 0.57721566490153286;
  EXPECT_NEAR(digamma(1.0), -kEulerGamma, 1e-12);
  EXPECT_NEAR(digamma(0.5), -kEulerGamma - 2.0 * std::log(2.0), 1e-12);
  EXPECT_NEAR(digamma(2.0), 1.0 - kEulerGamma, 1e-12);
}

TEST(DigammaTest, Recurrence) {
  for (double x = 0.05; x < 40.0; x *= 1.37) {
    EXPECT_NEAR(digamma(x + 1.0), digamma(x) + 1.0 / x, 1e-10 * std::max(1.0, 1.0 / x));
  }
}

TEST(DigammaTest, MatchesBoostOnRandomPositiveArguments) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> log_x(std::log(1e-3), std::log(1e7));
  for (int i = 0; i < 20000; ++i) {
    const double x = std::exp(log_x(rng));
    const double expected = boost::math::digamma(x);
    ASSERT_NEAR(digamma(x), expected, 1e-10 * std::max(1.0, std::abs(expected))) << x;
  }
}

TEST(DigammaTest, MonotoneIncreasing) {
  double last = digamma(0.01);
  for (double x = 0.02; x < 1000.0; x *= 1.1) {
    const double y = digamma(x);
    ASSERT_GT(y, last);
    last = y;
  }
}

}  // namespace
}  // namespace unitok
