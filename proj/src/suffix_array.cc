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

#include "unitok/suffix_array.hpp"

#include <algorithm>

namespace unitok {

std::vector<std::uint32_t> build_suffix_array(std::span<const std::int32_t> text,
                                              std::int32_t alphabet_size) {
  // Cyclic-shift sorting over text + a unique smallest terminator, which
  // makes cyclic order coincide with suffix order.
  const std::size_t n = text.size() + 1;
  std::vector<std::uint32_t> p(n), c(n), pn(n), cn(n);
  const std::size_t classes0 = static_cast<std::size_t>(alphabet_size) + 1;
  std::vector<std::uint32_t> cnt(std::max(classes0, n), 0);
  auto symbol = [&](std::size_t i) -> std::uint32_t {
    return i + 1 == n ? 0u : static_cast<std::uint32_t>(text[i]) + 1u;
  };
  for (std::size_t i = 0; i < n; ++i) ++cnt[symbol(i)];
  for (std::size_t s = 1; s < classes0; ++s) cnt[s] += cnt[s - 1];
  for (std::size_t i = n; i-- > 0;) p[--cnt[symbol(i)]] = static_cast<std::uint32_t>(i);
  c[p[0]] = 0;
  std::uint32_t classes = 1;
  for (std::size_t i = 1; i < n; ++i) {
    if (symbol(p[i]) != symbol(p[i - 1])) ++classes;
    c[p[i]] = classes - 1;
  }
  for (std::size_t h = 1; h < n && classes < n; h <<= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      pn[i] = static_cast<std::uint32_t>((p[i] + n - h) % n);
    }
    std::fill(cnt.begin(), cnt.begin() + classes, 0);
    for (std::size_t i = 0; i < n; ++i) ++cnt[c[pn[i]]];
    for (std::size_t k = 1; k < classes; ++k) cnt[k] += cnt[k - 1];
    for (std::size_t i = n; i-- > 0;) p[--cnt[c[pn[i]]]] = pn[i];
    cn[p[0]] = 0;
    classes = 1;
    for (std::size_t i = 1; i < n; ++i) {
      const auto a = std::pair(c[p[i]], c[(p[i] + h) % n]);
      const auto b = std::pair(c[p[i - 1]], c[(p[i - 1] + h) % n]);
      if (a != b) ++classes;
      cn[p[i]] = classes - 1;
    }
    c.swap(cn);
  }
  // Drop the terminator, which always sorts first.
  return std::vector<std::uint32_t>(p.begin() + 1, p.end());
}

std::vector<std::uint32_t> build_lcp_array(std::span<const std::int32_t> text,
                                           std::span<const std::uint32_t> sa,
                                           std::int32_t stop_symbol) {
  const std::size_t n = sa.size();
  std::vector<std::uint32_t> rank(text.size(), 0), lcp(n, 0);
  for (std::size_t r = 0; r < n; ++r) rank[sa[r]] = static_cast<std::uint32_t>(r);
  std::size_t h = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const std::size_t r = rank[i];
    if (r == 0) {
      h = 0;
      continue;
    }
    const std::size_t j = sa[r - 1];
    while (i + h < text.size() && j + h < text.size() && text[i + h] == text[j + h] &&
           text[i + h] != stop_symbol) {
      ++h;
    }
    lcp[r] = static_cast<std::uint32_t>(h);
    if (h > 0) --h;
  }
  return lcp;
}

}  // namespace unitok
