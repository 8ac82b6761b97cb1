// Copyright 2026 The posterq Authors.
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

// Independent reference implementations used only by tests. They follow the
// textbook definitions directly (O(n^2) where that is the obvious reading)
// and share no code with the library.

#ifndef POSTERQ_TESTS_ORACLE_H_
#define POSTERQ_TESTS_ORACLE_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace oracle {

inline long double mean(const std::vector<double>& x) {
  long double s = 0;
  for (double v : x) s += v;
  return s / static_cast<long double>(x.size());
}

// Covariance over standard deviations, two-pass, extended precision.
inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const long double mx = mean(x), my = mean(y);
  long double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

// rank_i = 1 + #(values < x_i) + (#(values == x_i) - 1) / 2.
inline std::vector<double> ranks(const std::vector<double>& x) {
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double less = 0, equal = 0;
    for (double v : x) {
      if (v < x[i]) ++less;
      if (v == x[i]) ++equal;
    }
    r[i] = 1.0 + less + (equal - 1.0) / 2.0;
  }
  return r;
}

inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  return pearson(ranks(x), ranks(y));
}

inline double acc_at_k(const std::vector<double>& p, const std::vector<double>& g,
                       double k) {
  std::size_t hit = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (std::fabs(p[i] - g[i]) <= k + 1e-9) ++hit;
  }
  return 100.0 * static_cast<double>(hit) / static_cast<double>(p.size());
}

using Unit = std::vector<std::optional<double>>;

// Krippendorff's alpha, interval metric, straight from the pairwise
// definition: D_o averages within-unit ordered pairs weighted by
// 1/(m_u - 1); D_e averages all ordered pairs of pairable values.
inline std::optional<double> alpha_interval(const std::vector<Unit>& units) {
  std::vector<double> pooled;
  long double d_o = 0;
  for (const Unit& u : units) {
    std::vector<double> vals;
    for (const auto& v : u) {
      if (v) vals.push_back(*v);
    }
    if (vals.size() < 2) continue;
    long double s = 0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      for (std::size_t j = 0; j < vals.size(); ++j) {
        if (i != j) s += (vals[i] - vals[j]) * (vals[i] - vals[j]);
      }
    }
    d_o += s / static_cast<long double>(vals.size() - 1);
    pooled.insert(pooled.end(), vals.begin(), vals.end());
  }
  if (pooled.empty()) return std::nullopt;
  const auto n = static_cast<long double>(pooled.size());
  d_o /= n;
  long double d_e = 0;
  for (std::size_t i = 0; i < pooled.size(); ++i) {
    for (std::size_t j = 0; j < pooled.size(); ++j) {
      if (i != j) d_e += (pooled[i] - pooled[j]) * (pooled[i] - pooled[j]);
    }
  }
  d_e /= n * (n - 1);
  if (d_e == 0) return 1.0;
  return static_cast<double>(1.0L - d_o / d_e);
}

// Percentage of unordered within-unit pairs differing by at most margin.
inline std::optional<double> loose_accuracy(const std::vector<Unit>& units,
                                            double margin) {
  std::size_t pairs = 0, hits = 0;
  for (const Unit& u : units) {
    for (std::size_t i = 0; i < u.size(); ++i) {
      for (std::size_t j = i + 1; j < u.size(); ++j) {
        if (!u[i] || !u[j]) continue;
        ++pairs;
        if (std::fabs(*u[i] - *u[j]) <= margin + 1e-9) ++hits;
      }
    }
  }
  if (pairs == 0) return std::nullopt;
  return 100.0 * static_cast<double>(hits) / static_cast<double>(pairs);
}

// Full (|a|+1) x (|b|+1) dynamic-programming matrix.
template <typename S>
std::size_t levenshtein(const S& a, const S& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1,
                                          std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
  }
  return d[a.size()][b.size()];
}

// Character-count cosine.
inline double char_cosine(const std::u32string& a, const std::u32string& b) {
  if (a.empty() && b.empty()) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  std::map<char32_t, long double> ca, cb;
  for (char32_t c : a) ca[c] += 1;
  for (char32_t c : b) cb[c] += 1;
  long double dot = 0, na = 0, nb = 0;
  for (const auto& [c, n] : ca) {
    na += n * n;
    if (const auto it = cb.find(c); it != cb.end()) dot += n * it->second;
  }
  for (const auto& [c, n] : cb) nb += n * n;
  return static_cast<double>(dot / std::sqrt(na * nb));
}

struct Item {
  std::string id;
  int source = 0;
  double error = 0.0;
};

// floor(K * N_s / T) in plain integer arithmetic (small inputs only).
inline std::vector<std::uint64_t> floor_quotas(const std::vector<std::uint64_t>& pops,
                                               std::uint64_t k) {
  std::uint64_t total = 0;
  for (auto p : pops) total += p;
  std::vector<std::uint64_t> q;
  for (auto p : pops) q.push_back(k * p / total);
  return q;
}

// An item is selected iff fewer than quota items of its source are strictly
// harder (larger error, or equal error and smaller id). Output ordered by
// source, then by that hardness rank.
inline std::vector<std::string> stratified_selection(
    const std::vector<Item>& items, const std::vector<std::uint64_t>& quotas) {
  std::vector<std::pair<std::pair<int, std::size_t>, std::string>> chosen;
  for (const Item& a : items) {
    std::size_t harder = 0;
    for (const Item& b : items) {
      if (b.source != a.source) continue;
      if (b.error > a.error || (b.error == a.error && b.id < a.id)) ++harder;
    }
    if (harder < quotas[static_cast<std::size_t>(a.source)]) {
      chosen.push_back({{a.source, harder}, a.id});
    }
  }
  std::sort(chosen.begin(), chosen.end());
  std::vector<std::string> out;
  for (const auto& c : chosen) out.push_back(c.second);
  return out;
}

}  // namespace oracle

#endif  // POSTERQ_TESTS_ORACLE_H_
