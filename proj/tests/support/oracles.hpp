// Copyright 2026 The Rigourate Authors
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

// Brute-force reference implementations used by the unit and acceptance
// tests. Written from the textbook definitions and kept deliberately naive.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace oracle {

// ---- ranking metrics ------------------------------------------------------

inline bool is_rel(const std::set<std::string>& rel, const std::string& id) { return rel.count(id) > 0; }

inline double precision_at(const std::vector<std::string>& ranking, const std::set<std::string>& rel,
                           std::size_t n) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i) hits += is_rel(rel, ranking[i]);
  return double(hits) / double(n);
}

inline double ap(const std::vector<std::string>& ranking, const std::set<std::string>& rel) {
  if (rel.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t r = 1; r <= ranking.size(); ++r) {
    if (is_rel(rel, ranking[r - 1])) sum += precision_at(ranking, rel, r);
  }
  return sum / double(rel.size());
}

inline double rr(const std::vector<std::string>& ranking, const std::set<std::string>& rel) {
  std::optional<std::size_t> first;
  for (std::size_t r = ranking.size(); r >= 1; --r) {
    if (is_rel(rel, ranking[r - 1])) first = r;
  }
  return first ? 1.0 / double(*first) : 0.0;
}

inline double recall(const std::vector<std::string>& ranking, const std::set<std::string>& rel, int k) {
  if (rel.empty()) return 0.0;
  std::size_t found = 0;
  for (const auto& id : rel) {
    auto it = std::find(ranking.begin(), ranking.end(), id);
    if (it != ranking.end() && (it - ranking.begin()) < k) ++found;
  }
  return double(found) / double(rel.size());
}

inline double ndcg(const std::vector<std::string>& ranking, const std::set<std::string>& rel, int k) {
  if (rel.empty()) return 0.0;
  auto gain_at = [&](const std::vector<int>& gains) {
    double dcg = 0.0;
    for (int r = 1; r <= k && r <= int(gains.size()); ++r) dcg += gains[r - 1] / std::log2(r + 1.0);
    return dcg;
  };
  std::vector<int> gains;
  for (const auto& id : ranking) gains.push_back(is_rel(rel, id) ? 1 : 0);
  // Ideal ordering: every relevant item first, whether or not it was retrieved.
  std::vector<int> ideal(rel.size(), 1);
  return gain_at(gains) / gain_at(ideal);
}

// ---- regression -----------------------------------------------------------

struct Moments {
  long double mx = 0, my = 0, vx = 0, vy = 0, cxy = 0;
};

inline Moments moments(const std::vector<double>& x, const std::vector<double>& y) {
  Moments m;
  const long double n = x.size();
  for (std::size_t i = 0; i < x.size(); ++i) {
    m.mx += x[i];
    m.my += y[i];
  }
  m.mx /= n;
  m.my /= n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    m.vx += (x[i] - m.mx) * (x[i] - m.mx);
    m.vy += (y[i] - m.my) * (y[i] - m.my);
    m.cxy += (x[i] - m.mx) * (y[i] - m.my);
  }
  m.vx /= n;
  m.vy /= n;
  m.cxy /= n;
  return m;
}

inline double ccc(const std::vector<double>& x, const std::vector<double>& y) {
  const Moments m = moments(x, y);
  return double(2 * m.cxy / (m.vx + m.vy + (m.mx - m.my) * (m.mx - m.my)));
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const Moments m = moments(x, y);
  return double(m.cxy / std::sqrt(m.vx * m.vy));
}

inline double mae(const std::vector<double>& x, const std::vector<double>& y) {
  long double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::fabs((long double)x[i] - y[i]);
  return double(s / x.size());
}

// ---- Krippendorff's alpha -------------------------------------------------

// values[unit][coder]; nullopt = missing. Pairwise formulation: observed
// disagreement over ordered pairs inside units, expected over ordered pairs
// of all pairable values.
inline double alpha(const std::vector<std::vector<std::optional<double>>>& values, bool ordinal) {
  std::vector<std::vector<double>> units;
  for (const auto& row : values) {
    std::vector<double> u;
    for (const auto& v : row) {
      if (v) u.push_back(*v);
    }
    if (u.size() >= 2) units.push_back(u);
  }
  std::vector<double> all;
  for (const auto& u : units) all.insert(all.end(), u.begin(), u.end());
  std::map<double, double> count;
  for (double v : all) count[v] += 1;
  auto delta = [&](double a, double b) -> long double {
    if (!ordinal) return a == b ? 0 : 1;
    if (a > b) std::swap(a, b);
    long double s = 0;
    for (const auto& [g, n] : count) {
      if (g >= a && g <= b) s += n;
    }
    s -= (count[a] + count[b]) / 2.0L;
    return s * s;
  };
  const long double n = all.size();
  long double d_o = 0;
  for (const auto& u : units) {
    long double within = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      for (std::size_t j = 0; j < u.size(); ++j) {
        if (i != j) within += delta(u[i], u[j]);
      }
    }
    d_o += within / (u.size() - 1);
  }
  d_o /= n;
  long double d_e = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = 0; j < all.size(); ++j) {
      if (i != j) d_e += delta(all[i], all[j]);
    }
  }
  d_e /= n * (n - 1);
  return double(1 - d_o / d_e);
}

// ---- Welch t-test ---------------------------------------------------------

struct Welch {
  long double t, dof, p;
};

// Student t density integrated with composite Simpson's rule on [0, |t|].
inline long double t_cdf_two_sided(long double t, long double dof, int intervals = 200000) {
  const long double a = std::fabs(t);
  const long double c = std::exp(std::lgamma((dof + 1) / 2) - std::lgamma(dof / 2)) /
                        std::sqrt(dof * 3.14159265358979323846264338327950288L);
  auto f = [&](long double x) { return c * std::pow(1 + x * x / dof, -(dof + 1) / 2); };
  const long double h = a / intervals;
  long double s = f(0) + f(a);
  for (int i = 1; i < intervals; ++i) s += f(i * h) * (i % 2 ? 4 : 2);
  return 1 - 2 * (s * h / 3);
}

inline Welch welch(const std::vector<double>& x, const std::vector<double>& y) {
  auto mv = [](const std::vector<double>& v) {
    long double m = 0;
    for (double e : v) m += e;
    m /= v.size();
    long double s = 0;
    for (double e : v) s += (e - m) * (e - m);
    return std::pair<long double, long double>(m, s / (v.size() - 1));
  };
  auto [m1, v1] = mv(x);
  auto [m2, v2] = mv(y);
  const long double a = v1 / x.size(), b = v2 / y.size();
  Welch w;
  w.t = (m1 - m2) / std::sqrt(a + b);
  w.dof = (a + b) * (a + b) / (a * a / (x.size() - 1) + b * b / (y.size() - 1));
  w.p = t_cdf_two_sided(w.t, w.dof);
  return w;
}

// ---- runs -----------------------------------------------------------------

// Maximal runs of consecutive integers among `marked`, found by scanning
// every candidate start.
inline std::vector<std::vector<unsigned>> maximal_runs(const std::set<unsigned>& marked) {
  std::vector<std::vector<unsigned>> out;
  for (unsigned s : marked) {
    if (s > 0 && marked.count(s - 1)) continue;
    std::vector<unsigned> run;
    for (unsigned x = s; marked.count(x); ++x) run.push_back(x);
    out.push_back(run);
  }
  return out;
}

// Label with the strictly highest count, or `tie` when the top is shared.
inline std::string plurality(const std::vector<std::string>& labels, const std::string& tie) {
  std::map<std::string, int> c;
  for (const auto& l : labels) c[l]++;
  int best = -1;
  std::vector<std::string> top;
  for (const auto& [l, n] : c) {
    if (n > best) {
      best = n;
      top = {l};
    } else if (n == best) {
      top.push_back(l);
    }
  }
  return top.size() == 1 ? top[0] : tie;
}

}  // namespace oracle
