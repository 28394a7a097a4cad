#include "coarsescope/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace coarsescope::oracle {

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();
}

Matrix floyd_warshall(std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, double>>& edges) {
  Matrix d(n, std::vector<double>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
  for (const auto& [a, b, w] : edges) {
    d[a][b] = std::min(d[a][b], w);
    d[b][a] = std::min(d[b][a], w);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

static double f_value(const Matrix& d, const std::vector<char>& U, std::size_t x) {
  if (!U[x]) return 0.0;
  double best = inf;
  for (std::size_t y = 0; y < d.size(); ++y)
    if (!U[y]) best = std::min(best, d[x][y]);
  return best;
}

Stats cover_stats(const Matrix& d, const Membership& cover) {
  Stats s;
  s.lebesgue = inf;
  for (std::size_t x = 0; x < d.size(); ++x) {
    double local = 0.0;
    std::size_t mult = 0;
    for (const auto& U : cover) {
      local = std::max(local, f_value(d, U, x));
      mult += U[x] ? 1 : 0;
    }
    s.lebesgue = std::min(s.lebesgue, local);
    s.multiplicity = std::max(s.multiplicity, mult);
  }
  for (const auto& U : cover)
    for (std::size_t x = 0; x < d.size(); ++x)
      for (std::size_t y = 0; y < d.size(); ++y)
        if (U[x] && U[y]) s.mesh = std::max(s.mesh, d[x][y]);
  return s;
}

std::vector<Weights> barycentric(const Matrix& d, const Membership& cover) {
  std::vector<Weights> out(d.size());
  for (std::size_t x = 0; x < d.size(); ++x) {
    std::vector<double> f(cover.size());
    std::size_t infinite = 0;
    double total = 0.0;
    for (std::size_t s = 0; s < cover.size(); ++s) {
      f[s] = f_value(d, cover[s], x);
      if (std::isinf(f[s])) ++infinite;
    }
    for (std::size_t s = 0; s < cover.size(); ++s) total += f[s];
    for (std::size_t s = 0; s < cover.size(); ++s) {
      if (infinite > 0) {
        if (std::isinf(f[s])) out[x][s] = 1.0 / static_cast<double>(infinite);
      } else if (f[s] > 0.0) {
        out[x][s] = f[s] / total;
      }
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> nerve(const Membership& cover) {
  std::set<std::vector<std::size_t>> sets;
  const std::size_t n = cover.empty() ? 0 : cover.front().size();
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<std::size_t> t;
    for (std::size_t s = 0; s < cover.size(); ++s)
      if (cover[s][x]) t.push_back(s);
    sets.insert(t);
  }
  std::vector<std::vector<std::size_t>> maximal;
  for (const auto& a : sets) {
    bool dominated = false;
    for (const auto& b : sets)
      if (a != b && std::includes(b.begin(), b.end(), a.begin(), a.end())) dominated = true;
    if (!dominated) maximal.push_back(a);
  }
  return maximal;
}

double l1(const Weights& a, const Weights& b) {
  std::set<std::size_t> keys;
  for (const auto& [v, w] : a) keys.insert(v);
  for (const auto& [v, w] : b) keys.insert(v);
  double sum = 0.0;
  for (auto v : keys) {
    const double p = a.count(v) ? a.at(v) : 0.0;
    const double q = b.count(v) ? b.at(v) : 0.0;
    sum += std::abs(p - q);
  }
  return sum;
}

double lipschitz_hat(const Matrix& d, const std::vector<Weights>& f, double C) {
  double best = 0.0;
  for (std::size_t x = 0; x < d.size(); ++x)
    for (std::size_t y = x + 1; y < d.size(); ++y)
      best = std::max(best, (l1(f[x], f[y]) - C) / d[x][y]);
  return best;
}

double map_lebesgue(const Matrix& d, const std::vector<Weights>& f) {
  std::set<std::size_t> vertices;
  for (const auto& p : f)
    for (const auto& [v, w] : p) vertices.insert(v);
  Membership cover;
  for (auto v : vertices) {
    std::vector<char> U(d.size(), 0);
    for (std::size_t x = 0; x < d.size(); ++x) U[x] = f[x].count(v) ? 1 : 0;
    cover.push_back(std::move(U));
  }
  return cover_stats(d, cover).lebesgue;
}

Weights fold(const Weights& p, int n) {
  const std::size_t keep = static_cast<std::size_t>(n) + 1;
  if (p.size() <= keep) return p;
  std::vector<std::pair<std::size_t, double>> order(p.begin(), p.end());
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  double tail = 0.0;
  for (std::size_t k = keep; k < order.size(); ++k) tail += order[k].second;
  Weights out;
  for (std::size_t k = 0; k < keep; ++k) out[order[k].first] = order[k].second;
  out[order[0].first] = order[0].second + tail;
  double sum = 0.0;
  for (const auto& [v, w] : out) sum += w;
  if (sum != 1.0)
    for (auto& [v, w] : out) w /= sum;
  return out;
}

}  // namespace coarsescope::oracle
