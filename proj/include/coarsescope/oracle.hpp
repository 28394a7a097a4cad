#pragma once

// Brute-force reimplementations over plain arrays. Nothing here calls into the
// main library, so agreement with it is evidence rather than tautology.

#include <cstddef>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace coarsescope::oracle {

using Matrix = std::vector<std::vector<double>>;
using Membership = std::vector<std::vector<char>>;  // [element][point]
using Weights = std::map<std::size_t, double>;      // vertex -> weight > 0

Matrix floyd_warshall(std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, double>>& edges);

struct Stats {
  double lebesgue = 0.0;
  std::size_t multiplicity = 0;
  double mesh = 0.0;
};

Stats cover_stats(const Matrix& d, const Membership& cover);

/// phi_s(x) = f_s(x) / sum_t f_t(x), uniform over the +inf indices if any.
std::vector<Weights> barycentric(const Matrix& d, const Membership& cover);

/// Maximal simplices of the nerve as sorted index lists, in lexicographic order.
std::vector<std::vector<std::size_t>> nerve(const Membership& cover);

double l1(const Weights& a, const Weights& b);

/// max over pairs of (||f(x)-f(y)|| - C) / d(x,y).
double lipschitz_hat(const Matrix& d, const std::vector<Weights>& f, double C);

/// Star-preimage Lebesgue number of a total map.
double map_lebesgue(const Matrix& d, const std::vector<Weights>& f);

/// The n+1 heaviest vertices keep their weight (ties by index), the heaviest
/// absorbs the rest; the result is renormalized if rounding moved its sum.
Weights fold(const Weights& p, int n);

}  // namespace coarsescope::oracle
