#include "coarsescope/simplicial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "coarsescope/covers.hpp"

namespace coarsescope {

SimplexPoint SimplexPoint::vertex(VertexIndex v) {
  SimplexPoint p;
  p.entries_.emplace_back(v, 1.0);
  return p;
}

SimplexPoint SimplexPoint::from_weights(std::vector<Entry> weights) {
  const double tau = tolerance();
  std::sort(weights.begin(), weights.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
  double sum = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const double w = weights[k].second;
    if (!std::isfinite(w) || w < 0.0) {
      throw Error(ErrorCode::NotNormalized, "weights must be finite and nonnegative");
    }
    if (k > 0 && weights[k].first == weights[k - 1].first) {
      throw Error(ErrorCode::NotNormalized, "vertex " + std::to_string(weights[k].first) + " listed twice");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > tau) {
    throw Error(ErrorCode::NotNormalized, "weights sum to " + std::to_string(sum));
  }
  SimplexPoint p;
  for (const auto& [v, w] : weights) {
    if (w > 0.0) p.entries_.emplace_back(v, sum == 1.0 ? w : w / sum);
  }
  if (p.entries_.empty()) {
    throw Error(ErrorCode::NotNormalized, "empty support");
  }
  return p;
}

double SimplexPoint::weight(VertexIndex v) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), v,
                             [](const Entry& e, VertexIndex key) { return e.first < key; });
  return (it != entries_.end() && it->first == v) ? it->second : 0.0;
}

double scaled_l1_distance(double a, const SimplexPoint& p, double b, const SimplexPoint& q) {
  const auto& pe = p.entries();
  const auto& qe = q.entries();
  std::size_t i = 0;
  std::size_t j = 0;
  double sum = 0.0;
  while (i < pe.size() || j < qe.size()) {
    if (j == qe.size() || (i < pe.size() && pe[i].first < qe[j].first)) {
      sum += std::abs(a * pe[i++].second);
    } else if (i == pe.size() || qe[j].first < pe[i].first) {
      sum += std::abs(b * qe[j++].second);
    } else {
      sum += std::abs(a * pe[i++].second - b * qe[j++].second);
    }
  }
  return sum;
}

double l1_distance(const SimplexPoint& p, const SimplexPoint& q) { return scaled_l1_distance(1.0, p, 1.0, q); }

bool in_star(const SimplexPoint& p, VertexIndex v) { return p.weight(v) > 0.0; }

std::vector<VertexIndex> carrier(const SimplexPoint& p) {
  std::vector<VertexIndex> support;
  support.reserve(p.support_size());
  for (const auto& [v, w] : p.entries()) support.push_back(v);
  return support;
}

bool in_skeleton(const SimplexPoint& p, int n) {
  if (n < 0) {
    throw Error(ErrorCode::InvalidArgument, "skeleton dimension must be nonnegative");
  }
  return p.support_size() <= static_cast<std::size_t>(n) + 1;
}

bool carrier_within(const SimplexPoint& p, const SimplexPoint& q) {
  const auto& qe = q.entries();
  std::size_t j = 0;
  for (const auto& [v, w] : p.entries()) {
    while (j < qe.size() && qe[j].first < v) ++j;
    if (j == qe.size() || qe[j].first != v) return false;
  }
  return true;
}

Complex::Complex(std::vector<std::string> labels, std::vector<std::vector<VertexIndex>> simplices,
                 std::vector<std::string> ambient)
    : labels_(std::move(labels)), ambient_(std::move(ambient)) {
  for (std::size_t v = 1; v < labels_.size(); ++v) {
    if (!(labels_[v - 1] < labels_[v])) {
      throw Error(ErrorCode::InvalidArgument, "complex vertex labels must be strictly ascending");
    }
  }
  const std::size_t nv = labels_.size();
  std::vector<char> seen(nv, 0);
  for (auto& s : simplices) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (VertexIndex v : s) {
      if (v >= nv) throw Error(ErrorCode::UnknownIndex, "simplex vertex out of range");
      seen[v] = 1;
    }
  }
  for (VertexIndex v = 0; v < nv; ++v) {
    if (!seen[v]) simplices.push_back({v});
  }
  std::erase_if(simplices, [](const auto& s) { return s.empty(); });
  // Larger simplices first, so every candidate only needs checking against kept ones.
  std::sort(simplices.begin(), simplices.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() > b.size() : a < b;
  });
  simplices.erase(std::unique(simplices.begin(), simplices.end()), simplices.end());
  by_vertex_.assign(nv, {});
  for (auto& s : simplices) {
    if (contains(s)) continue;
    for (VertexIndex v : s) by_vertex_[v].push_back(maximal_.size());
    maximal_.push_back(std::move(s));
  }
  std::vector<std::size_t> order(maximal_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return maximal_[a] < maximal_[b]; });
  std::vector<std::vector<VertexIndex>> sorted;
  for (std::size_t k : order) sorted.push_back(std::move(maximal_[k]));
  maximal_ = std::move(sorted);
  by_vertex_.assign(nv, {});
  for (std::size_t k = 0; k < maximal_.size(); ++k) {
    for (VertexIndex v : maximal_[k]) by_vertex_[v].push_back(k);
  }
}

Complex Complex::from_labels(std::vector<std::string> labels, const std::vector<std::vector<std::string>>& simplices) {
  std::sort(labels.begin(), labels.end());
  if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) {
    throw Error(ErrorCode::DuplicateId, "complex vertex labels must be unique");
  }
  Complex lookup(labels, {});
  std::vector<std::vector<VertexIndex>> indexed;
  for (const auto& s : simplices) {
    std::vector<VertexIndex> face;
    for (const auto& l : s) face.push_back(lookup.index_of(l));
    indexed.push_back(std::move(face));
  }
  return Complex(std::move(labels), std::move(indexed));
}

Complex Complex::full(std::vector<std::string> labels) {
  std::vector<VertexIndex> all(labels.size());
  std::iota(all.begin(), all.end(), VertexIndex{0});
  return Complex(std::move(labels), {all});
}

std::optional<VertexIndex> Complex::find(const std::string& label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) return std::nullopt;
  return static_cast<VertexIndex>(it - labels_.begin());
}

VertexIndex Complex::index_of(const std::string& label) const {
  if (auto v = find(label)) return *v;
  throw Error(ErrorCode::UnknownIndex, "complex has no vertex '" + label + "'");
}

bool Complex::contains(const std::vector<VertexIndex>& simplex) const {
  if (simplex.empty()) return true;
  if (simplex.front() >= by_vertex_.size()) return false;
  for (std::size_t k : by_vertex_[simplex.front()]) {
    const auto& m = maximal_[k];
    if (std::includes(m.begin(), m.end(), simplex.begin(), simplex.end())) return true;
  }
  return false;
}

int Complex::dimension() const {
  int dim = -1;
  for (const auto& m : maximal_) dim = std::max(dim, static_cast<int>(m.size()) - 1);
  return dim;
}

Complex nerve(const Cover& cover) {
  // Every simplex of the nerve is contained in T(x) = {s : x in U_s} for some x.
  const std::size_t n = cover.space().size();
  std::vector<std::vector<VertexIndex>> at_point(n);
  for (std::size_t s = 0; s < cover.size(); ++s) {
    for (PointIndex x : cover.element(s)) at_point[x].push_back(s);
  }
  std::set<std::vector<VertexIndex>> distinct(at_point.begin(), at_point.end());
  return Complex(cover.labels(), {distinct.begin(), distinct.end()});
}

}  // namespace coarsescope
