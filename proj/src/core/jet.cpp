#include "core/jet.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace fbh {

namespace {

void enumerate(int n_vars, int order, std::vector<MultiIndex>& out) {
  // all exponent tuples with degree <= order, graded-lex:
  // by total degree, then lexicographic with earlier variables dominant.
  std::vector<MultiIndex> all;
  // recursive enumeration of tuples of fixed degree d
  std::vector<int> tmp(n_vars, 0);
  auto rec = [&](auto&& self, int var, int remaining) -> void {
    if (var == n_vars - 1) {
      tmp[var] = remaining;
      all.push_back(MultiIndex{tmp});
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      tmp[var] = e;
      self(self, var + 1, remaining - e);
    }
  };
  for (int d = 0; d <= order; ++d) rec(rec, 0, d);
  out = std::move(all);
}

}  // namespace

std::uint64_t JetSpace::key(const MultiIndex& m) {
  std::uint64_t k = 0;
  for (int e : m.exponents) k = (k << 4) | static_cast<std::uint64_t>(e & 0xf);
  return k;
}

JetSpace::JetSpace(int n_vars, int order) : n_vars_(n_vars), order_(order) {
  enumerate(n_vars, order, index_);
  degree_.resize(index_.size());
  for (std::size_t i = 0; i < index_.size(); ++i) {
    degree_[i] = index_[i].degree();
    lookup_.emplace(key(index_[i]), static_cast<int>(i));
  }
  // truncated-product pair table
  for (int a = 0; a < size(); ++a) {
    for (int b = 0; b < size(); ++b) {
      if (degree_[a] + degree_[b] > order_) continue;
      MultiIndex sum = index_[a];
      for (int v = 0; v < n_vars_; ++v) sum.exponents[v] += index_[b].exponents[v];
      pairs_.push_back(Pair{a, b, static_cast<std::int32_t>(lookup_.at(key(sum)))});
    }
  }
  // bump table: alpha -> alpha + e_var
  bump_.assign(static_cast<std::size_t>(size()) * n_vars_, -1);
  for (int i = 0; i < size(); ++i) {
    for (int v = 0; v < n_vars_; ++v) {
      if (degree_[i] + 1 > order_) continue;
      MultiIndex up = index_[i];
      up.exponents[v] += 1;
      bump_[static_cast<std::size_t>(i) * n_vars_ + v] = lookup_.at(key(up));
    }
  }
}

int JetSpace::position(const MultiIndex& alpha) const {
  if (static_cast<int>(alpha.exponents.size()) != n_vars_) return -1;
  auto it = lookup_.find(key(alpha));
  return it == lookup_.end() ? -1 : it->second;
}

std::shared_ptr<const JetSpace> JetSpace::get(int n_vars, int order) {
  if (n_vars < 1 || n_vars > kMaxVars)
    throw Error("jet n_vars out of supported range [1, " + std::to_string(kMaxVars) + "]");
  if (order < 0 || order > kMaxOrder)
    throw Error("jet order out of supported range [0, " + std::to_string(kMaxOrder) + "]");
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const JetSpace>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n_vars, order}];
  if (!slot) slot = std::shared_ptr<const JetSpace>(new JetSpace(n_vars, order));
  return slot;
}

Jet seed(std::span<const double> point, int var_index, int order) {
  auto space = JetSpace::get(static_cast<int>(point.size()), order);
  if (var_index < 0 || var_index >= space->n_vars())
    throw Error("seed: var_index " + std::to_string(var_index) + " out of range for " +
                std::to_string(space->n_vars()) + " variables");
  return Jet::seed_value(space, var_index, point[var_index]);
}

void check_assert(bool cond, const char* msg) {
  if (!cond) throw Error(msg);
}

}  // namespace fbh
