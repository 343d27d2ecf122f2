#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "nlca/poly.hpp"

namespace nlca {

/// Sparse row, sorted by column, no explicit zeros.
using SparseRow = std::vector<std::pair<size_t, Q>>;
using QVec = std::vector<Q>;

SparseRow make_row(const std::map<size_t, Q>& m);

/// Exact row echelon form built incrementally; every pivot row has leading coefficient 1.
class Echelon {
 public:
  explicit Echelon(size_t cols) : cols_(cols) {}
  // Returns true if the row was independent of those already added.
  bool add(SparseRow r);
  size_t rank() const { return rows_.size(); }
  size_t cols() const { return cols_; }
  void reduce_fully();
  const std::map<size_t, SparseRow>& rows() const { return rows_; }
  SparseRow reduce(SparseRow r) const;  // leading-term reduction of r

 private:
  size_t cols_;
  std::map<size_t, SparseRow> rows_;  // keyed by pivot column
};

size_t rank_of(const std::vector<SparseRow>& rows, size_t cols);
std::vector<QVec> kernel(const std::vector<SparseRow>& rows, size_t cols);

struct SolveResult {
  bool ok = false;
  QVec x;            // solution with free variables set to zero
  QVec certificate;  // when !ok: y with y.A = 0 and y.b = 1
};
SolveResult solve(const std::vector<SparseRow>& A, const QVec& b, size_t cols);

// Assigns dense indices to arbitrary keys in first-seen order.
template <class K>
class Indexer {
 public:
  size_t get(const K& k) {
    auto [it, fresh] = idx_.emplace(k, idx_.size());
    return it->second;
  }
  std::optional<size_t> find(const K& k) const {
    auto it = idx_.find(k);
    if (it == idx_.end()) return std::nullopt;
    return it->second;
  }
  size_t size() const { return idx_.size(); }

 private:
  std::map<K, size_t> idx_;
};

}  // namespace nlca
