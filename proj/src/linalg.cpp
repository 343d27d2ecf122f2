#include "nlca/linalg.hpp"

namespace nlca {

SparseRow make_row(const std::map<size_t, Q>& m) {
  SparseRow r;
  for (auto& [c, v] : m)
    if (v != 0) r.emplace_back(c, v);
  return r;
}

// r := r - c * p
static void axpy(SparseRow& r, const Q& c, const SparseRow& p) {
  SparseRow out;
  out.reserve(r.size() + p.size());
  size_t i = 0, j = 0;
  while (i < r.size() || j < p.size()) {
    if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
      out.push_back(std::move(r[i++]));
    } else if (i == r.size() || p[j].first < r[i].first) {
      out.emplace_back(p[j].first, -c * p[j].second);
      ++j;
    } else {
      Q v = r[i].second - c * p[j].second;
      if (v != 0) out.emplace_back(r[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  r.swap(out);
}

SparseRow Echelon::reduce(SparseRow r) const {
  size_t k = 0;
  while (k < r.size()) {
    auto it = rows_.find(r[k].first);
    if (it == rows_.end()) {
      ++k;
      continue;
    }
    Q c = r[k].second;
    axpy(r, c, it->second);
  }
  return r;
}

bool Echelon::add(SparseRow r) {
  // Reduce only the leading entry until it is a new pivot.
  while (!r.empty()) {
    auto it = rows_.find(r.front().first);
    if (it == rows_.end()) break;
    Q c = r.front().second;
    axpy(r, c, it->second);
  }
  if (r.empty()) return false;
  Q lead = r.front().second;
  if (lead != 1)
    for (auto& [c, v] : r) v /= lead;
  rows_.emplace(r.front().first, std::move(r));
  return true;
}

void Echelon::reduce_fully() {
  // Back-substitute from the last pivot upward.
  for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
    size_t piv = it->first;
    for (auto jt = rows_.begin(); jt != rows_.end() && jt->first < piv; ++jt) {
      SparseRow& r = jt->second;
      for (auto& [c, v] : r) {
        if (c == piv) {
          Q f = v;
          axpy(r, f, it->second);
          break;
        }
        if (c > piv) break;
      }
    }
  }
}

size_t rank_of(const std::vector<SparseRow>& rows, size_t cols) {
  Echelon e(cols);
  for (auto& r : rows) e.add(r);
  return e.rank();
}

std::vector<QVec> kernel(const std::vector<SparseRow>& rows, size_t cols) {
  Echelon e(cols);
  for (auto& r : rows) e.add(r);
  e.reduce_fully();
  std::vector<bool> is_piv(cols, false);
  for (auto& [p, r] : e.rows()) is_piv[p] = true;
  std::vector<QVec> out;
  for (size_t fc = 0; fc < cols; ++fc) {
    if (is_piv[fc]) continue;
    QVec x(cols, Q(0));
    x[fc] = 1;
    for (auto& [p, r] : e.rows())
      for (auto& [c, v] : r)
        if (c == fc) {
          x[p] = -v;
          break;
        }
    out.push_back(std::move(x));
  }
  return out;
}

SolveResult solve(const std::vector<SparseRow>& A, const QVec& b, size_t cols) {
  SolveResult res;
  Echelon e(cols + 1);
  for (size_t i = 0; i < A.size(); ++i) {
    SparseRow r = A[i];
    if (b[i] != 0) r.emplace_back(cols, b[i]);
    e.add(std::move(r));
  }
  bool infeasible = e.rows().count(cols) > 0;
  if (!infeasible) {
    e.reduce_fully();
    res.ok = true;
    res.x.assign(cols, Q(0));
    for (auto& [p, r] : e.rows())
      for (auto& [c, v] : r)
        if (c == cols) res.x[p] = v;
    return res;
  }
  // Certificate: y with A^T y = 0 and b.y = 1.
  size_t m = A.size();
  std::vector<std::map<size_t, Q>> cols_of(cols + 1);
  for (size_t i = 0; i < m; ++i) {
    for (auto& [c, v] : A[i]) cols_of[c][i] = v;
    if (b[i] != 0) cols_of[cols][i] = b[i];
  }
  std::vector<SparseRow> T;
  QVec rhs;
  for (size_t c = 0; c <= cols; ++c) {
    T.push_back(make_row(cols_of[c]));
    rhs.push_back(c == cols ? Q(1) : Q(0));
  }
  Echelon t(m + 1);
  for (size_t c = 0; c < T.size(); ++c) {
    SparseRow r = T[c];
    if (rhs[c] != 0) r.emplace_back(m, rhs[c]);
    t.add(std::move(r));
  }
  t.reduce_fully();
  res.certificate.assign(m, Q(0));
  for (auto& [p, r] : t.rows())
    for (auto& [c, v] : r)
      if (c == m) res.certificate[p] = v;
  return res;
}

}  // namespace nlca
