#include "nlca/lca.hpp"

#include <algorithm>

#include "nlca/parallel.hpp"

namespace nlca {

bool FreeModule::has_eval() const {
  return std::any_of(eval.begin(), eval.end(), [](auto& e) { return e.has_value(); });
}

int FreeModule::index_of(const std::string& n) const {
  auto it = std::find(names.begin(), names.end(), n);
  return it == names.end() ? -1 : int(it - names.begin());
}

FreeModule FreeModule::free(std::vector<std::string> names) {
  FreeModule m;
  m.eval.assign(names.size(), std::nullopt);
  m.names = std::move(names);
  return m;
}

FreeModule FreeModule::evaluation(const std::string& name, const Q& a) { return {{name}, {a}}; }

FreeModule FreeModule::direct_sum(const FreeModule& a, const FreeModule& b) {
  FreeModule m = a;
  m.names.insert(m.names.end(), b.names.begin(), b.names.end());
  m.eval.insert(m.eval.end(), b.eval.begin(), b.eval.end());
  return m;
}

Vec zero_vec(int rank, int arity) { return Vec(rank, Poly(arity)); }

Vec basis_vec(int rank, int i, int arity) {
  Vec v = zero_vec(rank, arity);
  v[i] = Poly(arity, 1);
  return v;
}

int vec_arity(const Vec& v) {
  if (v.empty()) throw StructuralError("arity of empty vector");
  return v[0].arity();
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Poly& p) { return p.is_zero(); });
}

Vec& add_to(Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw StructuralError("module mismatch in add");
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

Vec& sub_from(Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw StructuralError("module mismatch in sub");
  for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

Vec scaled(const Vec& v, const Q& c) {
  Vec r = v;
  for (auto& p : r) p *= c;
  return r;
}

Vec mul(const Poly& p, const Vec& v) {
  Vec r;
  r.reserve(v.size());
  for (auto& x : v) r.push_back(p * x);
  return r;
}

Vec neg(const Vec& v) { return scaled(v, -1); }

Vec compose(const Vec& v, const std::vector<Poly>& images) {
  Vec r;
  r.reserve(v.size());
  for (auto& x : v) r.push_back(x.compose(images));
  return r;
}

Vec lift(const Vec& v, int arity) {
  Vec r;
  r.reserve(v.size());
  for (auto& x : v) r.push_back(x.lift(arity));
  return r;
}

Poly reduce_at(const Poly& p, const Q& a) {
  if (!p.has_var(0)) return p;
  return p.substitute(0, Poly(p.arity(), a));
}

Vec reduce(const FreeModule& m, const Vec& v) {
  if (int(v.size()) != m.rank()) throw StructuralError("module mismatch");
  if (!m.has_eval()) return v;
  Vec r = v;
  for (int i = 0; i < m.rank(); ++i)
    if (m.eval[i]) r[i] = reduce_at(r[i], *m.eval[i]);
  return r;
}

Poly reduce(const FreeModule& m, const Poly& p) {
  if (m.rank() != 1) throw StructuralError("scalar reduction needs rank 1");
  return m.eval[0] ? reduce_at(p, *m.eval[0]) : p;
}

std::string to_string(const Vec& v, const FreeModule& m) {
  std::string s;
  for (int i = 0; i < int(v.size()); ++i) {
    if (v[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + to_string(v[i]) + ")*" + (m.names.empty() ? "e" + std::to_string(i) : m.names[i]);
  }
  return s.empty() ? "0" : s;
}

ConfLinMap ConfLinMap::zero(const FreeModule& s, const FreeModule& t) {
  return {s, t, std::vector<Vec>(s.rank(), zero_vec(t.rank(), 0))};
}

ConfLinMap ConfLinMap::identity(const FreeModule& m) { return scalar(m, 1); }

ConfLinMap ConfLinMap::scalar(const FreeModule& m, const Q& c) {
  return diag(m, std::vector<Q>(m.rank(), c));
}

ConfLinMap ConfLinMap::diag(const FreeModule& m, const std::vector<Q>& d) {
  if (int(d.size()) != m.rank()) throw StructuralError("diag: wrong length");
  ConfLinMap f = zero(m, m);
  for (int i = 0; i < m.rank(); ++i) f.cols[i][i] = Poly(0, d[i]);
  return f;
}

Vec ConfLinMap::apply(const Vec& x) const { return apply(x, vec_arity(x)); }

Vec ConfLinMap::apply(const Vec& x, int ar) const {
  if (int(x.size()) != src.rank()) throw StructuralError("map applied to element of wrong module");
  Vec r = zero_vec(tgt.rank(), ar);
  for (int j = 0; j < src.rank(); ++j) {
    if (x[j].is_zero()) continue;
    for (int i = 0; i < tgt.rank(); ++i)
      if (!cols[j][i].is_zero()) r[i] += x[j] * cols[j][i].lift(ar);
  }
  return reduce(tgt, r);
}

bool ConfLinMap::is_zero() const {
  return std::all_of(cols.begin(), cols.end(), [](const Vec& v) { return nlca::is_zero(v); });
}

int ConfLinMap::max_degree() const {
  int d = 0;
  for (auto& c : cols)
    for (auto& p : c) d = std::max(d, p.degree());
  return d;
}

bool operator==(const ConfLinMap& a, const ConfLinMap& b) {
  return a.src == b.src && a.tgt == b.tgt && a.cols == b.cols;
}

ConfLinMap operator*(const ConfLinMap& a, const ConfLinMap& b) {
  if (!(a.src == b.tgt)) throw StructuralError("composition of incompatible maps");
  ConfLinMap r{b.src, a.tgt, {}};
  for (auto& c : b.cols) r.cols.push_back(a.apply(c));
  return r;
}

ConfLinMap operator+(const ConfLinMap& a, const ConfLinMap& b) {
  if (!(a.src == b.src) || !(a.tgt == b.tgt)) throw StructuralError("sum of incompatible maps");
  ConfLinMap r = a;
  for (size_t j = 0; j < r.cols.size(); ++j) add_to(r.cols[j], b.cols[j]);
  return r;
}

ConfLinMap operator-(const ConfLinMap& a, const ConfLinMap& b) { return a + (-1) * b; }

ConfLinMap operator*(const Q& c, const ConfLinMap& a) {
  ConfLinMap r = a;
  for (auto& col : r.cols) col = scaled(col, c);
  return r;
}

ConfLinMap power(const ConfLinMap& a, int k) {
  ConfLinMap r = ConfLinMap::identity(a.src);
  for (int i = 0; i < k; ++i) r = a * r;
  return r;
}

ConfLinMap direct_sum(const ConfLinMap& a, const ConfLinMap& b) {
  ConfLinMap r = ConfLinMap::zero(FreeModule::direct_sum(a.src, b.src), FreeModule::direct_sum(a.tgt, b.tgt));
  int ra = a.tgt.rank();
  for (int j = 0; j < a.src.rank(); ++j)
    for (int i = 0; i < ra; ++i) r.cols[j][i] = a.cols[j][i];
  for (int j = 0; j < b.src.rank(); ++j)
    for (int i = 0; i < b.tgt.rank(); ++i) r.cols[a.src.rank() + j][ra + i] = b.cols[j][i];
  return r;
}

namespace {

using PMat = std::vector<std::vector<Poly>>;

Poly det(const PMat& m) {
  int n = int(m.size());
  if (n == 0) return Poly(0, 1);
  if (n == 1) return m[0][0];
  Poly d(0);
  for (int c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    PMat minor;
    for (int r = 1; r < n; ++r) {
      std::vector<Poly> row;
      for (int k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    Poly t = m[0][c] * det(minor);
    if (c % 2) d -= t; else d += t;
  }
  return d;
}

}  // namespace

std::optional<ConfLinMap> inverse(const ConfLinMap& a) {
  int n = a.src.rank();
  if (a.tgt.rank() != n) return std::nullopt;
  PMat m(n, std::vector<Poly>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = a.at(i, j);
  Poly d = det(m);
  if (d.is_zero() || d.degree() > 0) return std::nullopt;
  Q dinv = 1 / d.constant();
  ConfLinMap r = ConfLinMap::zero(a.tgt, a.src);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // inverse(i,j) = cofactor(j,i) / det
      PMat minor;
      for (int r2 = 0; r2 < n; ++r2) {
        if (r2 == j) continue;
        std::vector<Poly> row;
        for (int k = 0; k < n; ++k)
          if (k != i) row.push_back(m[r2][k]);
        minor.push_back(row);
      }
      Poly c = det(minor) * dinv;
      if ((i + j) % 2) c = -c;
      r.cols[j][i] = c;
    }
  for (auto& c : r.cols) c = reduce(r.tgt, c);
  if (!(r * a == ConfLinMap::identity(a.src)) || !(a * r == ConfLinMap::identity(a.tgt))) return std::nullopt;
  return r;
}

std::string to_string(const ConfLinMap& a) {
  std::string s;
  for (int j = 0; j < a.src.rank(); ++j) {
    if (j) s += "; ";
    s += a.src.names[j] + " -> " + to_string(a.cols[j], a.tgt);
  }
  return s;
}

Table zero_table(int rs, int rt) { return Table(rs, std::vector<Vec>(rt, zero_vec(rt, 1))); }

Vec act(const Table& t, const FreeModule& tgt, const Vec& a, const Vec& m, const Poly& Lam) {
  int ar = Lam.arity();
  if (int(a.size()) != int(t.size())) throw StructuralError("module mismatch in first bracket argument");
  if (!t.empty() && m.size() != t[0].size()) throw StructuralError("module mismatch in second bracket argument");
  if ((!a.empty() && vec_arity(a) != ar) || (!m.empty() && vec_arity(m) != ar))
    throw StructuralError("arity mismatch in bracket");
  std::vector<Poly> ia, im, it{Poly::del(ar), Lam};
  ia.push_back(-Lam);
  im.push_back(Poly::del(ar) + Lam);
  for (int k = 1; k <= ar; ++k) {
    ia.push_back(Poly::lam(k, ar));
    im.push_back(Poly::lam(k, ar));
  }
  Vec r = zero_vec(tgt.rank(), ar);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    Poly ai = a[i].has_var(0) ? a[i].compose(ia) : a[i];
    for (size_t j = 0; j < m.size(); ++j) {
      if (m[j].is_zero() || is_zero(t[i][j])) continue;
      Poly c = ai * (m[j].has_var(0) ? m[j].compose(im) : m[j]);
      for (int k = 0; k < tgt.rank(); ++k)
        if (!t[i][j][k].is_zero()) r[k] += c * t[i][j][k].compose(it);
    }
  }
  return reduce(tgt, r);
}

LCA LCA::zero(const FreeModule& m) { return {m, zero_table(m.rank(), m.rank())}; }

static int table_degree(const Table& t) {
  int d = 0;
  for (auto& row : t)
    for (auto& v : row)
      for (auto& p : v) d = std::max(d, p.degree());
  return d;
}

int LCA::max_degree() const { return table_degree(table); }
int RepTable::max_degree() const { return table_degree(action); }

RepTable RepTable::zero(const LCA& l, const FreeModule& m) { return {l, m, zero_table(l.rank(), m.rank())}; }

Vec eval_bracket(const LCA& l, const Vec& a, const Vec& b, int slot) {
  int ar = std::max({vec_arity(a), vec_arity(b), slot});
  return l.bracket(lift(a, ar), lift(b, ar), Poly::lam(slot, ar));
}

namespace {

std::string residual(const std::vector<int>& t, const FreeModule& src, const Vec& r, const FreeModule& tgt) {
  return tuple_str(t, src.names) + " residual " + to_string(r, tgt);
}

// del-action consistency on evaluation summands: with del e_i = a e_i the
// sesquilinearity rules force a*T_ij = -lam T_ij (first slot) and
// a*T_ij = (del+lam) T_ij (second slot).
Check torsion_check(const std::string& name, const Table& t, const FreeModule& src, const FreeModule& tgt) {
  int rs = src.rank(), rt = tgt.rank();
  return check_all(name, size_t(rs) * rt, [&](size_t idx) -> std::optional<std::string> {
    int i = int(idx / rt), j = int(idx % rt);
    const Vec& v = t[i][j];
    if (src.is_eval(i)) {
      Vec d = scaled(v, *src.eval[i]);
      add_to(d, mul(Poly::lam(1, 1), v));
      d = reduce(tgt, d);
      if (!is_zero(d)) return residual({i, j}, src, d, tgt);
    }
    if (tgt.is_eval(j)) {
      Vec d = scaled(v, *tgt.eval[j]);
      sub_from(d, mul(Poly::del(1) + Poly::lam(1, 1), v));
      d = reduce(tgt, d);
      if (!is_zero(d)) return "(" + src.names[i] + "," + tgt.names[j] + ") residual " + to_string(d, tgt);
    }
    return std::nullopt;
  });
}

}  // namespace

Report check_lca(const LCA& l) {
  Report rep;
  int n = l.rank();
  const auto& M = l.module;
  if (int(l.table.size()) != n) throw StructuralError("table size mismatch");
  rep.add(check_all("skew", size_t(n) * n, [&](size_t idx) -> std::optional<std::string> {
    auto t = unflatten(idx, n, 2);
    Vec x = l.bracket(basis_vec(n, t[0], 1), basis_vec(n, t[1], 1), Poly::lam(1, 1));
    Vec y = l.bracket(basis_vec(n, t[1], 1), basis_vec(n, t[0], 1), -Poly::del(1) - Poly::lam(1, 1));
    add_to(x, y);
    if (is_zero(x)) return std::nullopt;
    return residual(t, M, x, M);
  }));
  rep.add(check_all("jacobi", tuple_count(n, 3), [&](size_t idx) -> std::optional<std::string> {
    auto t = unflatten(idx, n, 3);
    Vec a = basis_vec(n, t[0], 2), b = basis_vec(n, t[1], 2), c = basis_vec(n, t[2], 2);
    Poly L1 = Poly::lam(1, 2), L2 = Poly::lam(2, 2);
    Vec r = l.bracket(a, l.bracket(b, c, L2), L1);
    sub_from(r, l.bracket(b, l.bracket(a, c, L1), L2));
    sub_from(r, l.bracket(l.bracket(a, b, L1), c, L1 + L2));
    if (is_zero(r)) return std::nullopt;
    return residual(t, M, r, M);
  }));
  if (M.has_eval()) rep.add(torsion_check("torsion", l.table, M, M));
  return rep;
}

Report check_representation(const RepTable& r) {
  if (!check_lca(r.algebra).ok()) return precondition("algebra fails check_lca");
  Report rep;
  int n = r.algebra.rank(), m = r.module.rank();
  if (int(r.action.size()) != n) throw StructuralError("action table size mismatch");
  rep.add(check_all("rep", size_t(n) * n * m, [&](size_t idx) -> std::optional<std::string> {
    int k = int(idx % m), j = int(idx / m % n), i = int(idx / m / n);
    Poly L1 = Poly::lam(1, 2), L2 = Poly::lam(2, 2);
    Vec p = basis_vec(n, i, 2), q = basis_vec(n, j, 2), x = basis_vec(m, k, 2);
    Vec lhs = r.apply(r.algebra.bracket(p, q, L1), x, L1 + L2);
    sub_from(lhs, r.apply(p, r.apply(q, x, L2), L1));
    add_to(lhs, r.apply(q, r.apply(p, x, L1), L2));
    if (is_zero(lhs)) return std::nullopt;
    return "(" + r.algebra.module.names[i] + "," + r.algebra.module.names[j] + "," + r.module.names[k] +
           ") residual " + to_string(lhs, r.module);
  }));
  if (r.module.has_eval() || r.algebra.module.has_eval())
    rep.add(torsion_check("torsion", r.action, r.algebra.module, r.module));
  return rep;
}

LCA semidirect(const RepTable& r) {
  int n = r.algebra.rank(), m = r.module.rank();
  LCA s = LCA::zero(FreeModule::direct_sum(r.algebra.module, r.module));
  int t = n + m;
  auto embedL = [&](const Vec& v) {
    Vec o = zero_vec(t, vec_arity(v));
    for (int i = 0; i < n; ++i) o[i] = v[i];
    return o;
  };
  auto embedM = [&](const Vec& v) {
    Vec o = zero_vec(t, vec_arity(v));
    for (int i = 0; i < m; ++i) o[n + i] = v[i];
    return o;
  };
  Poly L = Poly::lam(1, 1), dag = -Poly::del(1) - L;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) s.table[i][j] = embedL(r.algebra.table[i][j]);
    for (int j = 0; j < m; ++j) {
      s.table[i][n + j] = embedM(r.action[i][j]);
      s.table[n + j][i] = embedM(neg(r.apply(basis_vec(n, i, 1), basis_vec(m, j, 1), dag)));
    }
  }
  return s;
}

Report check_morphism(const LCA& src, const LCA& dst, const ConfLinMap& f) {
  if (!(f.src == src.module) || !(f.tgt == dst.module)) throw StructuralError("morphism: module mismatch");
  Report rep;
  int n = src.rank();
  rep.add(check_all("bracket", size_t(n) * n, [&](size_t idx) -> std::optional<std::string> {
    auto t = unflatten(idx, n, 2);
    Poly L = Poly::lam(1, 1);
    Vec lhs = f.apply(src.bracket(basis_vec(n, t[0], 1), basis_vec(n, t[1], 1), L));
    sub_from(lhs, dst.bracket(lift(f.cols[t[0]], 1), lift(f.cols[t[1]], 1), L));
    if (is_zero(lhs)) return std::nullopt;
    return residual(t, src.module, lhs, dst.module);
  }));
  return rep;
}

}  // namespace nlca
