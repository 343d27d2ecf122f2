#include "nlca/cochain.hpp"

#include <algorithm>
#include <numeric>

#include "nlca/parallel.hpp"

namespace nlca {

Cochain Cochain::zero(int n, const FreeModule& src, const FreeModule& tgt) {
  if (n < 0 || n > kMaxLam) throw StructuralError("cochain degree out of range");
  Cochain f{n, src, tgt, {}};
  f.vals.assign(tuple_count(src.rank(), n), zero_vec(tgt.rank(), f.value_arity()));
  return f;
}

const Vec& Cochain::at(const std::vector<int>& t) const { return vals[flatten(t, src.rank())]; }
Vec& Cochain::at(const std::vector<int>& t) { return vals[flatten(t, src.rank())]; }

bool Cochain::is_zero() const {
  return std::all_of(vals.begin(), vals.end(), [](const Vec& v) { return nlca::is_zero(v); });
}

int Cochain::max_degree() const {
  int d = 0;
  for (auto& v : vals)
    for (auto& p : v) d = std::max(d, p.degree());
  return d;
}

bool operator==(const Cochain& a, const Cochain& b) {
  return a.degree == b.degree && a.src == b.src && a.tgt == b.tgt && a.vals == b.vals;
}

static void require_same(const Cochain& a, const Cochain& b) {
  if (a.degree != b.degree || !(a.src == b.src) || !(a.tgt == b.tgt))
    throw StructuralError("cochains of different shape");
}

Cochain operator+(const Cochain& a, const Cochain& b) {
  require_same(a, b);
  Cochain r = a;
  for (size_t i = 0; i < r.vals.size(); ++i) add_to(r.vals[i], b.vals[i]);
  return r;
}

Cochain operator-(const Cochain& a, const Cochain& b) {
  require_same(a, b);
  Cochain r = a;
  for (size_t i = 0; i < r.vals.size(); ++i) sub_from(r.vals[i], b.vals[i]);
  return r;
}

Cochain operator*(const Q& c, const Cochain& a) {
  Cochain r = a;
  for (auto& v : r.vals) v = scaled(v, c);
  return r;
}

std::string to_string(const Cochain& f) {
  std::string s;
  for (size_t i = 0; i < f.vals.size(); ++i) {
    if (is_zero(f.vals[i])) continue;
    s += tuple_str(unflatten(i, f.src.rank(), f.degree), f.src.names) + " = " + to_string(f.vals[i], f.tgt) + "\n";
  }
  return s.empty() ? "0\n" : s;
}

std::string first_difference(const Cochain& a, const Cochain& b) {
  require_same(a, b);
  for (size_t i = 0; i < a.vals.size(); ++i)
    if (a.vals[i] != b.vals[i]) {
      Vec d = a.vals[i];
      sub_from(d, b.vals[i]);
      return tuple_str(unflatten(i, a.src.rank(), a.degree), a.src.names) + " residual " + to_string(d, a.tgt);
    }
  return "";
}

Cochain from_map(const ConfLinMap& f) {
  Cochain c = Cochain::zero(1, f.src, f.tgt);
  for (int j = 0; j < f.src.rank(); ++j) c.vals[j] = f.cols[j];
  return c;
}

ConfLinMap to_map(const Cochain& f) {
  if (f.degree != 1) throw StructuralError("to_map needs a degree-1 cochain");
  return {f.src, f.tgt, f.vals};
}

Cochain from_elem(const Vec& x, const FreeModule& src, const FreeModule& tgt) {
  Cochain c = Cochain::zero(0, src, tgt);
  c.vals[0] = reduce(tgt, x);
  return c;
}

Cochain bracket_cochain(const LCA& l) {
  Cochain c = Cochain::zero(2, l.module, l.module);
  c.vals.clear();
  for (int i = 0; i < l.rank(); ++i)
    for (int j = 0; j < l.rank(); ++j) c.vals.push_back(l.table[i][j]);
  return c;
}

std::vector<Arg> basis_args(const std::vector<int>& t, int rank, int arity) {
  std::vector<Arg> a;
  for (size_t k = 0; k < t.size(); ++k) a.push_back({basis_vec(rank, t[k], arity), Poly::lam(int(k) + 1, arity)});
  return a;
}

static std::vector<Poly> identity_images(int arity) {
  std::vector<Poly> im;
  for (int v = 0; v <= arity; ++v) im.push_back(Poly::var(v, arity));
  return im;
}

Vec evaluate(const Cochain& f, const std::vector<Arg>& args, int arity) {
  int n = f.degree;
  if (int(args.size()) != n) throw StructuralError("cochain evaluated on the wrong number of arguments");
  if (n == 0) return lift(f.vals[0], arity);
  int r = f.src.rank();
  // Coefficient of argument k: del -> -mu_k, except the last: del -> del + sum mu.
  std::vector<Vec> coef(n);
  Poly sum(arity);
  for (int k = 0; k < n; ++k) {
    if (int(args[k].v.size()) != r) throw StructuralError("argument from the wrong module");
    std::vector<Poly> im = identity_images(arity);
    if (k < n - 1) {
      im[0] = -args[k].lam;
      sum += args[k].lam;
    } else {
      im[0] = Poly::del(arity) + sum;
    }
    coef[k].reserve(r);
    for (auto& p : args[k].v) coef[k].push_back(p.has_var(0) ? p.compose(im) : p);
  }
  std::vector<Poly> vim{Poly::del(arity)};
  for (int k = 0; k < n - 1; ++k) vim.push_back(args[k].lam);
  Vec out = zero_vec(f.tgt.rank(), arity);
  std::vector<int> t(n);
  std::vector<Poly> prefix(n + 1, Poly(arity, 1));
  // Depth-first over nonzero coefficient entries.
  std::function<void(int)> rec = [&](int k) {
    if (k == n) {
      const Vec& v = f.at(t);
      if (is_zero(v)) return;
      for (int c = 0; c < f.tgt.rank(); ++c)
        if (!v[c].is_zero()) out[c] += prefix[n] * v[c].compose(vim);
      return;
    }
    for (int j = 0; j < r; ++j) {
      if (coef[k][j].is_zero()) continue;
      t[k] = j;
      prefix[k + 1] = prefix[k] * coef[k][j];
      rec(k + 1);
    }
  };
  rec(0);
  return reduce(f.tgt, out);
}

Cochain build(int n, const FreeModule& src, const FreeModule& tgt,
              const std::function<Vec(const std::vector<int>&)>& f) {
  Cochain out = Cochain::zero(n, src, tgt);
  int r = src.rank();
  std::vector<Poly> dag;
  if (n > 0) {
    int a = n - 1;
    dag.push_back(Poly::del(a));
    Poly s = -Poly::del(a);
    for (int k = 1; k < n; ++k) {
      dag.push_back(Poly::lam(k, a));
      s -= Poly::lam(k, a);
    }
    dag.push_back(s);
  }
  for_each_index(out.vals.size(), [&](size_t idx) {
    auto t = unflatten(idx, r, n);
    Vec v = f(t);
    if (n > 0) v = compose(v, dag);
    out.vals[idx] = reduce(tgt, v);
  });
  return out;
}

Cochain permuted(const Cochain& f, const std::vector<int>& sigma) {
  int n = f.degree;
  return build(n, f.src, f.tgt, [&](const std::vector<int>& t) {
    auto a = basis_args(t, f.src.rank(), n);
    std::vector<Arg> p;
    for (int k = 0; k < n; ++k) p.push_back(a[sigma[k]]);
    return evaluate(f, p, n);
  });
}

int perm_sign(const std::vector<int>& p) {
  int s = 1;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

Cochain antisymmetrize(const Cochain& f) {
  int n = f.degree;
  if (n < 2) return f;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  Cochain acc = Cochain::zero(n, f.src, f.tgt);
  Q cnt = 0;
  do {
    acc = acc + Q(perm_sign(p)) * permuted(f, p);
    cnt += 1;
  } while (std::next_permutation(p.begin(), p.end()));
  return Q(1 / cnt) * acc;
}

Report check_skew(const Cochain& f) {
  Report rep;
  for (int i = 0; i + 1 < f.degree; ++i) {
    std::vector<int> s(f.degree);
    std::iota(s.begin(), s.end(), 0);
    std::swap(s[i], s[i + 1]);
    Cochain g = f + permuted(f, s);
    Check c{"skew" + std::to_string(i + 1), g.is_zero(), ""};
    if (!c.pass) c.witness = first_difference(g, Cochain::zero(f.degree, f.src, f.tgt));
    rep.add(c);
  }
  return rep;
}

std::vector<std::pair<std::vector<int>, std::vector<int>>> shuffles(int n, int k) {
  std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    std::vector<int> a, b;
    for (int i = 0; i < n; ++i) (mask >> i & 1 ? a : b).push_back(i);
    out.emplace_back(a, b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Poly random_poly(int arity, int maxdeg, std::mt19937_64& rng, bool with_del) {
  std::uniform_int_distribution<int> coef(-3, 3);
  Poly p(arity);
  int nv = arity + 1;
  // All exponent vectors of total degree <= maxdeg.
  std::function<void(int, int, Exp&)> rec = [&](int v, int left, Exp& e) {
    if (v == nv) {
      if (rng() % 2) p.add_term(e, coef(rng));
      return;
    }
    int top = (v == 0 && !with_del) ? 0 : left;
    for (int d = 0; d <= top; ++d) {
      e[v] = uint8_t(d);
      rec(v + 1, left - d, e);
    }
    e[v] = 0;
  };
  Exp e{};
  rec(0, maxdeg, e);
  return p;
}

Cochain random_cochain(int n, const FreeModule& src, const FreeModule& tgt, int maxdeg, std::mt19937_64& rng) {
  Cochain f = Cochain::zero(n, src, tgt);
  for (auto& v : f.vals)
    for (int c = 0; c < tgt.rank(); ++c) v[c] = random_poly(f.value_arity(), maxdeg, rng, !tgt.is_eval(c));
  for (auto& v : f.vals) v = reduce(tgt, v);
  return antisymmetrize(f);
}

ConfLinMap random_map(const FreeModule& src, const FreeModule& tgt, int maxdeg, std::mt19937_64& rng) {
  ConfLinMap f = ConfLinMap::zero(src, tgt);
  for (int j = 0; j < src.rank(); ++j)
    for (int i = 0; i < tgt.rank(); ++i) {
      // del-linearity: an evaluation source summand maps only into evaluation summands with the same scalar
      if (src.is_eval(j) && (!tgt.is_eval(i) || *tgt.eval[i] != *src.eval[j])) continue;
      f.cols[j][i] = random_poly(0, maxdeg, rng, !tgt.is_eval(i));
    }
  return f;
}

}  // namespace nlca
