#include "nlca/cohomology.hpp"

#include <algorithm>
#include <numeric>

#include "nlca/parallel.hpp"

namespace nlca {

namespace {

std::vector<Arg> drop(const std::vector<Arg>& a, std::initializer_list<size_t> idx) {
  std::vector<Arg> r;
  for (size_t k = 0; k < a.size(); ++k)
    if (std::find(idx.begin(), idx.end(), k) == idx.end()) r.push_back(a[k]);
  return r;
}

std::vector<Arg> pick(const std::vector<Arg>& a, const std::vector<int>& idx) {
  std::vector<Arg> r;
  for (int k : idx) r.push_back(a[k]);
  return r;
}

Poly lam_sum(const std::vector<Arg>& a, const std::vector<int>& idx, int arity) {
  Poly s(arity);
  for (int k : idx) s += a[k].lam;
  return s;
}

void require_coeffs(const Cochain& f, const RepTable& rep) {
  if (!(f.src == rep.algebra.module) || !(f.tgt == rep.module)) throw StructuralError("cochain does not match the coefficient module");
}

void require_adjoint(const Cochain& f) {
  if (!(f.src == f.tgt)) throw StructuralError("adjoint coefficients required");
}

}  // namespace

Vec delta_at(const Cochain& f, const RepTable& rep, const std::vector<Arg>& args, int arity) {
  Vec out = zero_vec(rep.module.rank(), arity);
  size_t m = args.size();
  for (size_t i = 0; i < m; ++i) {
    Vec v = rep.apply(args[i].v, evaluate(f, drop(args, {i}), arity), args[i].lam);
    if (i % 2) sub_from(out, v); else add_to(out, v);
  }
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j) {
      std::vector<Arg> a{{rep.algebra.bracket(args[i].v, args[j].v, args[i].lam), args[i].lam + args[j].lam}};
      for (auto& x : drop(args, {i, j})) a.push_back(x);
      Vec v = evaluate(f, a, arity);
      if ((i + j) % 2) sub_from(out, v); else add_to(out, v);
    }
  return out;
}

Cochain apply_delta(const Cochain& f, const RepTable& rep) {
  require_coeffs(f, rep);
  int n = f.degree + 1;
  if (n > kMaxLam) throw StructuralError("degree overflow in delta");
  return build(n, f.src, f.tgt, [&](const std::vector<int>& t) {
    return delta_at(f, rep, basis_args(t, f.src.rank(), n), n);
  });
}

Cochain insertion(const Cochain& J, const Cochain& K) {
  int m = J.degree, n = K.degree, N = m + n - 1;
  if (m < 1) throw StructuralError("insertion into a degree-0 cochain");
  if (N > kMaxLam) throw StructuralError("degree overflow in insertion");
  if (!(K.tgt == J.src) || !(K.src == J.src)) throw StructuralError("insertion of incompatible cochains");
  auto sh = shuffles(N, n);
  return build(N, J.src, J.tgt, [&](const std::vector<int>& t) {
    auto args = basis_args(t, J.src.rank(), N);
    Vec out = zero_vec(J.tgt.rank(), N);
    for (auto& [S, R] : sh) {
      std::vector<int> p = S;
      p.insert(p.end(), R.begin(), R.end());
      std::vector<Arg> ja{{evaluate(K, pick(args, S), N), lam_sum(args, S, N)}};
      for (int k : R) ja.push_back(args[k]);
      Vec v = evaluate(J, ja, N);
      if (perm_sign(p) < 0) sub_from(out, v); else add_to(out, v);
    }
    return out;
  });
}

Cochain nr_bracket(const Cochain& J, const Cochain& K) {
  require_adjoint(J);
  require_adjoint(K);
  int s = ((J.degree - 1) * (K.degree - 1)) % 2 ? -1 : 1;
  return insertion(J, K) - Q(s) * insertion(K, J);
}

Cochain cup_product(const Cochain& J, const Cochain& K, const LCA& l) {
  require_adjoint(J);
  require_adjoint(K);
  int m = J.degree, n = K.degree, N = m + n;
  if (N > kMaxLam) throw StructuralError("degree overflow in cup product");
  auto sh = shuffles(N, m);
  return build(N, J.src, J.tgt, [&](const std::vector<int>& t) {
    auto args = basis_args(t, J.src.rank(), N);
    Vec out = zero_vec(J.tgt.rank(), N);
    for (auto& [S, R] : sh) {
      std::vector<int> p = S;
      p.insert(p.end(), R.begin(), R.end());
      Vec v = l.bracket(evaluate(J, pick(args, S), N), evaluate(K, pick(args, R), N), lam_sum(args, S, N));
      if (perm_sign(p) < 0) sub_from(out, v); else add_to(out, v);
    }
    return out;
  });
}

Cochain fn_bracket(const Cochain& J, const Cochain& K, const LCA& l) {
  int m = J.degree, n = K.degree;
  if (m < 1 || n < 1) throw StructuralError("FN bracket needs degrees >= 1");
  if (m + n > kMaxLam) throw StructuralError("degree overflow in FN bracket");
  RepTable ad = RepTable::adjoint(l);
  Cochain r = cup_product(J, K, l);
  Cochain a = insertion(K, apply_delta(J, ad));
  Cochain b = insertion(J, apply_delta(K, ad));
  r = m % 2 ? r - a : r + a;
  return ((m + 1) * n) % 2 ? r + b : r - b;
}

Cochain apply_dN(const Cochain& f, const NijenhuisLCA& nl, const NijenhuisRep& co) {
  const RepTable& rep = co.rep;
  require_coeffs(f, rep);
  int n = f.degree + 1;
  if (n > kMaxLam) throw StructuralError("degree overflow in d_N");
  const ConfLinMap& N = nl.N;
  return build(n, f.src, f.tgt, [&](const std::vector<int>& t) {
    auto args = basis_args(t, f.src.rank(), n);
    Vec out = zero_vec(rep.module.rank(), n);
    for (int i = 0; i < n; ++i) {
      Vec v = rep.apply(N.apply(args[i].v), evaluate(f, drop(args, {size_t(i)}), n), args[i].lam);
      if (i % 2) sub_from(out, v); else add_to(out, v);
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        std::vector<Arg> a{{deformed(rep.algebra, N, args[i].v, args[j].v, args[i].lam), args[i].lam + args[j].lam}};
        for (auto& x : drop(args, {size_t(i), size_t(j)})) a.push_back(x);
        Vec v = evaluate(f, a, n);
        if ((i + j) % 2) sub_from(out, v); else add_to(out, v);
      }
    sub_from(out, co.NM.apply(delta_at(f, rep, args, n)));
    return out;
  });
}

Cochain apply_dN(const Cochain& f, const NijenhuisLCA& n) { return apply_dN(f, n, NijenhuisRep::adjoint(n)); }

Cochain xi_map(const Cochain& f, const ConfLinMap& N, const ConfLinMap& NM) {
  int n = f.degree;
  if (!(N.src == f.src) || !(NM.src == f.tgt)) throw StructuralError("xi: operator/cochain mismatch");
  std::vector<ConfLinMap> pw{ConfLinMap::identity(f.tgt)};
  for (int k = 1; k <= n; ++k) pw.push_back(NM * pw.back());
  return build(n, f.src, f.tgt, [&](const std::vector<int>& t) {
    auto args = basis_args(t, f.src.rank(), n);
    Vec out = zero_vec(f.tgt.rank(), n);
    for (unsigned S = 0; S < (1u << n); ++S) {
      auto a = args;
      for (int k = 0; k < n; ++k)
        if (!(S >> k & 1)) a[k].v = N.apply(a[k].v);
      int s = __builtin_popcount(S);
      Vec v = pw[s].apply(evaluate(f, a, n));
      if (s % 2) sub_from(out, v); else add_to(out, v);
    }
    return out;
  });
}

CochainPair apply_dNL(const CochainPair& p, const NijenhuisLCA& nl, const NijenhuisRep& co) {
  int n = p.f.degree;
  if (p.g && p.g->degree != n - 1) throw StructuralError("d_NL: pair degrees do not match");
  CochainPair out{apply_delta(p.f, co.rep), std::nullopt};
  Cochain x = xi_map(p.f, nl.N, co.NM);
  if (n % 2) x = Q(-1) * x;
  if (p.g) x = x + apply_dN(*p.g, nl, co);
  out.g = x;
  return out;
}

CochainPair apply_dNL(const CochainPair& p, const NijenhuisLCA& n) { return apply_dNL(p, n, NijenhuisRep::adjoint(n)); }

Report phi_chain_check(const Cochain& f, const NijenhuisLCA& nl, const NijenhuisRep& co) {
  int n = f.degree;
  if (n > 2) throw StructuralError("phi_chain_check supports degree <= 2");
  RepTable r1 = induced_rep(nl, co, 1);
  auto phi = [&](const Cochain& g) {
    Cochain d = apply_delta(g, co.rep);
    return (g.degree + 1) % 2 ? Q(-1) * d : d;
  };
  Cochain lhs = apply_delta(phi(f), r1);
  Cochain rhs = phi(apply_dN(f, nl, co));
  Report rep;
  rep.add({"phi_chain", lhs == rhs, lhs == rhs ? "" : first_difference(lhs, rhs)});
  return rep;
}

Report phi_chain_check(const Cochain& f, const NijenhuisLCA& n) { return phi_chain_check(f, n, NijenhuisRep::adjoint(n)); }

ComplexSpec delta_complex(const RepTable& rep) { return {Complex::Delta, rep, std::nullopt, std::nullopt}; }
ComplexSpec dn_complex(const NijenhuisLCA& n, const NijenhuisRep& co) { return {Complex::DN, co.rep, n, co.NM}; }
ComplexSpec dnl_complex(const NijenhuisLCA& n, const NijenhuisRep& co) { return {Complex::DNL, co.rep, n, co.NM}; }

std::vector<int> component_degrees(const ComplexSpec& cx, int n) {
  if (cx.kind == Complex::DNL && n >= 2) return {n, n - 1};
  return {n};
}

std::vector<Cochain> apply_complex(const ComplexSpec& cx, const std::vector<Cochain>& x) {
  switch (cx.kind) {
    case Complex::Delta: return {apply_delta(x.at(0), cx.rep)};
    case Complex::DN: return {apply_dN(x.at(0), *cx.nlca, NijenhuisRep{cx.rep, *cx.NM})};
    case Complex::DNL: {
      CochainPair p{x.at(0), x.size() > 1 ? std::optional<Cochain>(x[1]) : std::nullopt};
      auto r = apply_dNL(p, *cx.nlca, NijenhuisRep{cx.rep, *cx.NM});
      return {r.f, *r.g};
    }
  }
  return {};
}

namespace {

using Key = std::vector<int>;

// One unknown coefficient: component, tuple, target coordinate, monomial.
struct Unknown {
  int comp;
  size_t tuple;
  int coord;
  Exp exp;
};

std::vector<Unknown> enumerate_unknowns(const ComplexSpec& cx, const std::vector<int>& degs, int D) {
  std::vector<Unknown> out;
  int r = cx.rep.algebra.rank();
  for (int c = 0; c < int(degs.size()); ++c) {
    int d = degs[c];
    int nv = (d > 0 ? d - 1 : 0) + 1;
    size_t nt = tuple_count(r, d);
    for (size_t t = 0; t < nt; ++t)
      for (int i = 0; i < cx.rep.module.rank(); ++i) {
        bool ev = cx.rep.module.is_eval(i);
        std::function<void(int, int, Exp&)> rec = [&](int v, int left, Exp& e) {
          if (v == nv) {
            out.push_back({c, t, i, e});
            return;
          }
          int top = (v == 0 && ev) ? 0 : left;
          for (int k = 0; k <= top; ++k) {
            e[v] = uint8_t(k);
            rec(v + 1, left - k, e);
          }
          e[v] = 0;
        };
        Exp e{};
        rec(0, D, e);
      }
  }
  return out;
}

std::vector<Cochain> zero_components(const ComplexSpec& cx, const std::vector<int>& degs) {
  std::vector<Cochain> x;
  for (int d : degs) x.push_back(Cochain::zero(d, cx.rep.algebra.module, cx.rep.module));
  return x;
}

std::vector<Cochain> assemble(const ComplexSpec& cx, const std::vector<int>& degs, const std::vector<Unknown>& us,
                              const QVec& coef) {
  auto x = zero_components(cx, degs);
  for (size_t k = 0; k < us.size(); ++k) {
    if (coef[k] == 0) continue;
    auto& u = us[k];
    Poly p(x[u.comp].value_arity());
    p.add_term(u.exp, coef[k]);
    x[u.comp].vals[u.tuple][u.coord] += p;
  }
  return x;
}

void add_coords(std::map<Key, Q>& out, int tag, const Cochain& c) {
  for (size_t t = 0; t < c.vals.size(); ++t)
    for (int i = 0; i < int(c.vals[t].size()); ++i)
      for (auto& [e, q] : c.vals[t][i].terms()) {
        Key k{tag, int(t), i};
        k.insert(k.end(), e.begin(), e.end());
        out[k] += q;
      }
}

// Image coordinates of the operator plus skew-symmetry residuals (tags >= 100).
std::map<Key, Q> image_coords(const ComplexSpec& cx, const std::vector<Cochain>& x, bool with_op) {
  std::map<Key, Q> out;
  for (size_t c = 0; c < x.size(); ++c) {
    int d = x[c].degree;
    for (int i = 0; i + 1 < d; ++i) {
      std::vector<int> s(d);
      std::iota(s.begin(), s.end(), 0);
      std::swap(s[i], s[i + 1]);
      add_coords(out, 100 + 10 * int(c) + i, x[c] + permuted(x[c], s));
    }
  }
  if (with_op) {
    auto y = apply_complex(cx, x);
    for (size_t c = 0; c < y.size(); ++c) add_coords(out, int(c), y[c]);
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

// Columns of the linear map unknown -> coordinates, generated in parallel.
std::vector<std::map<Key, Q>> columns(const ComplexSpec& cx, const std::vector<int>& degs,
                                      const std::vector<Unknown>& us, bool with_op) {
  std::vector<std::map<Key, Q>> cols(us.size());
  for_each_index(us.size(), [&](size_t k) {
    QVec e(us.size(), Q(0));
    e[k] = 1;
    cols[k] = image_coords(cx, assemble(cx, degs, us, e), with_op);
  });
  return cols;
}

std::vector<SparseRow> rows_from_columns(const std::vector<std::map<Key, Q>>& cols, Indexer<Key>& rows_ix) {
  std::vector<std::map<size_t, Q>> rows;
  for (size_t k = 0; k < cols.size(); ++k)
    for (auto& [key, q] : cols[k]) {
      size_t r = rows_ix.get(key);
      if (r >= rows.size()) rows.resize(r + 1);
      rows[r][k] = q;
    }
  std::vector<SparseRow> out;
  for (auto& r : rows) out.push_back(make_row(r));
  return out;
}

int structure_degree(const ComplexSpec& cx) {
  int d = std::max(cx.rep.algebra.max_degree(), cx.rep.max_degree());
  if (cx.nlca) d += cx.nlca->N.max_degree();
  if (cx.NM) d += cx.NM->max_degree();
  return d;
}

// Coordinates of a combination of cochains in the unknown key scheme.
std::map<Key, Q> cochain_coords(const std::vector<Cochain>& x) {
  std::map<Key, Q> out;
  for (size_t c = 0; c < x.size(); ++c) add_coords(out, int(c), x[c]);
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace

TruncatedResult solve_truncated(const ComplexSpec& cx, int n, int D) {
  if (n < 0 || n > 3) throw StructuralError("solve_truncated: degree must be 0..3");
  if (D < 0 || D > 6) throw StructuralError("solve_truncated: bound must be 0..6");
  if (cx.rep.algebra.module.has_eval()) throw StructuralError("solve_truncated: source must be free");
  TruncatedResult res;
  auto degs = component_degrees(cx, n);
  auto us = enumerate_unknowns(cx, degs, D);
  res.unknowns = us.size();
  auto cols = columns(cx, degs, us, true);
  Indexer<Key> rix;
  auto rows = rows_from_columns(cols, rix);
  res.equations = rows.size();
  auto ker = kernel(rows, us.size());
  res.rank = us.size() - ker.size();
  res.cocycle_dim = ker.size();
  std::vector<std::map<Key, Q>> Z;
  for (auto& v : ker) {
    auto x = assemble(cx, degs, us, v);
    res.cocycle_basis.push_back(x);
    Z.push_back(cochain_coords(x));
  }
  // Coboundaries: images of skew cochains one degree down.
  std::vector<std::map<Key, Q>> B;
  std::vector<std::vector<Cochain>> Bx;
  bool has_prev = n >= 1 && !(cx.kind == Complex::DNL && n < 2);
  if (has_prev) {
    auto pdegs = component_degrees(cx, n - 1);
    auto pus = enumerate_unknowns(cx, pdegs, D + structure_degree(cx));
    auto pskew = columns(cx, pdegs, pus, false);
    Indexer<Key> pix;
    auto prow = rows_from_columns(pskew, pix);
    for (auto& v : kernel(prow, pus.size())) {
      auto y = apply_complex(cx, assemble(cx, pdegs, pus, v));
      auto c = cochain_coords(y);
      if (!c.empty()) {
        B.push_back(c);
        Bx.push_back(y);
      }
    }
  }
  // dim(B cap Z) = dim B + dim Z - dim(B + Z)
  Indexer<Key> cix;
  auto to_row = [&](const std::map<Key, Q>& m) {
    std::map<size_t, Q> r;
    for (auto& [k, q] : m) r[cix.get(k)] = q;
    return make_row(r);
  };
  std::vector<SparseRow> brows, zrows;
  for (auto& b : B) brows.push_back(to_row(b));
  for (auto& z : Z) zrows.push_back(to_row(z));
  size_t ncols = cix.size();
  size_t dB = rank_of(brows, ncols), dZ = rank_of(zrows, ncols);
  std::vector<SparseRow> all = brows;
  all.insert(all.end(), zrows.begin(), zrows.end());
  size_t dBZ = rank_of(all, ncols);
  res.coboundary_dim = dB + dZ - dBZ;
  res.h_dim = long(dZ) - long(res.coboundary_dim);
  // Explicit basis of the intersection: kernel of [B | -Z] read through Z.
  if (res.coboundary_dim > 0) {
    std::vector<std::map<size_t, Q>> cm;
    std::map<size_t, std::map<size_t, Q>> byrow;
    size_t nb = brows.size();
    for (size_t i = 0; i < brows.size(); ++i)
      for (auto& [c, q] : brows[i]) byrow[c][i] = q;
    for (size_t i = 0; i < zrows.size(); ++i)
      for (auto& [c, q] : zrows[i]) byrow[c][nb + i] = -q;
    std::vector<SparseRow> sys;
    for (auto& [c, r] : byrow) sys.push_back(make_row(r));
    Echelon acc(ncols);
    for (auto& v : kernel(sys, nb + zrows.size())) {
      auto x = zero_components(cx, degs);
      std::map<size_t, Q> rr;
      for (size_t i = 0; i < zrows.size(); ++i) {
        if (v[nb + i] == 0) continue;
        for (size_t c = 0; c < x.size(); ++c) x[c] = x[c] + v[nb + i] * res.cocycle_basis[i][c];
        for (auto& [col, q] : zrows[i]) rr[col] += v[nb + i] * q;
      }
      if (acc.add(make_row(rr))) res.coboundary_basis.push_back(x);
    }
  }
  return res;
}

PreimageResult solve_preimage(const ComplexSpec& cx, const std::vector<Cochain>& target, int D) {
  PreimageResult res;
  int n = target.at(0).degree;
  if (n < 1) throw StructuralError("solve_preimage: target degree must be >= 1");
  auto pdegs = component_degrees(cx, n - 1);
  auto pus = enumerate_unknowns(cx, pdegs, D);
  auto cols = columns(cx, pdegs, pus, true);
  Indexer<Key> rix;
  auto tc = cochain_coords(target);
  auto rows = rows_from_columns(cols, rix);
  QVec b(rows.size(), Q(0));
  for (auto& [k, q] : tc) {
    size_t r = rix.get(k);
    if (r >= rows.size()) {
      rows.resize(r + 1);
      b.resize(r + 1, Q(0));
    }
    b[r] = q;
  }
  auto s = solve(rows, b, pus.size());
  if (s.ok) {
    res.found = true;
    res.x = assemble(cx, pdegs, pus, s.x);
    return res;
  }
  size_t support = 0;
  for (auto& y : s.certificate)
    if (y != 0) ++support;
  res.certificate = "combination of " + std::to_string(support) + " of " + std::to_string(rows.size()) +
                    " equations gives 0 = 1 (" + std::to_string(pus.size()) + " unknowns, bound " + std::to_string(D) + ")";
  return res;
}

}  // namespace nlca
