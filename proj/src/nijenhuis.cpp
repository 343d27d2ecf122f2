#include "nlca/nijenhuis.hpp"

#include <random>

#include "nlca/parallel.hpp"

namespace nlca {

NijenhuisLCA NijenhuisLCA::make(LCA l, ConfLinMap N) {
  Report r = check_nijenhuis(l, N);
  if (!r.ok()) throw StructuralError("not a Nijenhuis operator: " + r.checks.back().witness);
  return {std::move(l), std::move(N)};
}

Vec deformed(const LCA& l, const ConfLinMap& N, const Vec& x, const Vec& y, const Poly& Lam) {
  Vec r = l.bracket(N.apply(x), y, Lam);
  add_to(r, l.bracket(x, N.apply(y), Lam));
  sub_from(r, N.apply(l.bracket(x, y, Lam)));
  return r;
}

static void require_endo(const LCA& l, const ConfLinMap& N) {
  if (!(N.src == l.module) || !(N.tgt == l.module)) throw StructuralError("operator is not an endomorphism of the algebra module");
}

Check check_del_linear(const ConfLinMap& f) {
  int n = f.src.rank();
  return check_all("del-linear", n, [&](size_t j) -> std::optional<std::string> {
    if (!f.src.is_eval(int(j))) return std::nullopt;
    Vec d = scaled(f.cols[j], *f.src.eval[j]);
    sub_from(d, reduce(f.tgt, mul(Poly::del(0), f.cols[j])));
    if (is_zero(d)) return std::nullopt;
    return f.src.names[j] + " residual " + to_string(d, f.tgt);
  });
}

Report check_nijenhuis(const LCA& l, const ConfLinMap& N) {
  require_endo(l, N);
  Report rep;
  int n = l.rank();
  if (l.module.has_eval()) rep.add(check_del_linear(N));
  rep.add(check_all("nijenhuis", size_t(n) * n, [&](size_t idx) -> std::optional<std::string> {
    auto t = unflatten(idx, n, 2);
    Poly L = Poly::lam(1, 1);
    Vec a = basis_vec(n, t[0], 1), b = basis_vec(n, t[1], 1);
    Vec r = l.bracket(N.apply(a), N.apply(b), L);
    sub_from(r, N.apply(deformed(l, N, a, b, L)));
    if (is_zero(r)) return std::nullopt;
    return tuple_str(t, l.module.names) + " residual " + to_string(r, l.module);
  }));
  return rep;
}

LCA deformed_bracket(const LCA& l, const ConfLinMap& N) {
  require_endo(l, N);
  LCA d = LCA::zero(l.module);
  int n = l.rank();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      d.table[i][j] = deformed(l, N, basis_vec(n, i, 1), basis_vec(n, j, 1), Poly::lam(1, 1));
  return d;
}

static LCA table_combination(const LCA& a, const LCA& b, const Q& x, const Q& y) {
  LCA r = a;
  for (size_t i = 0; i < r.table.size(); ++i)
    for (size_t j = 0; j < r.table.size(); ++j) {
      r.table[i][j] = scaled(a.table[i][j], x);
      add_to(r.table[i][j], scaled(b.table[i][j], y));
    }
  return r;
}

Report power_compatibility_suite(const NijenhuisLCA& n, int k, int l, unsigned seed) {
  if (k < 0 || k > 3 || l < 0 || l > 3) throw StructuralError("powers must lie in 0..3");
  const LCA& L = n.algebra;
  ConfLinMap Nk = power(n.N, k), Nl = power(n.N, l), Nkl = power(n.N, k + l);
  LCA Bk = deformed_bracket(L, Nk), Bl = deformed_bracket(L, Nl), Bkl = deformed_bracket(L, Nkl);
  Report rep;
  auto one = [](const std::string& name, const Report& r) {
    Check c{name, r.ok(), ""};
    for (auto& x : r.checks)
      if (!x.pass) {
        c.witness = x.name + " " + x.witness;
        break;
      }
    return c;
  };
  rep.add(one("power_nijenhuis", check_nijenhuis(L, Nk)));
  rep.add(one("power_on_deformed", check_nijenhuis(Bk, Nl)));
  LCA iterated = deformed_bracket(Bk, Nl);
  Check eq{"table_identity", true, ""};
  for (int i = 0; i < L.rank() && eq.pass; ++i)
    for (int j = 0; j < L.rank() && eq.pass; ++j)
      if (iterated.table[i][j] != Bkl.table[i][j]) {
        eq.pass = false;
        Vec d = iterated.table[i][j];
        sub_from(d, Bkl.table[i][j]);
        eq.witness = tuple_str({i, j}, L.module.names) + " residual " + to_string(d, L.module);
      }
  rep.add(eq);
  // N^l([p,q]_{N^{k+l}}) = [N^l p, N^l q]_{N^k}
  rep.add(one("power_morphism", check_morphism(Bkl, Bk, Nl)));
  Report sum = check_lca(table_combination(Bk, Bl, 1, 1));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-5, 5);
  Q x = coef(rng), y = coef(rng);
  if (x == 0) x = 2;
  if (y == 0) y = -3;
  Report comb = check_lca(table_combination(Bk, Bl, x, y));
  Check c = one("compatible", sum);
  if (c.pass && !comb.ok()) c = one("compatible", comb);
  rep.add(c);
  rep.note("combination", x.get_str() + "," + y.get_str());
  return rep;
}

Report check_nij_representation(const NijenhuisLCA& n, const NijenhuisRep& r) {
  if (!(r.rep.algebra.module == n.algebra.module)) throw StructuralError("representation of a different algebra");
  if (!(r.NM.src == r.rep.module) || !(r.NM.tgt == r.rep.module)) throw StructuralError("N_M is not an endomorphism of the module");
  Report rep;
  int a = n.algebra.rank(), m = r.rep.module.rank();
  rep.add(check_all("nij_rep", size_t(a) * m, [&](size_t idx) -> std::optional<std::string> {
    int i = int(idx / m), j = int(idx % m);
    Poly L = Poly::lam(1, 1);
    Vec p = basis_vec(a, i, 1), x = basis_vec(m, j, 1);
    Vec Np = n.N.apply(p);
    Vec lhs = r.rep.apply(Np, r.NM.apply(x), L);
    Vec inner = r.rep.apply(Np, x, L);
    add_to(inner, r.rep.apply(p, r.NM.apply(x), L));
    sub_from(inner, r.NM.apply(r.rep.apply(p, x, L)));
    sub_from(lhs, r.NM.apply(inner));
    if (is_zero(lhs)) return std::nullopt;
    return "(" + n.algebra.module.names[i] + "," + r.rep.module.names[j] + ") residual " + to_string(lhs, r.rep.module);
  }));
  return rep;
}

RepTable induced_rep(const NijenhuisLCA& n, const NijenhuisRep& r, int k) {
  ConfLinMap Nk = power(n.N, k), NMk = power(r.NM, k);
  RepTable out{deformed_bracket(n.algebra, Nk), r.rep.module, zero_table(n.algebra.rank(), r.rep.module.rank())};
  int a = n.algebra.rank(), m = r.rep.module.rank();
  Poly L = Poly::lam(1, 1);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < m; ++j) {
      Vec p = basis_vec(a, i, 1), x = basis_vec(m, j, 1);
      Vec v = r.rep.apply(Nk.apply(p), x, L);
      add_to(v, r.rep.apply(p, NMk.apply(x), L));
      sub_from(v, NMk.apply(r.rep.apply(p, x, L)));
      out.action[i][j] = v;
    }
  return out;
}

NijenhuisLCA nij_semidirect(const NijenhuisLCA& n, const NijenhuisRep& r) {
  if (!check_nij_representation(n, r).ok()) throw StructuralError("nij_semidirect: not a Nijenhuis representation");
  if (!check_representation(r.rep).ok()) throw StructuralError("nij_semidirect: not a representation");
  return NijenhuisLCA::make(semidirect(r.rep), direct_sum(n.N, r.NM));
}

}  // namespace nlca
