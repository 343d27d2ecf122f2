#include "nlca/deformation.hpp"

#include "nlca/parallel.hpp"

namespace nlca {

DeformationSeries DeformationSeries::make(NijenhuisLCA base, std::vector<ConfLinMap> terms) {
  for (auto& t : terms)
    if (!(t.src == base.algebra.module) || !(t.tgt == base.algebra.module))
      throw StructuralError("deformation terms must be endomorphisms of the base module");
  return {std::move(base), std::move(terms)};
}

namespace {

// Residual of the order-n equation at basis pair (a, b).
Vec order_residual(const DeformationSeries& s, int n, int a, int b) {
  const LCA& l = s.base.algebra;
  int r = l.rank();
  Poly L = Poly::lam(1, 1);
  Vec p = basis_vec(r, a, 1), q = basis_vec(r, b, 1);
  Vec out = zero_vec(r, 1);
  for (int i = 0; i <= n; ++i) {
    const ConfLinMap& Ni = s.term(i);
    const ConfLinMap& Nj = s.term(n - i);
    add_to(out, l.bracket(Ni.apply(p), Nj.apply(q), L));
    Vec inner = l.bracket(Nj.apply(p), q, L);
    add_to(inner, l.bracket(p, Nj.apply(q), L));
    sub_from(inner, Nj.apply(l.bracket(p, q, L)));
    sub_from(out, Ni.apply(inner));
  }
  return reduce(l.module, out);
}

}  // namespace

Report check_order(const DeformationSeries& s) {
  Report rep;
  int r = s.base.algebra.rank();
  for (int n = 0; n <= s.order(); ++n)
    rep.add(check_all("order" + std::to_string(n), size_t(r) * r, [&](size_t idx) -> std::optional<std::string> {
      auto t = unflatten(idx, r, 2);
      Vec res = order_residual(s, n, t[0], t[1]);
      if (is_zero(res)) return std::nullopt;
      return tuple_str(t, s.base.algebra.module.names) + " residual " + to_string(res, s.base.algebra.module);
    }));
  return rep;
}

Report infinitesimal_cocycle(const DeformationSeries& s) {
  if (s.order() < 1) return precondition("infinitesimal_cocycle needs order >= 1");
  Report rep;
  Cochain d = apply_dN(from_map(s.terms[0]), s.base);
  Check c{"cocycle", d.is_zero(), ""};
  if (!c.pass) c.witness = first_difference(d, Cochain::zero(2, d.src, d.tgt));
  rep.add(c);
  auto ord = check_order(s);
  bool agree = ord.passed("order1") == c.pass;
  rep.add({"agrees_with_order1", agree, agree ? "" : "order1 " + std::string(ord.passed("order1") ? "passes" : "fails")});
  return rep;
}

ObstructionResult obstruction(const DeformationSeries& s, int D) {
  ObstructionResult res;
  const LCA& l = s.base.algebra;
  int k = s.order();
  res.ob = Cochain::zero(2, l.module, l.module);
  auto ord = check_order(s);
  if (!ord.ok()) {
    res.report = precondition("deformation fails its order equations");
    res.report.merge(ord);
    return res;
  }
  for (int i = 1; i <= k; ++i) {
    int j = k + 1 - i;
    if (j < 1 || j > k) continue;
    res.ob = res.ob + fn_bracket(from_map(s.term(i)), from_map(s.term(j)), l);
  }
  res.ob = Q(-1, 2) * res.ob;
  Cochain d = apply_dN(res.ob, s.base);
  Check c{"cocycle", d.is_zero(), ""};
  if (!c.pass) c.witness = first_difference(d, Cochain::zero(3, d.src, d.tgt));
  res.report.add(c);
  if (D >= 0) {
    auto pre = solve_preimage(dn_complex(s.base, NijenhuisRep::adjoint(s.base)), {res.ob}, D);
    std::string tag = "@" + std::to_string(D);
    if (pre.found) {
      res.next = to_map(pre.x.at(0));
      res.status = "extensible" + tag;
      // The extended series must satisfy the next order equation.
      auto terms = s.terms;
      terms.push_back(*res.next);
      auto ext = check_order(DeformationSeries{s.base, terms});
      res.report.add({"extension_order", ext.ok(), ext.ok() ? "" : ext.str()});
    } else {
      res.status = "obstructed" + tag;
      res.report.note("certificate", pre.certificate);
    }
    res.report.note("extensibility", res.status);
  }
  return res;
}

Report verify_equivalence_order1(const DeformationSeries& a, const DeformationSeries& b, const Vec& p) {
  if (!(a.base.algebra.module == b.base.algebra.module) || !(a.base.N == b.base.N))
    return precondition("series over different bases");
  if (a.order() < 1 || b.order() < 1) return precondition("both series need order >= 1");
  const FreeModule& m = a.base.algebra.module;
  Cochain lhs = from_map(a.terms[0] - b.terms[0]);
  Cochain rhs = apply_dN(from_elem(p, m, m), a.base);
  Report rep;
  rep.add({"equivalence", lhs == rhs, first_difference(lhs, rhs)});
  return rep;
}

std::optional<Vec> find_equivalence_order1(const DeformationSeries& a, const DeformationSeries& b, int D) {
  if (a.order() < 1 || b.order() < 1) throw StructuralError("both series need order >= 1");
  Cochain diff = from_map(a.terms[0] - b.terms[0]);
  auto pre = solve_preimage(dn_complex(a.base, NijenhuisRep::adjoint(a.base)), {diff}, D);
  if (!pre.found) return std::nullopt;
  return pre.x.at(0).vals.at(0);
}

}  // namespace nlca
