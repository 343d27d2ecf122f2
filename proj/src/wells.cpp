#include "nlca/wells.hpp"

#include "nlca/parallel.hpp"

namespace nlca {

namespace {

Check map_equal(const std::string& name, const ConfLinMap& a, const ConfLinMap& b) {
  Check c{name, a == b, ""};
  if (c.pass) return c;
  for (int j = 0; j < a.src.rank(); ++j)
    if (a.cols[j] != b.cols[j]) {
      Vec d = a.cols[j];
      c.witness = a.src.names[j] + " residual " + to_string(sub_from(d, b.cols[j]), a.tgt);
      break;
    }
  return c;
}

std::optional<std::string> residual(const Vec& r, const FreeModule& m, const std::string& where) {
  if (is_zero(r)) return std::nullopt;
  return where + " residual " + to_string(r, m);
}

bool is_abelian(const LCA& l) {
  for (auto& row : l.table)
    for (auto& v : row)
      if (!is_zero(v)) return false;
  return true;
}

ConfLinMap inverse_or_throw(const ConfLinMap& f, const char* what) {
  auto r = inverse(f);
  if (!r) throw StructuralError(std::string(what) + " is not invertible over Q[del]");
  return *r;
}

// A second section s' = s - inc t with t(p_j) = h_(j mod rank H).
ConfLinMap alt_shift(const ExtensionData& ext) {
  const FreeModule &L = ext.quot.algebra.module, &H = ext.sub.algebra.module;
  ConfLinMap t = ConfLinMap::zero(L, H);
  if (H.rank() == 0) return t;
  for (int j = 0; j < L.rank(); ++j) t.cols[j] = reduce(H, basis_vec(H.rank(), j % H.rank(), 0));
  return t;
}

struct Decision {
  std::string status;
  std::optional<ConfLinMap> tau;
  std::string certificate;
};

Decision decide(const NonAbelianCocycle& ct, const NonAbelianCocycle& c, const NijenhuisLCA& L,
                const NijenhuisLCA& H, int D, const std::vector<ConfLinMap>& candidates) {
  Decision d;
  if (is_abelian(H.algebra) && !L.algebra.module.has_eval()) {
    auto sol = solve_equivalence(ct, c, L, H, D);
    std::string at = "@" + std::to_string(sol.bound);
    if (sol.status == Status::Pass) {
      d.status = "zero" + at;
      d.tau = sol.tau;
    } else {
      d.status = sol.certified ? "nonzero-certified" : "nonzero" + at;
      d.certificate = sol.certificate;
    }
    return d;
  }
  std::vector<ConfLinMap> cands{ConfLinMap::zero(L.algebra.module, H.algebra.module)};
  cands.insert(cands.end(), candidates.begin(), candidates.end());
  for (auto& t : cands)
    if (cocycle_equivalence(ct, c, t, L, H).ok()) {
      d.status = "zero@candidate";
      d.tau = t;
      return d;
    }
  d.status = "undecided";
  return d;
}

}  // namespace

AutomorphismPair compose(const AutomorphismPair& p2, const AutomorphismPair& p1) {
  return {p2.alpha * p1.alpha, p2.beta * p1.beta};
}

bool operator==(const AutomorphismPair& a, const AutomorphismPair& b) { return a.alpha == b.alpha && a.beta == b.beta; }

Report check_automorphism_pair(const AutomorphismPair& pr, const NijenhuisLCA& L, const NijenhuisLCA& H) {
  Report rep;
  const FreeModule &Lm = L.algebra.module, &Hm = H.algebra.module;
  bool shapes = pr.alpha.src == Hm && pr.alpha.tgt == Hm && pr.beta.src == Lm && pr.beta.tgt == Lm;
  rep.add({"shapes", shapes, shapes ? "" : "alpha must act on H and beta on L"});
  if (!shapes) return rep;
  bool ai = inverse(pr.alpha).has_value(), bi = inverse(pr.beta).has_value();
  rep.add({"alpha_invertible", ai, ai ? "" : "determinant is not a nonzero constant"});
  rep.add({"beta_invertible", bi, bi ? "" : "determinant is not a nonzero constant"});
  rep.merge(check_morphism(H.algebra, H.algebra, pr.alpha), "alpha_");
  rep.merge(check_morphism(L.algebra, L.algebra, pr.beta), "beta_");
  rep.add(map_equal("alpha_Q", pr.alpha * H.N, H.N * pr.alpha));
  rep.add(map_equal("beta_N", pr.beta * L.N, L.N * pr.beta));
  return rep;
}

Report check_aut_H(const ExtensionData& ext, const ConfLinMap& g) {
  Report rep;
  const FreeModule& E = ext.total.algebra.module;
  bool shapes = g.src == E && g.tgt == E;
  rep.add({"shapes", shapes, shapes ? "" : "gamma must act on E"});
  if (!shapes) return rep;
  rep.merge(check_morphism(ext.total.algebra, ext.total.algebra, g), "morphism_");
  rep.add(map_equal("operator", g * ext.total.N, ext.total.N * g));
  ConfLinMap zero = ConfLinMap::zero(ext.sub.algebra.module, ext.quot.algebra.module);
  rep.add(map_equal("preserves_H", ext.proj * g * ext.inc, zero));
  auto gi = inverse(g);
  rep.add({"invertible", gi.has_value(), gi ? "" : "determinant is not a nonzero constant"});
  if (gi) rep.add(map_equal("inverse_preserves_H", ext.proj * *gi * ext.inc, zero));
  return rep;
}

AutomorphismPair induced_pair(const ExtensionData& ext, const ConfLinMap& g) {
  Report r = check_aut_H(ext, g);
  if (!r.ok()) throw StructuralError("induced_pair: gamma is not in Aut_H(E_R)\n" + r.str());
  auto ret = retraction(ext.inc);
  if (!ret) throw StructuralError("induced_pair: inc has no retraction");
  return {*ret * g * ext.inc, ext.proj * g * ext.section};
}

NonAbelianCocycle transform_cocycle(const NonAbelianCocycle& c, const AutomorphismPair& pr, const NijenhuisLCA& L,
                                    const NijenhuisLCA& H) {
  ConfLinMap ai = inverse_or_throw(pr.alpha, "alpha"), bi = inverse_or_throw(pr.beta, "beta");
  const FreeModule& Hm = H.algebra.module;
  int a = L.algebra.rank(), b = H.algebra.rank();
  Poly lam = Poly::lam(1, 1);
  NonAbelianCocycle out = zero_cocycle(L, H);
  for (int i = 0; i < a; ++i) {
    Vec pi = bi.apply(basis_vec(a, i, 1));
    for (int j = 0; j < a; ++j)
      out.chi[i][j] = pr.alpha.apply(act(c.chi, Hm, pi, bi.apply(basis_vec(a, j, 1)), lam), 1);
    for (int k = 0; k < b; ++k)
      out.rho[i][k] = pr.alpha.apply(act(c.rho, Hm, pi, ai.apply(basis_vec(b, k, 1), 1), lam), 1);
  }
  out.phi = pr.alpha * c.phi * bi;
  return out;
}

WellsResult wells_obstruction(const ExtensionData& ext, const AutomorphismPair& pr, int D,
                              const std::vector<ConfLinMap>& candidates) {
  WellsResult w;
  const NijenhuisLCA &L = ext.quot, &H = ext.sub;
  Report pre = check_automorphism_pair(pr, L, H);
  if (!pre.ok()) {
    w.class_status = "precondition";
    w.report = precondition("(alpha, beta) is not a pair of Nijenhuis automorphisms");
    w.report.merge(pre, "pair_");
    w.report.status = Status::Precondition;
    return w;
  }
  w.original = extract_cocycle(ext);
  w.transformed = transform_cocycle(w.original, pr, L, H);
  Decision d = decide(w.transformed, w.original, L, H, D, candidates);
  w.class_status = d.status;
  w.tau = d.tau;
  w.report.note("class", d.status);
  if (!d.certificate.empty()) w.report.note("certificate", d.certificate);

  // Same question with the second section s' = s - inc t.
  ConfLinMap t = alt_shift(ext);
  if (!t.is_zero()) {
    auto ext2 = with_section(ext, ext.section - ext.inc * t);
    auto c2 = extract_cocycle(ext2);
    auto ct2 = transform_cocycle(c2, pr, L, H);
    // transferred candidate: ct2 ~ ct ~ c ~ c2
    std::vector<ConfLinMap> cands2 = candidates;
    if (d.tau) cands2.push_back(*d.tau + t - pr.alpha * t * inverse_or_throw(pr.beta, "beta"));
    Decision d2 = decide(ct2, c2, L, H, D, cands2);
    bool same = d2.status == d.status;
    w.report.add({"section_independent", same, same ? "" : "second section gives " + d2.status});
  }
  if (d.tau) w.report.add(Check{"tau_verified", cocycle_equivalence(w.transformed, w.original, *d.tau, L, H).ok(), ""});
  if (w.report.status == Status::Pass && !w.zero()) w.report.status = Status::Infeasible;
  return w;
}

Report verify_inducing_map(const ExtensionData& ext, const AutomorphismPair& pr, const ConfLinMap& eta) {
  const NijenhuisLCA &Ln = ext.quot, &Hn = ext.sub;
  Report pre = check_automorphism_pair(pr, Ln, Hn);
  if (!pre.ok()) {
    Report r = precondition("(alpha, beta) is not a pair of Nijenhuis automorphisms");
    r.merge(pre, "pair_");
    r.status = Status::Precondition;
    return r;
  }
  auto c = extract_cocycle(ext);
  const FreeModule &L = Ln.algebra.module, &H = Hn.algebra.module;
  int a = L.rank(), b = H.rank();
  Poly l = Poly::lam(1, 1), d = Poly::del(1);
  auto chi = [&](const Vec& p, const Vec& q, const Poly& x) { return act(c.chi, H, p, q, x); };
  auto rho = [&](const Vec& p, const Vec& h, const Poly& x) { return act(c.rho, H, p, h, x); };
  Report rep;
  rep.add(check_all("rho_compat", size_t(a) * b, [&](size_t idx) {
    int i = int(idx) / b, k = int(idx) % b;
    Vec p = basis_vec(a, i, 1), h = basis_vec(b, k, 1);
    Vec ah = pr.alpha.apply(h, 1);
    Vec r = pr.alpha.apply(rho(p, h, l), 1);
    sub_from(r, rho(pr.beta.apply(p, 1), ah, l));
    sub_from(r, Hn.algebra.bracket(eta.apply(p, 1), ah, l));
    return residual(r, H, "(" + L.names[i] + "," + H.names[k] + ")");
  }));
  rep.add(check_all("chi_compat", size_t(a) * a, [&](size_t idx) {
    int i = int(idx) / a, j = int(idx) % a;
    Vec p = basis_vec(a, i, 1), q = basis_vec(a, j, 1);
    Vec bp = pr.beta.apply(p, 1), bq = pr.beta.apply(q, 1), ep = eta.apply(p, 1), eq = eta.apply(q, 1);
    Vec r = pr.alpha.apply(chi(p, q, l), 1);
    sub_from(r, chi(bp, bq, l));
    sub_from(r, rho(bp, eq, l));
    add_to(r, rho(bq, ep, -d - l));
    add_to(r, eta.apply(Ln.algebra.bracket(p, q, l), 1));
    sub_from(r, Hn.algebra.bracket(ep, eq, l));
    return residual(r, H, "(" + L.names[i] + "," + L.names[j] + ")");
  }));
  rep.add(map_equal("phi_compat", pr.alpha * c.phi - c.phi * pr.beta, Hn.N * eta - eta * Ln.N));
  return rep;
}

InduceResult lift(const ExtensionData& ext, const AutomorphismPair& pr, const ConfLinMap& eta) {
  InduceResult out;
  out.eta = eta;
  out.report.merge(verify_inducing_map(ext, pr, eta), "verify_");
  if (out.report.status == Status::Precondition) {
    out.status = Status::Precondition;
    return out;
  }
  auto r = retraction(ext.inc);
  const FreeModule& E = ext.total.algebra.module;
  const ConfLinMap &s = ext.section, &inc = ext.inc, &proj = ext.proj;
  ConfLinMap g = s * pr.beta * proj + inc * pr.alpha * *r * (ConfLinMap::identity(E) - s * proj) + inc * eta * proj;
  out.gamma = g;
  Report aut = check_aut_H(ext, g);
  out.report.merge(aut, "aut_");
  if (aut.ok()) {
    bool same = induced_pair(ext, g) == pr;
    out.report.add({"induces_pair", same, same ? "" : "Pi(gamma) differs from (alpha, beta)"});
  }
  out.status = out.report.ok() ? Status::Pass : Status::Fail;
  return out;
}

InduceResult solve_inducing_map(const ExtensionData& ext, const AutomorphismPair& pr, int D) {
  InduceResult out;
  const NijenhuisLCA &L = ext.quot, &H = ext.sub;
  if (!is_abelian(H.algebra)) {
    out.status = Status::Unsupported;
    out.report.status = Status::Unsupported;
    out.report.note("reason", "SOLVE needs an abelian H; use VERIFY or LIFT with a given eta");
    return out;
  }
  Report pre = check_automorphism_pair(pr, L, H);
  if (!pre.ok()) {
    out.status = Status::Precondition;
    out.report = precondition("(alpha, beta) is not a pair of Nijenhuis automorphisms");
    out.report.merge(pre, "pair_");
    out.report.status = Status::Precondition;
    return out;
  }
  auto c = extract_cocycle(ext);
  auto sol = solve_equivalence(transform_cocycle(c, pr, L, H), c, L, H, D);
  out.report.note("bound", std::to_string(sol.bound));
  if (sol.status != Status::Pass) {
    out.status = Status::Infeasible;
    out.report.status = Status::Infeasible;
    out.report.note("certificate", sol.certificate);
    out.report.note("certified", sol.certified ? "yes" : "no");
    return out;
  }
  // eta = tau beta
  InduceResult l = lift(ext, pr, *sol.tau * pr.beta);
  l.report.info.insert(l.report.info.begin(), out.report.info.begin(), out.report.info.end());
  return l;
}

Report wells_sequence_check(const ExtensionData& ext, const std::vector<ConfLinMap>& gammas,
                            const std::vector<AutomorphismPair>& pairs, int D) {
  Report rep;
  auto r = retraction(ext.inc);
  const FreeModule &L = ext.quot.algebra.module, &H = ext.sub.algebra.module;
  AutomorphismPair id{ConfLinMap::identity(H), ConfLinMap::identity(L)};
  std::vector<std::optional<AutomorphismPair>> pis;
  for (size_t k = 0; k < gammas.size(); ++k) {
    std::string tag = "gamma" + std::to_string(k);
    Report aut = check_aut_H(ext, gammas[k]);
    rep.add({tag + "_aut_H", aut.ok(), aut.ok() ? "" : aut.str()});
    if (!aut.ok()) {
      pis.emplace_back();
      continue;
    }
    auto pi = induced_pair(ext, gammas[k]);
    pis.push_back(pi);
    if (pi == id) {
      // kernel of Pi: gamma(s p + h) = s p + h + eta p
      ConfLinMap eta = *r * (gammas[k] * ext.section - ext.section);
      bool shear_ok = gammas[k] == shear(ext, eta) && verify_inducing_map(ext, id, eta).ok();
      rep.add({tag + "_kernel", shear_ok, shear_ok ? "" : "Pi(gamma) = (Id, Id) but gamma is not a shear"});
      rep.note(tag, "kernel");
    } else {
      auto w = wells_obstruction(ext, pi, D);
      rep.add({tag + "_image_unobstructed", w.zero(), w.zero() ? "" : "Wells class " + w.class_status});
      rep.note(tag, "image, class " + w.class_status);
    }
  }
  for (size_t k = 0; k + 1 < gammas.size(); ++k) {
    if (!pis[k] || !pis[k + 1]) continue;
    bool hom = induced_pair(ext, gammas[k] * gammas[k + 1]) == compose(*pis[k], *pis[k + 1]);
    rep.add({"homomorphism" + std::to_string(k), hom, hom ? "" : "Pi(g1 g2) != Pi(g1) Pi(g2)"});
  }
  for (size_t k = 0; k < pairs.size(); ++k) {
    std::string tag = "pair" + std::to_string(k);
    auto w = wells_obstruction(ext, pairs[k], D);
    if (w.class_status == "precondition") {
      rep.add({tag + "_valid", false, "not a pair of Nijenhuis automorphisms"});
      continue;
    }
    if (!is_abelian(ext.sub.algebra)) {
      rep.note(tag, w.class_status);
      continue;
    }
    auto s = solve_inducing_map(ext, pairs[k], D);
    bool ind = s.status == Status::Pass;
    bool agree = w.zero() == ind && (s.status == Status::Pass || s.status == Status::Infeasible);
    rep.add({tag + "_obstruction_vs_inducible", agree,
             agree ? "" : "class " + w.class_status + " but solve status " + status_name(s.status)});
    rep.note(tag, w.class_status + (ind ? ", inducible" : ", not inducible"));
  }
  return rep;
}

}  // namespace nlca
