#include "nlca/extension.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "nlca/linalg.hpp"
#include "nlca/parallel.hpp"

namespace nlca {

namespace {

Table sized_table(int rows, int cols, int tgt) {
  Table t(rows);
  for (auto& r : t) r.assign(cols, zero_vec(tgt, 1));
  return t;
}

std::optional<std::string> residual(const Vec& r, const FreeModule& m, const std::string& where) {
  if (is_zero(r)) return std::nullopt;
  return where + " residual " + to_string(r, m);
}

std::string names(std::initializer_list<std::pair<int, const FreeModule*>> t) {
  std::string s = "(";
  bool first = true;
  for (auto& [i, m] : t) {
    s += (first ? "" : ",") + m->names[i];
    first = false;
  }
  return s + ")";
}

Check map_equal(const std::string& name, const ConfLinMap& a, const ConfLinMap& b) {
  Check c{name, true, ""};
  if (a == b) return c;
  c.pass = false;
  for (int j = 0; j < a.src.rank(); ++j)
    if (a.cols[j] != b.cols[j]) {
      Vec d = a.cols[j];
      c.witness = a.src.names[j] + " residual " + to_string(sub_from(d, b.cols[j]), a.tgt);
      break;
    }
  return c;
}

// Evaluation of the cocycle data at general arguments.
struct Ops {
  const NonAbelianCocycle& c;
  const NijenhuisLCA &L, &H;
  const FreeModule& Hm() const { return H.algebra.module; }
  Vec chi(const Vec& p, const Vec& q, const Poly& lam) const { return act(c.chi, Hm(), p, q, lam); }
  Vec rho(const Vec& p, const Vec& h, const Poly& lam) const { return act(c.rho, Hm(), p, h, lam); }
  Vec hb(const Vec& h, const Vec& k, const Poly& lam) const { return H.algebra.bracket(h, k, lam); }
  Vec lb(const Vec& p, const Vec& q, const Poly& lam) const { return L.algebra.bracket(p, q, lam); }
  Vec phi(const Vec& p, int ar) const { return c.phi.apply(p, ar); }
  Vec N(const Vec& p, int ar) const { return L.N.apply(p, ar); }
  Vec Q(const Vec& h, int ar) const { return H.N.apply(h, ar); }
};

}  // namespace

std::optional<ConfLinMap> retraction(const ConfLinMap& inc) {
  int h = inc.src.rank(), e = inc.tgt.rank();
  if (h > e) return std::nullopt;
  if (h == 0) return ConfLinMap::zero(inc.tgt, inc.src);
  // Try row subsets in lexicographic order; ranks are small.
  std::vector<int> rows(h);
  for (int i = 0; i < h; ++i) rows[i] = i;
  while (true) {
    ConfLinMap sq = ConfLinMap::zero(inc.src, inc.src);
    for (int j = 0; j < h; ++j)
      for (int k = 0; k < h; ++k) sq.cols[j][k] = inc.cols[j][rows[k]];
    if (auto inv = inverse(sq)) {
      ConfLinMap r = ConfLinMap::zero(inc.tgt, inc.src);
      for (int k = 0; k < h; ++k) r.cols[rows[k]] = inv->cols[k];
      if (r * inc == ConfLinMap::identity(inc.src)) return r;
    }
    int i = h - 1;
    while (i >= 0 && rows[i] == e - h + i) --i;
    if (i < 0) break;
    ++rows[i];
    for (int k = i + 1; k < h; ++k) rows[k] = rows[k - 1] + 1;
  }
  return std::nullopt;
}

Report check_extension_data(const ExtensionData& x) {
  Report rep;
  const FreeModule &E = x.total.algebra.module, &H = x.sub.algebra.module, &L = x.quot.algebra.module;
  bool shapes = x.inc.src == H && x.inc.tgt == E && x.proj.src == E && x.proj.tgt == L && x.section.src == L &&
                x.section.tgt == E;
  rep.add({"shapes", shapes, shapes ? "" : "inc, proj or section has the wrong modules"});
  if (!shapes) {
    rep.status = Status::Fail;
    return rep;
  }
  rep.merge(check_lca(x.total.algebra), "total_");
  rep.merge(check_nijenhuis(x.total.algebra, x.total.N), "total_nijenhuis_");
  rep.merge(check_lca(x.sub.algebra), "sub_");
  rep.merge(check_nijenhuis(x.sub.algebra, x.sub.N), "sub_nijenhuis_");
  rep.merge(check_lca(x.quot.algebra), "quot_");
  rep.merge(check_nijenhuis(x.quot.algebra, x.quot.N), "quot_nijenhuis_");
  rep.merge(check_morphism(x.sub.algebra, x.total.algebra, x.inc), "inc_");
  rep.merge(check_morphism(x.total.algebra, x.quot.algebra, x.proj), "proj_");
  rep.add(map_equal("proj_inc", x.proj * x.inc, ConfLinMap::zero(H, L)));
  rep.add(map_equal("proj_section", x.proj * x.section, ConfLinMap::identity(L)));
  bool inj = retraction(x.inc).has_value();
  rep.add({"inc_split_injective", inj, inj ? "" : "no unit maximal minor"});
  bool rk = E.rank() == H.rank() + L.rank();
  rep.add({"rank", rk, rk ? "" : "rank E != rank H + rank L"});
  rep.add(map_equal("R_inc", x.total.N * x.inc, x.inc * x.sub.N));
  rep.add(map_equal("proj_R", x.proj * x.total.N, x.quot.N * x.proj));
  return rep;
}

ExtensionData with_section(const ExtensionData& ext, const ConfLinMap& s) {
  ExtensionData r = ext;
  r.section = s;
  return r;
}

NonAbelianCocycle zero_cocycle(const NijenhuisLCA& L, const NijenhuisLCA& H) {
  int a = L.algebra.rank(), b = H.algebra.rank();
  return {sized_table(a, a, b), sized_table(a, b, b), ConfLinMap::zero(L.algebra.module, H.algebra.module)};
}

std::string to_string(const NonAbelianCocycle& c, const NijenhuisLCA& L, const NijenhuisLCA& H) {
  const FreeModule &Lm = L.algebra.module, &Hm = H.algebra.module;
  std::string s;
  for (int i = 0; i < Lm.rank(); ++i)
    for (int j = 0; j < Lm.rank(); ++j)
      if (!is_zero(c.chi[i][j])) s += "chi" + names({{i, &Lm}, {j, &Lm}}) + " = " + to_string(c.chi[i][j], Hm) + "\n";
  for (int i = 0; i < Lm.rank(); ++i)
    for (int k = 0; k < Hm.rank(); ++k)
      if (!is_zero(c.rho[i][k])) s += "rho" + names({{i, &Lm}, {k, &Hm}}) + " = " + to_string(c.rho[i][k], Hm) + "\n";
  for (int i = 0; i < Lm.rank(); ++i)
    if (!is_zero(c.phi.cols[i])) s += "phi(" + Lm.names[i] + ") = " + to_string(c.phi.cols[i], Hm) + "\n";
  return s.empty() ? "0\n" : s;
}

NonAbelianCocycle extract_cocycle(const ExtensionData& x) {
  Report inv = check_extension_data(x);
  if (!inv.ok()) throw StructuralError("extract_cocycle: invalid extension data\n" + inv.str());
  auto r = retraction(x.inc);
  const FreeModule &E = x.total.algebra.module, &H = x.sub.algebra.module, &L = x.quot.algebra.module;
  int a = L.rank(), b = H.rank();
  auto to_h = [&](const Vec& v, int ar, const std::string& what) {
    Vec h = r->apply(v, ar);
    if (!is_zero(x.proj.apply(v, ar)) || x.inc.apply(h, ar) != v)
      throw StructuralError("extract_cocycle: " + what + " escapes H: " + to_string(v, E));
    return h;
  };
  NonAbelianCocycle c = zero_cocycle(x.quot, x.sub);
  Poly lam = Poly::lam(1, 1);
  for (int i = 0; i < a; ++i) {
    Vec si = x.section.apply(basis_vec(a, i, 1));
    for (int j = 0; j < a; ++j) {
      Vec v = x.total.algebra.bracket(si, x.section.apply(basis_vec(a, j, 1)), lam);
      sub_from(v, x.section.apply(x.quot.algebra.bracket(basis_vec(a, i, 1), basis_vec(a, j, 1), lam)));
      c.chi[i][j] = to_h(v, 1, "chi" + names({{i, &L}, {j, &L}}));
    }
    for (int k = 0; k < b; ++k) {
      Vec v = x.total.algebra.bracket(si, x.inc.apply(basis_vec(b, k, 1), 1), lam);
      c.rho[i][k] = to_h(v, 1, "rho" + names({{i, &L}, {k, &H}}));
    }
    Vec s0 = x.section.cols[i];
    Vec v = x.total.N.apply(s0, 0);
    sub_from(v, x.section.apply(x.quot.N.cols[i], 0));
    c.phi.cols[i] = to_h(v, 0, "phi(" + L.names[i] + ")");
  }
  return c;
}

Report check_nonabelian_cocycle(const NonAbelianCocycle& c, const NijenhuisLCA& Ln, const NijenhuisLCA& Hn) {
  Ops o{c, Ln, Hn};
  const FreeModule &L = Ln.algebra.module, &H = Hn.algebra.module;
  int a = L.rank(), b = H.rank();
  Report rep;
  auto bv = [](int r, int i, int ar) { return basis_vec(r, i, ar); };

  Poly l1 = Poly::lam(1, 1), d1 = Poly::del(1);
  rep.add(check_all("chi_skew", size_t(a) * a, [&](size_t idx) {
    int i = int(idx) / a, j = int(idx) % a;
    Vec r = o.chi(bv(a, i, 1), bv(a, j, 1), l1);
    add_to(r, o.chi(bv(a, j, 1), bv(a, i, 1), -d1 - l1));
    return residual(r, H, names({{i, &L}, {j, &L}}));
  }));

  Poly l = Poly::lam(1, 2), m = Poly::lam(2, 2), d = Poly::del(2);
  // E's Jacobi identity on (p, h, k): rho(p) acts by derivations of [.]_H.
  rep.add(check_all("rho_derivation", size_t(a) * b * b, [&](size_t idx) {
    int i = int(idx / (size_t(b) * b)), j = int(idx / b % b), k = int(idx % b);
    Vec p = bv(a, i, 2), h = bv(b, j, 2), q = bv(b, k, 2);
    Vec r = o.rho(p, o.hb(h, q, m), l);
    sub_from(r, o.hb(o.rho(p, h, l), q, l + m));
    sub_from(r, o.hb(h, o.rho(p, q, l), m));
    return residual(r, H, names({{i, &L}, {j, &H}, {k, &H}}));
  }));
  rep.add(check_all("2cocycle1", size_t(a) * a * b, [&](size_t idx) {
    int i = int(idx / (size_t(a) * b)), j = int(idx / b % a), k = int(idx % b);
    Vec p = bv(a, i, 2), q = bv(a, j, 2), h = bv(b, k, 2);
    Vec r = o.rho(p, o.rho(q, h, m), l);
    sub_from(r, o.rho(q, o.rho(p, h, l), m));
    sub_from(r, o.rho(o.lb(p, q, l), h, l + m));
    sub_from(r, o.hb(o.chi(p, q, l), h, l + m));
    return residual(r, H, names({{i, &L}, {j, &L}, {k, &H}}));
  }));
  // H-component of E's Jacobi identity on (s p, s q, s r).
  rep.add(check_all("2cocycle2", size_t(a) * a * a, [&](size_t idx) {
    auto t = unflatten(idx, a, 3);
    Vec p = bv(a, t[0], 2), q = bv(a, t[1], 2), s = bv(a, t[2], 2);
    Vec r = o.rho(p, o.chi(q, s, m), l);
    sub_from(r, o.rho(q, o.chi(p, s, l), m));
    add_to(r, o.rho(s, o.chi(p, q, l), -d - l - m));
    add_to(r, o.chi(p, o.lb(q, s, m), l));
    sub_from(r, o.chi(q, o.lb(p, s, l), m));
    sub_from(r, o.chi(o.lb(p, q, l), s, l + m));
    return residual(r, H, names({{t[0], &L}, {t[1], &L}, {t[2], &L}}));
  }));

  rep.add(check_all("E1", size_t(a) * b, [&](size_t idx) {
    int i = int(idx) / b, k = int(idx) % b;
    Vec p = bv(a, i, 1), h = bv(b, k, 1);
    Vec Np = o.N(p, 1), Qh = o.Q(h, 1), Ph = o.phi(p, 1);
    Vec inner = o.rho(Np, h, l1);
    add_to(inner, o.rho(p, Qh, l1));
    sub_from(inner, o.Q(o.rho(p, h, l1), 1));
    add_to(inner, o.hb(Ph, h, l1));
    Vec r = o.rho(Np, Qh, l1);
    sub_from(r, o.Q(inner, 1));
    add_to(r, o.hb(Ph, Qh, l1));
    return residual(r, H, names({{i, &L}, {k, &H}}));
  }));
  rep.add(check_all("E2", size_t(a) * a, [&](size_t idx) {
    int i = int(idx) / a, j = int(idx) % a;
    Vec p = bv(a, i, 1), q = bv(a, j, 1);
    Vec Np = o.N(p, 1), Nq = o.N(q, 1), Pp = o.phi(p, 1), Pq = o.phi(q, 1);
    Vec r = o.chi(Np, Nq, l1);
    Vec t = o.chi(Np, q, l1);
    add_to(t, o.chi(p, Nq, l1));
    sub_from(t, o.Q(o.chi(p, q, l1), 1));
    sub_from(r, o.Q(t, 1));
    Vec dn = o.lb(Np, q, l1);
    add_to(dn, o.lb(p, Nq, l1));
    sub_from(dn, o.N(o.lb(p, q, l1), 1));
    sub_from(r, o.phi(dn, 1));
    add_to(r, o.rho(Np, Pq, l1));
    sub_from(r, o.rho(Nq, Pp, -d1 - l1));
    Vec u = o.rho(q, Pp, -d1 - l1);
    sub_from(u, o.rho(p, Pq, l1));
    add_to(u, o.phi(o.lb(p, q, l1), 1));
    add_to(r, o.Q(u, 1));
    add_to(r, o.hb(Pp, Pq, l1));
    return residual(r, H, names({{i, &L}, {j, &L}}));
  }));
  return rep;
}

ExtensionData build_extension(const NonAbelianCocycle& c, const NijenhuisLCA& Ln, const NijenhuisLCA& Hn) {
  Report pre = check_nonabelian_cocycle(c, Ln, Hn);
  if (!pre.ok()) throw StructuralError("build_extension: precondition violated\n" + pre.str());
  const FreeModule &L = Ln.algebra.module, &H = Hn.algebra.module;
  int a = L.rank(), b = H.rank();
  FreeModule E = FreeModule::direct_sum(L, H);
  Ops o{c, Ln, Hn};
  Poly lam = Poly::lam(1, 1), del = Poly::del(1);
  auto embed = [](const Vec& lo, const Vec& up) {
    Vec v = lo;
    v.insert(v.end(), up.begin(), up.end());
    return v;
  };
  LCA alg = LCA::zero(E);
  for (int i = 0; i < a + b; ++i)
    for (int j = 0; j < a + b; ++j) {
      bool li = i < a, lj = j < a;
      Vec lo = zero_vec(a, 1), up = zero_vec(b, 1);
      if (li && lj) {
        lo = o.lb(basis_vec(a, i, 1), basis_vec(a, j, 1), lam);
        up = c.chi[i][j];
      }
      if (li && !lj) up = o.rho(basis_vec(a, i, 1), basis_vec(b, j - a, 1), lam);
      if (!li && lj) up = neg(o.rho(basis_vec(a, j, 1), basis_vec(b, i - a, 1), -del - lam));
      if (!li && !lj) up = o.hb(basis_vec(b, i - a, 1), basis_vec(b, j - a, 1), lam);
      alg.table[i][j] = embed(lo, up);
    }
  ConfLinMap R = ConfLinMap::zero(E, E), inc = ConfLinMap::zero(H, E), proj = ConfLinMap::zero(E, L),
             s = ConfLinMap::zero(L, E);
  for (int i = 0; i < a; ++i) {
    R.cols[i] = embed(Ln.N.cols[i], c.phi.cols[i]);
    s.cols[i] = basis_vec(a + b, i, 0);
    proj.cols[i] = basis_vec(a, i, 0);
  }
  for (int k = 0; k < b; ++k) {
    R.cols[a + k] = embed(zero_vec(a, 0), Hn.N.cols[k]);
    inc.cols[k] = basis_vec(a + b, a + k, 0);
  }
  return {NijenhuisLCA::raw(alg, R), Hn, Ln, inc, proj, s};
}

Report cocycle_equivalence(const NonAbelianCocycle& c, const NonAbelianCocycle& c2, const ConfLinMap& tau,
                           const NijenhuisLCA& Ln, const NijenhuisLCA& Hn) {
  const FreeModule &L = Ln.algebra.module, &H = Hn.algebra.module;
  if (!(tau.src == L) || !(tau.tgt == H)) throw StructuralError("cocycle_equivalence: tau must map L to H");
  int a = L.rank(), b = H.rank();
  Ops o{c, Ln, Hn}, o2{c2, Ln, Hn};
  Poly l = Poly::lam(1, 1), d = Poly::del(1);
  Report rep;
  rep.add(check_all("rho", size_t(a) * b, [&](size_t idx) {
    int i = int(idx) / b, k = int(idx) % b;
    Vec p = basis_vec(a, i, 1), h = basis_vec(b, k, 1);
    Vec r = o.rho(p, h, l);
    sub_from(r, o2.rho(p, h, l));
    sub_from(r, o.hb(tau.apply(p, 1), h, l));
    return residual(r, H, names({{i, &L}, {k, &H}}));
  }));
  rep.add(check_all("chi", size_t(a) * a, [&](size_t idx) {
    int i = int(idx) / a, j = int(idx) % a;
    Vec p = basis_vec(a, i, 1), q = basis_vec(a, j, 1);
    Vec tp = tau.apply(p, 1), tq = tau.apply(q, 1);
    Vec r = o.chi(p, q, l);
    sub_from(r, o2.chi(p, q, l));
    sub_from(r, o.hb(tp, tq, l));
    add_to(r, tau.apply(o.lb(p, q, l), 1));
    sub_from(r, o2.rho(p, tq, l));
    add_to(r, o2.rho(q, tp, -d - l));
    return residual(r, H, names({{i, &L}, {j, &L}}));
  }));
  rep.add(map_equal("phi", c.phi - c2.phi, Hn.N * tau - tau * Ln.N));
  return rep;
}

EquivalenceSolve solve_equivalence(const NonAbelianCocycle& c, const NonAbelianCocycle& c2, const NijenhuisLCA& Ln,
                                   const NijenhuisLCA& Hn, int D) {
  EquivalenceSolve out;
  const FreeModule &L = Ln.algebra.module, &H = Hn.algebra.module;
  int a = L.rank(), b = H.rank();
  bool abelian = true;
  for (auto& row : Hn.algebra.table)
    for (auto& v : row) abelian = abelian && is_zero(v);
  if (!abelian || L.has_eval()) {
    out.status = Status::Unsupported;
    out.report.status = Status::Unsupported;
    out.report.note("reason", abelian ? "L has evaluation summands" : "H has a nonzero bracket");
    return out;
  }
  if (D < 0) {
    auto tdeg = [](const Table& t) {
      int m = 0;
      for (auto& r : t)
        for (auto& v : r)
          for (auto& p : v) m = std::max(m, p.degree());
      return m;
    };
    D = std::max({tdeg(c.chi), tdeg(c2.chi), tdeg(c.rho), tdeg(c2.rho), c.phi.max_degree(), c2.phi.max_degree(),
                  Ln.algebra.max_degree(), Ln.N.max_degree(), Hn.N.max_degree()});
  }
  out.bound = D;
  out.certified = std::all_of(H.eval.begin(), H.eval.end(), [](auto& e) { return e.has_value(); });

  // With [.]_H = 0 the rho identity no longer involves tau.
  Report rho_only = cocycle_equivalence(c, c2, ConfLinMap::zero(L, H), Ln, Hn);
  if (!rho_only.passed("rho")) {
    out.status = Status::Infeasible;
    out.certified = true;
    out.certificate = "rho differs: " + rho_only.find("rho")->witness;
    out.report.add(*rho_only.find("rho"));
    out.report.status = Status::Infeasible;
    return out;
  }

  // Unknowns: tau(p_j)_r = sum_k x del^k.
  struct Unknown {
    int j, r, k;
  };
  std::vector<Unknown> xs;
  for (int j = 0; j < a; ++j)
    for (int r = 0; r < b; ++r)
      for (int k = 0; k <= (H.is_eval(r) ? 0 : D); ++k) xs.push_back({j, r, k});
  out.unknowns = xs.size();

  Ops o2{c2, Ln, Hn};
  Poly l = Poly::lam(1, 1), d = Poly::del(1);
  // Linear image of tau, laid out as (block, i, j, component) -> polynomial.
  using Key = std::tuple<int, int, int, int, Exp>;
  auto image = [&](const ConfLinMap& tau, const std::function<void(const Key&, const Q&)>& emit) {
    for (int i = 0; i < a; ++i)
      for (int j = 0; j < a; ++j) {
        Vec p = basis_vec(a, i, 1), q = basis_vec(a, j, 1);
        Vec r = o2.rho(p, tau.apply(q, 1), l);
        sub_from(r, o2.rho(q, tau.apply(p, 1), -d - l));
        sub_from(r, tau.apply(o2.lb(p, q, l), 1));
        for (int k = 0; k < b; ++k)
          for (auto& [e, v] : r[k].terms()) emit({0, i, j, k, e}, v);
      }
    ConfLinMap ph = Hn.N * tau - tau * Ln.N;
    for (int i = 0; i < a; ++i)
      for (int k = 0; k < b; ++k)
        for (auto& [e, v] : ph.cols[i][k].terms()) emit({1, i, 0, k, e}, v);
  };

  Indexer<Key> rows;
  std::vector<std::map<size_t, Q>> A;
  auto put = [&](const Key& key, size_t col, const Q& v) {
    size_t r = rows.get(key);
    if (A.size() <= r) A.resize(r + 1);
    A[r][col] += v;
  };
  for (size_t u = 0; u < xs.size(); ++u) {
    ConfLinMap tau = ConfLinMap::zero(L, H);
    tau.cols[xs[u].j][xs[u].r] = Poly::del(0).pow(xs[u].k);
    tau.cols[xs[u].j] = reduce(H, tau.cols[xs[u].j]);
    image(tau, [&](const Key& key, const Q& v) { put(key, u, v); });
  }
  // Right-hand side: chi - chi2 and Phi - Phi2.
  std::map<size_t, Q> rhs;
  auto emit_rhs = [&](const Key& key, const Q& v) {
    size_t r = rows.get(key);
    if (A.size() <= r) A.resize(r + 1);
    rhs[r] += v;
  };
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < a; ++j) {
      Vec r = c.chi[i][j];
      sub_from(r, c2.chi[i][j]);
      for (int k = 0; k < b; ++k)
        for (auto& [e, v] : r[k].terms()) emit_rhs({0, i, j, k, e}, v);
    }
  ConfLinMap dphi = c.phi - c2.phi;
  for (int i = 0; i < a; ++i)
    for (int k = 0; k < b; ++k)
      for (auto& [e, v] : dphi.cols[i][k].terms()) emit_rhs({1, i, 0, k, e}, v);

  std::vector<SparseRow> M;
  for (auto& m : A) M.push_back(make_row(m));
  QVec bvec(A.size(), 0);
  for (auto& [r, v] : rhs) bvec[r] = v;
  out.equations = A.size();
  SolveResult s = solve(M, bvec, xs.size());
  out.report.note("bound", std::to_string(D));
  out.report.note("unknowns", std::to_string(out.unknowns));
  out.report.note("equations", std::to_string(out.equations));
  if (!s.ok) {
    size_t support = 0;
    for (auto& y : s.certificate) support += (y != 0);
    out.status = Status::Infeasible;
    out.certificate = "y.A = 0, y.b = 1 with " + std::to_string(support) + " nonzero weights";
    out.report.status = Status::Infeasible;
    out.report.note("certificate", out.certificate);
    out.report.note("certified", out.certified ? "yes" : "no");
    return out;
  }
  ConfLinMap tau = ConfLinMap::zero(L, H);
  for (size_t u = 0; u < xs.size(); ++u)
    if (s.x[u] != 0) tau.cols[xs[u].j][xs[u].r] += s.x[u] * Poly::del(0).pow(xs[u].k);
  for (auto& col : tau.cols) col = reduce(H, col);
  out.tau = tau;
  out.report.merge(cocycle_equivalence(c, c2, tau, Ln, Hn));
  out.status = out.report.ok() ? Status::Pass : Status::Fail;
  return out;
}

Report check_extension_equivalence(const ExtensionData& e1, const ExtensionData& e2, const ConfLinMap& phi) {
  Report rep;
  rep.merge(check_morphism(e1.total.algebra, e2.total.algebra, phi), "morphism_");
  rep.add(map_equal("operator", phi * e1.total.N, e2.total.N * phi));
  rep.add(map_equal("inc", phi * e1.inc, e2.inc));
  rep.add(map_equal("proj", e2.proj * phi, e1.proj));
  return rep;
}

ConfLinMap shear(const ExtensionData& ext, const ConfLinMap& tau) {
  return ConfLinMap::identity(ext.total.algebra.module) + ext.inc * tau * ext.proj;
}

}  // namespace nlca
