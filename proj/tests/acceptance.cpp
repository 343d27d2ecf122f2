// One line per acceptance criterion; exit status is the number of failures.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <sys/wait.h>

#include "cli.hpp"
#include "nlca/deformation.hpp"
#include "nlca/fixtures.hpp"
#include "nlca/homotopy.hpp"
#include "nlca/wells.hpp"

using namespace nlca;
namespace fx = nlca::fixtures;

namespace {

struct Failed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void need(bool ok, const std::string& what) {
  if (!ok) throw Failed(what);
}

NijenhuisLCA slP() { return NijenhuisLCA::make(fx::current_sl2(), fx::borel_projector()); }
NijenhuisLCA slId() { return NijenhuisLCA::make(fx::current_sl2(), ConfLinMap::identity(fx::current_sl2().module)); }
NijenhuisLCA virId() { return NijenhuisLCA::make(fx::virasoro(), ConfLinMap::identity(fx::virasoro().module)); }

ExtensionData km_ext() { return build_extension(fx::kac_moody_cocycle(), slId(), fx::line()); }

// Csl2 acting on an abelian copy of itself, operators P on both sides.
ExtensionData semidirect_ext() {
  LCA z = LCA::zero(FreeModule::free({"x", "y", "z"}));
  auto H = NijenhuisLCA::make(z, ConfLinMap::diag(z.module, {1, 1, 0}));
  auto c = zero_cocycle(slP(), H);
  c.rho = fx::current_sl2().table;
  return build_extension(c, slP(), H);
}

ConfLinMap inner(const FreeModule& m) { return ConfLinMap::diag(m, {2, 1, Q(1, 2)}); }

// Independent hand expansion of the degree-1 FN bracket on basis pairs.
Cochain fn_degree1_oracle(const ConfLinMap& J, const ConfLinMap& K, const LCA& l) {
  int r = l.rank();
  return build(2, l.module, l.module, [&](const std::vector<int>& t) {
    Poly lam = Poly::lam(1, 2);
    Vec p = basis_vec(r, t[0], 2), q = basis_vec(r, t[1], 2);
    Vec pq = l.bracket(p, q, lam);
    Vec out = l.bracket(J.apply(p), K.apply(q), lam);
    add_to(out, l.bracket(K.apply(p), J.apply(q), lam));
    add_to(out, J.apply(K.apply(pq)));
    add_to(out, K.apply(J.apply(pq)));
    Vec a = l.bracket(J.apply(p), q, lam);
    add_to(a, l.bracket(p, J.apply(q), lam));
    sub_from(out, K.apply(a));
    Vec b = l.bracket(K.apply(p), q, lam);
    add_to(b, l.bracket(p, K.apply(q), lam));
    sub_from(out, J.apply(b));
    return out;
  });
}

std::string c1() {
  auto good = check_lca(fx::virasoro());
  need(good.ok(), "virasoro rejected: " + good.str());
  auto bad = check_lca(fx::virasoro_mutated());
  auto* j = bad.find("jacobi");
  need(j && !j->pass, "mutated table passed jacobi");
  need(j->witness.find("residual") != std::string::npos, "no residual in witness");
  return j->witness;
}

std::string c2() {
  auto sl = slP();
  const LCA& l = sl.algebra;
  RepTable def = fx::sl2_defining();
  std::vector<NijenhuisRep> coeffs{NijenhuisRep::adjoint(sl), {def, ConfLinMap::zero(def.module, def.module)},
                                   {def, ConfLinMap::identity(def.module)}};
  std::mt19937_64 rng(20);
  int count = 0;
  for (auto& co : coeffs) {
    need(check_nij_representation(sl, co).ok(), "coefficients are not a Nijenhuis representation");
    for (int i = 0; i < 20; ++i) {
      int n = 1 + i % 2;
      Cochain f = random_cochain(n, l.module, co.rep.module, 2, rng);
      need(apply_delta(apply_delta(f, co.rep), co.rep).is_zero(), "delta^2");
      need(apply_dN(apply_dN(f, sl, co), sl, co).is_zero(), "d_N^2");
      std::optional<Cochain> g;
      if (n == 2) g = random_cochain(1, l.module, co.rep.module, 2, rng);
      auto dd = apply_dNL(apply_dNL({f, g}, sl, co), sl, co);
      need(dd.f.is_zero() && (!dd.g || dd.g->is_zero()), "d_NL^2");
      ++count;
    }
  }
  return std::to_string(count) + " cochains, 3 coefficient systems";
}

std::string c3() {
  std::mt19937_64 rng(3);
  auto sl = slP();
  for (LCA l : {fx::virasoro(), fx::current_sl2()}) {
    Cochain mc = bracket_cochain(l);
    RepTable ad = RepTable::adjoint(l);
    for (int n = 1; n <= 2; ++n) {
      Cochain f = random_cochain(n, l.module, l.module, 2, rng);
      Cochain d = apply_delta(f, ad);
      if (n % 2 == 0) d = Q(-1) * d;
      need(nr_bracket(mc, f) == d, "[m_c, f]_NR at n=" + std::to_string(n));
    }
    for (int it = 0; it < 3; ++it) {
      ConfLinMap J = random_map(l.module, l.module, 1, rng), K = random_map(l.module, l.module, 1, rng);
      need(fn_bracket(from_map(J), from_map(K), l) == fn_degree1_oracle(J, K, l), "FN degree 1 expansion");
      need(apply_delta(fn_bracket(from_map(J), from_map(K), l), ad) ==
               nr_bracket(apply_delta(from_map(J), ad), apply_delta(from_map(K), ad)),
           "delta of FN bracket");
    }
  }
  RepTable def = fx::sl2_defining();
  std::vector<NijenhuisRep> cos{NijenhuisRep::adjoint(sl), {def, ConfLinMap::identity(def.module)}};
  for (auto& co : cos)
    for (int n = 1; n <= 2; ++n) {
      Cochain g = random_cochain(n, sl.algebra.module, co.rep.module, 2, rng);
      need(apply_dN(xi_map(g, sl.N, co.NM), sl, co) == xi_map(apply_delta(g, co.rep), sl.N, co.NM), "d_N xi");
    }
  return "exact";
}

std::string c4() {
  LCA sl = fx::current_sl2();
  std::vector<ConfLinMap> ops{ConfLinMap::zero(sl.module, sl.module), ConfLinMap::identity(sl.module),
                              fx::borel_projector()};
  unsigned seed = 1;
  for (;; ++seed) {
    std::mt19937_64 rng(seed);
    ConfLinMap m = random_map(sl.module, sl.module, 1, rng);
    if (!check_nijenhuis(sl, m).ok()) {
      ops.push_back(m);
      break;
    }
    need(seed < 100, "no non-Nijenhuis map found");
  }
  std::string agree;
  for (auto& N : ops) {
    bool mc = fn_bracket(from_map(N), from_map(N), sl).is_zero();
    bool nij = check_nijenhuis(sl, N).ok();
    need(mc == nij, "MC and Nijenhuis disagree");
    agree += nij ? "1" : "0";
  }
  need(agree == "1110", "unexpected pattern " + agree);
  return "0, Id, P Nijenhuis; seed " + std::to_string(seed) + " map is not";
}

std::string c5() {
  auto sl = slP();
  for (int k = 1; k <= 2; ++k)
    for (int l = 1; l <= 2; ++l) {
      auto r = power_compatibility_suite(sl, k, l);
      need(r.ok() && r.checks.size() == 5, "k=" + std::to_string(k) + " l=" + std::to_string(l) + "\n" + r.str());
    }
  return "k, l in {1, 2}";
}

std::string c6() {
  auto sl = slP();
  const int D = 2;
  auto z = solve_truncated(dn_complex(sl, NijenhuisRep::adjoint(sl)), 1, 1);
  need(z.cocycle_basis.size() >= 2, "too few order-1 cocycles");
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> c(-2, 2);
  int obstructed = 0, nonzero = 0;
  for (int trial = 0; trial < 4; ++trial) {
    ConfLinMap N1 = ConfLinMap::zero(sl.algebra.module, sl.algebra.module);
    for (auto& b : z.cocycle_basis) N1 = N1 + Q(c(rng)) * to_map(b.at(0));
    auto s = DeformationSeries::make(sl, {N1});
    need(check_order(s).ok(), "order-1 deformation invalid");
    auto ob = obstruction(s, D);
    need(apply_dN(ob.ob, sl).is_zero(), "d_N(Ob) != 0");
    auto pre = solve_preimage(dn_complex(sl, NijenhuisRep::adjoint(sl)), {ob.ob}, D);
    need(pre.found == (ob.status == "extensible@2"), "extensibility disagrees with the truncated solve");
    if (!pre.found) ++obstructed;
    if (!ob.ob.is_zero()) ++nonzero;
  }
  need(nonzero > 0, "every obstruction vanished");
  return std::to_string(nonzero) + " nonzero Ob, " + std::to_string(obstructed) + " obstructed@2";
}

std::string c7() {
  LCA vir = fx::virasoro();
  auto r3 = solve_truncated(delta_complex(fx::trivial_eval(vir)), 2, 3);
  need(r3.cocycle_dim == 2 && r3.coboundary_dim == 1 && r3.h_dim == 1, "dims at D=3");
  // Hand-solved test vector: cocycles span {lam, lam^3}, coboundaries span {lam}.
  Exp e1{0, 1}, e3{0, 3};
  std::vector<std::pair<Q, Q>> coords;
  for (auto& b : r3.cocycle_basis) {
    const Poly& p = b[0].vals[0][0];
    for (auto& [e, c] : p.terms()) need(e == e1 || e == e3, "cocycle outside span{lam, lam^3}");
    coords.emplace_back(p.terms().count(e1) ? p.terms().at(e1) : Q(0), p.terms().count(e3) ? p.terms().at(e3) : Q(0));
  }
  need(coords[0].first * coords[1].second - coords[0].second * coords[1].first != 0, "cocycles dependent");
  const Poly& b = r3.coboundary_basis.at(0)[0].vals[0][0];
  need(b.terms().size() == 1 && b.terms().count(e1), "coboundary is not a multiple of lam");
  auto r1 = solve_truncated(delta_complex(fx::trivial_eval(vir)), 2, 1);
  need(r1.h_dim == 0, "h_dim at D=1");
  return "D=3: 2/1/1, D=1: h_dim 0";
}

std::string c8() {
  auto X = adjoint_crossed_module(slP());
  need(check_crossed_module(X).ok(), "crossed module");
  need(strict_crossed_roundtrip(X).ok(), "round trip");
  auto [T, H] = strict_from_crossed(X);
  auto back = crossed_from_strict(T, H);
  need(back.lower.algebra.table == X.lower.algebra.table && back.upper.algebra.table == X.upper.algebra.table &&
           back.rho.action == X.rho.action && back.t == X.t && back.upper.N == X.upper.N &&
           back.lower.N == X.lower.N,
       "tables differ after the round trip");
  auto D = crossed_direct_sum(X);
  need(check_nijenhuis(D.algebra, D.N).ok(), "direct sum not Nijenhuis");
  return "tables identical";
}

std::string c9() {
  struct Case {
    const char* name;
    NonAbelianCocycle c;
    NijenhuisLCA L;
  };
  std::vector<Case> cases{{"zero", zero_cocycle(slId(), fx::line()), slId()},
                          {"kac-moody", fx::kac_moody_cocycle(), slId()},
                          {"virasoro", fx::gelfand_fuchs_cocycle(), virId()}};
  for (auto& k : cases) {
    auto e = build_extension(k.c, k.L, fx::line());
    auto r = check_extension_data(e);
    need(r.ok(), std::string(k.name) + "\n" + r.str());
    need(r.passed("total_nijenhuis_nijenhuis"), "R not Nijenhuis");
    need(extract_cocycle(e) == k.c, std::string(k.name) + " round trip");
  }
  return "zero, lam kappa, lam^3";
}

std::string c10() {
  auto e = km_ext();
  const FreeModule &L = e.quot.algebra.module, &H = e.sub.algebra.module;
  ConfLinMap t = ConfLinMap::zero(L, H);
  t.cols[0][0] = Poly(0, 1);
  t.cols[1][0] = Poly(0, 2);
  auto e2 = with_section(e, e.section - e.inc * t);
  need(check_extension_data(e2).ok(), "second section invalid");
  auto c = extract_cocycle(e), c2 = extract_cocycle(e2);
  need(!(c == c2), "sections give the same cocycle");
  ConfLinMap tau = e.section - e2.section;  // in the image of inc
  auto r = retraction(e.inc);
  need(bool(r), "inc has no retraction");
  ConfLinMap tau_h = *r * tau;
  need(e.inc * tau_h == tau, "s - s' leaves H");
  need(cocycle_equivalence(c, c2, tau_h, e.quot, e.sub).ok(), "not certified equivalent");
  return "tau = s - s'";
}

std::string c11() {
  auto e = km_ext();
  const FreeModule &L = e.quot.algebra.module, &H = e.sub.algebra.module;
  AutomorphismPair sc{ConfLinMap::scalar(H, 2), ConfLinMap::identity(L)};
  auto w = wells_obstruction(e, sc);
  need(w.class_status == "nonzero-certified", "(2, Id) class " + w.class_status);
  need(solve_inducing_map(e, sc).status == Status::Infeasible, "(2, Id) solve not infeasible");
  AutomorphismPair in{ConfLinMap::identity(H), inner(L)};
  auto w2 = wells_obstruction(e, in);
  need(w2.zero(), "(Id, inner) class " + w2.class_status);
  auto s = solve_inducing_map(e, in);
  need(s.status == Status::Pass && s.eta, "(Id, inner) solve");
  auto g = lift(e, in, *s.eta);
  need(g.status == Status::Pass && g.gamma, "lift");
  need(induced_pair(e, *g.gamma) == in, "Pi(gamma) differs from the pair");
  return "nonzero-certified / infeasible; zero / lifted";
}

std::string c12() {
  int shears = 0;
  {
    auto e = km_ext();
    const FreeModule &L = e.quot.algebra.module, &H = e.sub.algebra.module;
    AutomorphismPair in{ConfLinMap::identity(H), inner(L)};
    std::vector<ConfLinMap> g{shear(e, ConfLinMap::zero(L, H)), *solve_inducing_map(e, in).gamma};
    auto r = wells_sequence_check(e, g, {{ConfLinMap::scalar(H, 2), ConfLinMap::identity(L)}, in});
    need(r.ok(), r.str());
    ++shears;
  }
  auto e = semidirect_ext();
  const FreeModule &L = e.quot.algebra.module, &H = e.sub.algebra.module;
  AutomorphismPair id{ConfLinMap::identity(H), ConfLinMap::identity(L)};
  // inner shears tau = ad_{q h}, q rational; these commute with P
  std::vector<ConfLinMap> g;
  for (Q q : {Q(1), Q(-3), Q(1, 2)}) {
    ConfLinMap tau = ConfLinMap::zero(L, H);
    tau.cols[0][0] = Poly(0, -2 * q);
    tau.cols[2][2] = Poly(0, 2 * q);
    ConfLinMap gam = shear(e, tau);
    need(check_aut_H(e, gam).ok(), "shear not in Aut_H");
    need(induced_pair(e, gam) == id, "shear outside the kernel");
    g.push_back(gam);
    ++shears;
  }
  AutomorphismPair pr{inner(H), inner(L)};
  g.push_back(*lift(e, pr, ConfLinMap::zero(L, H)).gamma);
  auto r = wells_sequence_check(e, g, {pr, id});
  need(r.ok(), r.str());
  return std::to_string(shears) + " shears in ker Pi, no defects";
}

struct SuiteLine {
  int expect;
  std::vector<std::string> args;
};

std::vector<SuiteLine> read_suite() {
  std::ifstream in(NLCA_SUITE_FILE);
  need(bool(in), "cannot read the fixture suite");
  std::vector<SuiteLine> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    SuiteLine s;
    ls >> s.expect;
    for (std::string w; ls >> w;) s.args.push_back(w);
    out.push_back(s);
  }
  return out;
}

std::string c13() {
  auto suite = read_suite();
  auto pass = [&](const std::vector<std::string>& extra) {
    std::string all;
    for (auto& s : suite) {
      auto args = s.args;
      args.insert(args.end(), extra.begin(), extra.end());
      std::ostringstream out, err;
      int rc = cli::run(args, out, err);
      need(rc == s.expect, "exit " + std::to_string(rc) + " for '" + args[0] + " " + args[1] + "'");
      all += "== " + std::to_string(rc) + "\n" + out.str() + err.str();
    }
    return all;
  };
  std::string a = pass({}), b = pass({}), p = pass({"--parallel"});
  need(a == b, "two runs differ");
  need(a == p, "parallel run differs");
  // and through the real executable, one command per exit code
  for (auto& s : suite) {
    static int seen[4] = {0, 0, 0, 0};
    if (seen[s.expect]++) continue;
    std::string cmd = std::string("\"") + NLCA_BIN + "\"";
    for (auto& w : s.args) cmd += " " + w;
    cmd += " > /dev/null 2>&1";
    int st = std::system(cmd.c_str());
    need(WIFEXITED(st) && WEXITSTATUS(st) == s.expect, "binary exit code for '" + cmd + "'");
  }
  return std::to_string(suite.size()) + " commands, " + std::to_string(a.size()) + " bytes";
}

}  // namespace

int main(int argc, char** argv) {
  int only = argc > 1 ? std::atoi(argv[1]) : 0;  // run a single criterion
  struct Crit {
    int id;
    const char* name;
    double limit_s;  // 0 = no limit
    std::function<std::string()> run;
  };
  std::vector<Crit> crits{{1, "axiom gate", 1, c1},
                          {2, "d^2 = 0 suite", 10, c2},
                          {3, "convention oracles", 0, c3},
                          {4, "MC characterization", 0, c4},
                          {5, "power compatibility", 0, c5},
                          {6, "obstruction", 0, c6},
                          {7, "Gelfand-Fuchs slice", 5, c7},
                          {8, "crossed-module round trip", 0, c8},
                          {9, "extension round trip", 0, c9},
                          {10, "section independence", 0, c10},
                          {11, "Wells decision", 5, c11},
                          {12, "Wells sequence instance", 0, c12},
                          {13, "CLI determinism", 0, c13}};
  int failed = 0;
  for (auto& c : crits) {
    if (only && c.id != only) continue;
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = c.run();
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ok && c.limit_s > 0 && s >= c.limit_s) {
      ok = false;
      detail += " (over the time limit)";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3fs", s);
    std::cout << "criterion " << c.id << " " << (ok ? "PASS" : "FAIL") << " " << c.name << " [" << buf;
    if (c.limit_s > 0) std::cout << " < " << c.limit_s << "s";
    std::cout << "] " << detail << "\n";
    failed += !ok;
  }
  return failed;
}
