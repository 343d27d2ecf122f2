#include "nlca/fixtures.hpp"

namespace nlca::fixtures {

static Poly P1(const std::string& s) { return parse_poly(s, 1); }

LCA virasoro() {
  LCA l = LCA::zero(FreeModule::free({"L"}));
  l.table[0][0] = {P1("del + 2*lam1")};
  return l;
}

LCA virasoro_mutated() {
  LCA l = virasoro();
  l.table[0][0] = {P1("del + 3*lam1")};
  return l;
}

LCA current_sl2() {
  LCA l = LCA::zero(FreeModule::free({"e", "h", "f"}));
  enum { E, H, F };
  auto set = [&](int i, int j, int k, int c) {
    l.table[i][j][k] = Poly(1, c);
    l.table[j][i][k] = Poly(1, -c);
  };
  set(E, F, H, 1);
  set(H, E, E, 2);
  set(H, F, F, -2);
  return l;
}

LCA abelian(int rank) {
  std::vector<std::string> names;
  for (int i = 0; i < rank; ++i) names.push_back("x" + std::to_string(i + 1));
  return LCA::zero(FreeModule::free(names));
}

ConfLinMap borel_projector() { return ConfLinMap::diag(current_sl2().module, {1, 1, 0}); }

RepTable m_delta(const Q& delta) {
  RepTable r = RepTable::zero(virasoro(), FreeModule::free({"m"}));
  r.action[0][0] = {Poly::del(1) + delta * Poly::lam(1, 1)};
  return r;
}

RepTable sl2_defining() {
  RepTable r = RepTable::zero(current_sl2(), FreeModule::free({"v1", "v2"}));
  // e v2 = v1, h v1 = v1, h v2 = -v2, f v1 = v2
  r.action[0][1][0] = Poly(1, 1);
  r.action[1][0][0] = Poly(1, 1);
  r.action[1][1][1] = Poly(1, -1);
  r.action[2][0][1] = Poly(1, 1);
  return r;
}

RepTable trivial_eval(const LCA& l, const Q& a) { return RepTable::zero(l, FreeModule::evaluation("c", a)); }

std::vector<std::vector<Vec>> kac_moody_chi() {
  // Trace form on sl2: kappa(e,f) = kappa(f,e) = 1, kappa(h,h) = 2.
  std::vector<std::vector<Vec>> chi(3, std::vector<Vec>(3, zero_vec(1, 1)));
  chi[0][2][0] = Poly::lam(1, 1);
  chi[2][0][0] = Poly::lam(1, 1);
  chi[1][1][0] = 2 * Poly::lam(1, 1);
  return chi;
}

std::vector<std::vector<Vec>> gelfand_fuchs_chi() {
  std::vector<std::vector<Vec>> chi(1, std::vector<Vec>(1, zero_vec(1, 1)));
  chi[0][0][0] = Poly::lam(1, 1).pow(3);
  return chi;
}

NijenhuisLCA line(const Q& q) {
  LCA l = LCA::zero(FreeModule::evaluation("c", 0));
  return NijenhuisLCA::make(l, ConfLinMap::scalar(l.module, q));
}

NonAbelianCocycle kac_moody_cocycle() {
  NonAbelianCocycle c = zero_cocycle(NijenhuisLCA::raw(current_sl2(), ConfLinMap::identity(current_sl2().module)), line());
  c.chi = kac_moody_chi();
  return c;
}

NonAbelianCocycle gelfand_fuchs_cocycle() {
  NonAbelianCocycle c = zero_cocycle(NijenhuisLCA::raw(virasoro(), ConfLinMap::identity(virasoro().module)), line());
  c.chi = gelfand_fuchs_chi();
  return c;
}

}  // namespace nlca::fixtures
