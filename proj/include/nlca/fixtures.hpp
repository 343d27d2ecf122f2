#pragma once

#include "nlca/extension.hpp"
#include "nlca/nijenhuis.hpp"

namespace nlca::fixtures {

LCA virasoro();                         // [L_lam L] = (del + 2 lam) L
LCA virasoro_mutated();                 // (del + 3 lam) L, fails Jacobi
LCA current_sl2();                      // basis e, h, f with lam-constant sl2 table
LCA abelian(int rank);
ConfLinMap borel_projector();           // diag(1, 1, 0) on (e, h, f)
RepTable m_delta(const Q& delta);       // rho(L)_lam m = (del + delta lam) m
RepTable sl2_defining();                // rank-2 defining representation of current sl2
RepTable trivial_eval(const LCA& l, const Q& a = 0);  // zero action on Q[del]/(del - a)

// Kac-Moody cocycle chi_lam(a, b) = lam kappa(a, b) into the trivial module.
std::vector<std::vector<Vec>> kac_moody_chi();
// Gelfand-Fuchs cocycle chi_lam(L, L) = lam^3 into the trivial module.
std::vector<std::vector<Vec>> gelfand_fuchs_chi();

// Q[del]/(del) with zero bracket and operator q Id.
NijenhuisLCA line(const Q& q = 1);
// Over ((Csl2, Id), line(1)): chi = lam kappa, rho = 0, Phi = 0.
NonAbelianCocycle kac_moody_cocycle();
// Over ((Vir, Id), line(1)): chi = lam^3, rho = 0, Phi = 0.
NonAbelianCocycle gelfand_fuchs_cocycle();

}  // namespace nlca::fixtures
