#pragma once

#include "nlca/lca.hpp"

namespace nlca {

struct NijenhuisLCA {
  LCA algebra;
  ConfLinMap N;

  // Validating constructor: throws StructuralError if N is not Nijenhuis.
  static NijenhuisLCA make(LCA l, ConfLinMap N);
  static NijenhuisLCA raw(LCA l, ConfLinMap N) { return {std::move(l), std::move(N)}; }
};

struct NijenhuisRep {
  RepTable rep;
  ConfLinMap NM;

  static NijenhuisRep adjoint(const NijenhuisLCA& n) { return {RepTable::adjoint(n.algebra), n.N}; }
};

// [x_Lam y]_N = [N x_Lam y] + [x_Lam N y] - N[x_Lam y]
Vec deformed(const LCA& l, const ConfLinMap& N, const Vec& x, const Vec& y, const Poly& Lam);

Report check_nijenhuis(const LCA& l, const ConfLinMap& N);
LCA deformed_bracket(const LCA& l, const ConfLinMap& N);
inline LCA deformed_bracket(const NijenhuisLCA& n) { return deformed_bracket(n.algebra, n.N); }
Report power_compatibility_suite(const NijenhuisLCA& n, int k, int l, unsigned seed = 1);

Report check_nij_representation(const NijenhuisLCA& n, const NijenhuisRep& r);
// rho^k(p) m = rho(N^k p) m + rho(p) N_M^k m - N_M^k(rho(p) m), a representation
// of the algebra with bracket [.]_{N^k}.
RepTable induced_rep(const NijenhuisLCA& n, const NijenhuisRep& r, int k);
NijenhuisLCA nij_semidirect(const NijenhuisLCA& n, const NijenhuisRep& r);

// Checks del-linearity of a map whose source or target has evaluation summands.
Check check_del_linear(const ConfLinMap& f);

}  // namespace nlca
