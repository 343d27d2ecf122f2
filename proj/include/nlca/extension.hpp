#pragma once

#include <optional>
#include <string>

#include "nlca/nijenhuis.hpp"

namespace nlca {

/// 0 -> H_Q --inc--> E_R --proj--> L_N -> 0 with a section s of proj.
struct ExtensionData {
  NijenhuisLCA total;  // (E, R)
  NijenhuisLCA sub;    // (H, Q)
  NijenhuisLCA quot;   // (L, N)
  ConfLinMap inc, proj, section;
};

// Invariants: algebras and operators valid, inc/proj morphisms, proj inc = 0,
// proj s = Id, inc split injective, rank E = rank H + rank L, R inc = inc Q,
// proj R = N proj.
Report check_extension_data(const ExtensionData& ext);
ExtensionData with_section(const ExtensionData& ext, const ConfLinMap& s);

// Left inverse r : E -> H of inc over Q[del], if inc has a unit maximal minor.
std::optional<ConfLinMap> retraction(const ConfLinMap& inc);

struct NonAbelianCocycle {
  Table chi;       // chi[i][j] = chi_lam1(p_i, p_j) in H, arity 1
  Table rho;       // rho[i][k] = rho(p_i)_lam1 h_k in H, arity 1
  ConfLinMap phi;  // L -> H
  friend bool operator==(const NonAbelianCocycle& a, const NonAbelianCocycle& b) {
    return a.chi == b.chi && a.rho == b.rho && a.phi == b.phi;
  }
};

NonAbelianCocycle zero_cocycle(const NijenhuisLCA& L, const NijenhuisLCA& H);
std::string to_string(const NonAbelianCocycle& c, const NijenhuisLCA& L, const NijenhuisLCA& H);

// Throws StructuralError when the invariants fail or a value leaves H.
NonAbelianCocycle extract_cocycle(const ExtensionData& ext);

// chi_skew, rho_derivation, 2cocycle1, 2cocycle2, E1, E2
Report check_nonabelian_cocycle(const NonAbelianCocycle& c, const NijenhuisLCA& L, const NijenhuisLCA& H);

// E = L + H, R(p, h) = (N p, Q h + Phi p); canonical inc, proj and section.
ExtensionData build_extension(const NonAbelianCocycle& c, const NijenhuisLCA& L, const NijenhuisLCA& H);

// Checks rho, chi and Phi differences against tau : L -> H.
Report cocycle_equivalence(const NonAbelianCocycle& c, const NonAbelianCocycle& c2, const ConfLinMap& tau,
                           const NijenhuisLCA& L, const NijenhuisLCA& H);

struct EquivalenceSolve {
  Status status = Status::Pass;  // Pass, Infeasible or Unsupported
  std::optional<ConfLinMap> tau;
  int bound = 0;
  bool certified = false;  // tau space does not depend on the bound
  size_t unknowns = 0, equations = 0;
  std::string certificate;
  Report report;
};
// Abelian H only.  D < 0 picks the default bound from the input degrees.
EquivalenceSolve solve_equivalence(const NonAbelianCocycle& c, const NonAbelianCocycle& c2, const NijenhuisLCA& L,
                                   const NijenhuisLCA& H, int D = -1);

// phi : E1 -> E2 is a Nijenhuis morphism with phi inc1 = inc2, proj2 phi = proj1.
Report check_extension_equivalence(const ExtensionData& e1, const ExtensionData& e2, const ConfLinMap& phi);

// (p, h) -> (p, h + tau p), i.e. Id + inc tau proj.
ConfLinMap shear(const ExtensionData& ext, const ConfLinMap& tau);

}  // namespace nlca
