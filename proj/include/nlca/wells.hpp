#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlca/extension.hpp"

namespace nlca {

struct AutomorphismPair {
  ConfLinMap alpha;  // on H
  ConfLinMap beta;   // on L
};

// (a2 a1, b2 b1)
AutomorphismPair compose(const AutomorphismPair& p2, const AutomorphismPair& p1);
bool operator==(const AutomorphismPair& a, const AutomorphismPair& b);

Report check_automorphism_pair(const AutomorphismPair& pair, const NijenhuisLCA& L, const NijenhuisLCA& H);

// gamma in Aut_H(E_R): invertible Nijenhuis automorphism with gamma(H) = H.
Report check_aut_H(const ExtensionData& ext, const ConfLinMap& gamma);
// (gamma|_H, proj gamma s); throws StructuralError unless gamma is in Aut_H(E_R).
AutomorphismPair induced_pair(const ExtensionData& ext, const ConfLinMap& gamma);

// chi' = alpha chi(b^-1, b^-1), rho'(p) h = alpha rho(b^-1 p) alpha^-1 h, Phi' = alpha Phi b^-1
NonAbelianCocycle transform_cocycle(const NonAbelianCocycle& c, const AutomorphismPair& pair, const NijenhuisLCA& L,
                                    const NijenhuisLCA& H);

struct WellsResult {
  NonAbelianCocycle original, transformed;
  std::string class_status;  // zero@D, nonzero@D, nonzero-certified, undecided
  std::optional<ConfLinMap> tau;  // transformed ~ original via tau
  Report report;
  bool zero() const { return class_status.rfind("zero@", 0) == 0; }
};
// For non-abelian H only the supplied candidate maps tau are tried.
WellsResult wells_obstruction(const ExtensionData& ext, const AutomorphismPair& pair, int D = -1,
                              const std::vector<ConfLinMap>& candidates = {});

// Equations for eta : L -> H making (alpha, beta) inducible.
Report verify_inducing_map(const ExtensionData& ext, const AutomorphismPair& pair, const ConfLinMap& eta);

struct InduceResult {
  Status status = Status::Pass;
  std::optional<ConfLinMap> eta, gamma;
  Report report;
};
// Abelian H: eta = tau beta from the equivalence solve, then lifted.
InduceResult solve_inducing_map(const ExtensionData& ext, const AutomorphismPair& pair, int D = -1);
// gamma(s p + h) = s(beta p) + alpha h + eta p, validated in Aut_H(E_R) with Pi(gamma) = pair.
InduceResult lift(const ExtensionData& ext, const AutomorphismPair& pair, const ConfLinMap& eta);

// Instance checks of the Wells sequence: kernel elements of Pi are shears,
// Pi is multiplicative on consecutive gammas, and for each pair
// wells_obstruction is zero exactly when an inducing eta is found.
Report wells_sequence_check(const ExtensionData& ext, const std::vector<ConfLinMap>& gammas,
                            const std::vector<AutomorphismPair>& pairs, int D = -1);

}  // namespace nlca
