#pragma once

#include <optional>

#include "nlca/cohomology.hpp"

namespace nlca {

/// N_t = N + N_1 t + ... + N_k t^k, truncated at t^{k+1}.
struct DeformationSeries {
  NijenhuisLCA base;
  std::vector<ConfLinMap> terms;  // N_1..N_k

  int order() const { return int(terms.size()); }
  // N_i with N_0 = base.N
  const ConfLinMap& term(int i) const { return i == 0 ? base.N : terms.at(size_t(i) - 1); }
  static DeformationSeries make(NijenhuisLCA base, std::vector<ConfLinMap> terms);
};

// Checks "order0".."orderk": sum_{i+j=n} [N_i p, N_j q] = sum N_i([N_j p, q] + [p, N_j q] - N_j[p, q]).
Report check_order(const DeformationSeries& s);

// d_N(N_1) = 0, cross-checked against the order-1 equation.
Report infinitesimal_cocycle(const DeformationSeries& s);

struct ObstructionResult {
  Cochain ob;                            // -1/2 sum_{i+j=k+1, i,j>=1} [N_i, N_j]_FN
  Report report;                         // "cocycle", and "extensible" when searched
  std::optional<ConfLinMap> next;        // N_{k+1} with d_N(N_{k+1}) = Ob, when found
  std::string status;                    // "extensible@D", "obstructed@D" or empty
};

// Bound D < 0 skips the extensibility search.
ObstructionResult obstruction(const DeformationSeries& s, int D = -1);

// N_1 - N_1' = d_N(p) for the element p of the algebra.
Report verify_equivalence_order1(const DeformationSeries& a, const DeformationSeries& b, const Vec& p);

// Search for p with N_1 - N_1' = d_N(p), entries of degree <= D.
std::optional<Vec> find_equivalence_order1(const DeformationSeries& a, const DeformationSeries& b, int D);

}  // namespace nlca
