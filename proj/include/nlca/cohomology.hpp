#pragma once

#include <optional>

#include "nlca/cochain.hpp"
#include "nlca/linalg.hpp"
#include "nlca/nijenhuis.hpp"

namespace nlca {

struct CochainPair {
  Cochain f;                // degree n
  std::optional<Cochain> g;  // degree n-1, absent for n = 1
};

// The delta-shaped sum at explicit arguments (used by delta and d_N).
Vec delta_at(const Cochain& f, const RepTable& rep, const std::vector<Arg>& args, int arity);

Cochain apply_delta(const Cochain& f, const RepTable& rep);
Cochain insertion(const Cochain& J, const Cochain& K);  // J (.) K, K fed into J's first slot
Cochain nr_bracket(const Cochain& J, const Cochain& K);
Cochain cup_product(const Cochain& J, const Cochain& K, const LCA& l);
Cochain fn_bracket(const Cochain& J, const Cochain& K, const LCA& l);

Cochain apply_dN(const Cochain& f, const NijenhuisLCA& n, const NijenhuisRep& coeffs);
Cochain apply_dN(const Cochain& f, const NijenhuisLCA& n);  // adjoint coefficients
Cochain xi_map(const Cochain& f, const ConfLinMap& N, const ConfLinMap& NM);
CochainPair apply_dNL(const CochainPair& p, const NijenhuisLCA& n, const NijenhuisRep& coeffs);
CochainPair apply_dNL(const CochainPair& p, const NijenhuisLCA& n);

// delta_N o Phi^n = Phi^{n+1} o d_N with Phi^n = (-1)^{n+1} delta and delta_N
// the coboundary of the deformed algebra with coefficients rho^1.
Report phi_chain_check(const Cochain& f, const NijenhuisLCA& n, const NijenhuisRep& coeffs);
Report phi_chain_check(const Cochain& f, const NijenhuisLCA& n);

enum class Complex { Delta, DN, DNL };

struct TruncatedResult {
  std::vector<std::vector<Cochain>> cocycle_basis;    // each element: one cochain per component
  std::vector<std::vector<Cochain>> coboundary_basis;
  size_t unknowns = 0, equations = 0, rank = 0, cocycle_dim = 0, coboundary_dim = 0;
  long h_dim = 0;
};

struct ComplexSpec {
  Complex kind = Complex::Delta;
  RepTable rep;                              // coefficients
  std::optional<NijenhuisLCA> nlca;          // for DN / DNL
  std::optional<ConfLinMap> NM;              // for DN / DNL
};

ComplexSpec delta_complex(const RepTable& rep);
ComplexSpec dn_complex(const NijenhuisLCA& n, const NijenhuisRep& coeffs);
ComplexSpec dnl_complex(const NijenhuisLCA& n, const NijenhuisRep& coeffs);

// Components of degree-n cochains of the complex (1 for delta/d_N, 1 or 2 for d_NL).
std::vector<int> component_degrees(const ComplexSpec& cx, int n);
std::vector<Cochain> apply_complex(const ComplexSpec& cx, const std::vector<Cochain>& x);

TruncatedResult solve_truncated(const ComplexSpec& cx, int n, int D);

// Solve d(x) = target for x of degree n-1 with entries of total degree <= D.
struct PreimageResult {
  bool found = false;
  std::vector<Cochain> x;
  std::string certificate;
};
PreimageResult solve_preimage(const ComplexSpec& cx, const std::vector<Cochain>& target, int D);

}  // namespace nlca
