#pragma once

#include <string>

#include "nlca/cohomology.hpp"

namespace nlca {

/// d : L1 -> L0 with brackets [[L0 L0]] -> L0, [[L0 L1]], [[L1 L0]] -> L1,
/// [[L1 L1]] (must vanish) and l3 : L0^3 -> L1[lam1, lam2].
struct TwoTermConformal {
  FreeModule L0, L1;
  ConfLinMap d;
  Table b00, b01, b10, b11;
  Cochain l3;

  // b10 from b01 by skew-symmetry, b11 = 0.
  static TwoTermConformal make(const FreeModule& L0, const FreeModule& L1, ConfLinMap d, Table b00, Table b01,
                               std::optional<Cochain> l3 = std::nullopt);
};

// [[m_lam p]] := -[[p_{-del-lam} m]]
Table skew_transpose(const Table& t, int rank_left, int rank_right, const FreeModule& tgt);

Report check_2term(const TwoTermConformal& T);  // L1..L8 plus l3_skew

struct HomotopyNijenhuis {
  ConfLinMap N0, N1;
  Cochain N2;  // degree 2, L0 -> L1
};

// identity1..identity4 plus N2_skew
Report check_homotopy_nijenhuis(const TwoTermConformal& T, const HomotopyNijenhuis& H);

enum class Shape { Skeletal, Strict, Neither };
const char* shape_name(Shape s);
// Strict wins when both apply (d = 0, l3 = 0, N2 = 0).
Shape classify(const TwoTermConformal& T, const HomotopyNijenhuis& H);

struct SkeletalCocycle {
  NijenhuisLCA base;      // (L0, [[.]], N0)
  NijenhuisRep coeffs;    // (L1, [[L0 L1]], N1)
  CochainPair pair;       // (l3, N2)
  Report report;          // delta_l3, xi_dN
};
SkeletalCocycle skeletal_to_cocycle(const TwoTermConformal& T, const HomotopyNijenhuis& H);
std::pair<TwoTermConformal, HomotopyNijenhuis> skeletal_from_cocycle(const NijenhuisLCA& base,
                                                                     const NijenhuisRep& coeffs,
                                                                     const CochainPair& pair);

struct TwoTermMorphism {
  ConfLinMap f0, f1;
  Cochain f2;  // degree 2, L0 -> L1'
};
Report check_2term_morphism(const TwoTermConformal& A, const TwoTermConformal& B, const TwoTermMorphism& f);  // H1..H5
TwoTermMorphism identity_morphism(const TwoTermConformal& T);

struct CrossedModule {
  NijenhuisLCA upper;  // L1
  NijenhuisLCA lower;  // L0
  ConfLinMap t;        // L1 -> L0
  RepTable rho;        // lower acting on upper's module
};

Report check_crossed_module(const CrossedModule& X);
std::pair<TwoTermConformal, HomotopyNijenhuis> strict_from_crossed(const CrossedModule& X);
CrossedModule crossed_from_strict(const TwoTermConformal& T, const HomotopyNijenhuis& H);
Report strict_crossed_roundtrip(const CrossedModule& X);
NijenhuisLCA crossed_direct_sum(const CrossedModule& X);

// (L_N, L_N, Id, ad)
CrossedModule adjoint_crossed_module(const NijenhuisLCA& n);
// (ker f, L, inc, ad) for a Nijenhuis morphism f : L_N -> H_Q whose kernel is
// spanned by the basis vectors f annihilates.
CrossedModule kernel_crossed_module(const NijenhuisLCA& L, const NijenhuisLCA& H, const ConfLinMap& f);

}  // namespace nlca
