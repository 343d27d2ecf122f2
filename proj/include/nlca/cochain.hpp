#pragma once

#include <functional>
#include <random>

#include "nlca/lca.hpp"

namespace nlca {

/// Degree-n conformal cochain L^n -> M[lam1..lam_{n-1}], stored by basis tuples.
/// The last argument's lambda is implicit: lam_n = -del - lam1 - ... - lam_{n-1}.
struct Cochain {
  int degree = 0;
  FreeModule src, tgt;
  std::vector<Vec> vals;  // rank(src)^degree entries, each of arity max(degree-1, 0)

  static Cochain zero(int n, const FreeModule& src, const FreeModule& tgt);
  int value_arity() const { return degree > 0 ? degree - 1 : 0; }
  const Vec& at(const std::vector<int>& t) const;
  Vec& at(const std::vector<int>& t);
  bool is_zero() const;
  int max_degree() const;
  friend bool operator==(const Cochain& a, const Cochain& b);
  friend bool operator!=(const Cochain& a, const Cochain& b) { return !(a == b); }
};

Cochain operator+(const Cochain& a, const Cochain& b);
Cochain operator-(const Cochain& a, const Cochain& b);
Cochain operator*(const Q& c, const Cochain& a);
std::string to_string(const Cochain& f);
// First differing entry, or empty when equal.
std::string first_difference(const Cochain& a, const Cochain& b);

Cochain from_map(const ConfLinMap& f);
ConfLinMap to_map(const Cochain& f);
Cochain from_elem(const Vec& x, const FreeModule& src, const FreeModule& tgt);
Cochain bracket_cochain(const LCA& l);  // m_c

/// An argument inside a composite expression: coordinates with their own
/// local del, and the lambda attached to the slot.
struct Arg {
  Vec v;
  Poly lam;
};

std::vector<Arg> basis_args(const std::vector<int>& t, int rank, int arity);

// f(args) in the free ring of the given arity.  Explicit lambdas of the
// first n-1 arguments are used; the last argument's lambda is implicit.
Vec evaluate(const Cochain& f, const std::vector<Arg>& args, int arity);

// Assemble a degree-n cochain from values computed with free lam1..lam_n,
// then eliminate lam_n := -del - (lam1 + ... + lam_{n-1}).
Cochain build(int n, const FreeModule& src, const FreeModule& tgt,
              const std::function<Vec(const std::vector<int>&)>& f);

// (f o sigma)(a_1..a_n) = f(a_sigma(1), ..., a_sigma(n)) with lambdas carried along.
Cochain permuted(const Cochain& f, const std::vector<int>& sigma);
Cochain antisymmetrize(const Cochain& f);  // (1/n!) sum sgn(s) f o s
Report check_skew(const Cochain& f);

int perm_sign(const std::vector<int>& p);
// All (k, n-k) shuffles of 0..n-1 as (first block, second block).
std::vector<std::pair<std::vector<int>, std::vector<int>>> shuffles(int n, int k);

// Seeded random skew cochain with entries of total degree <= maxdeg.
Cochain random_cochain(int n, const FreeModule& src, const FreeModule& tgt, int maxdeg, std::mt19937_64& rng);
ConfLinMap random_map(const FreeModule& src, const FreeModule& tgt, int maxdeg, std::mt19937_64& rng);
Poly random_poly(int arity, int maxdeg, std::mt19937_64& rng, bool with_del = true);

}  // namespace nlca
