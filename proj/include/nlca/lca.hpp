#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlca/poly.hpp"
#include "nlca/report.hpp"

namespace nlca {

/// Direct sum of rank-1 summands, each either free over Q[del] or an
/// evaluation module Q[del]/(del - a).
struct FreeModule {
  std::vector<std::string> names;
  std::vector<std::optional<Q>> eval;  // eval[i] set: del acts on e_i as *eval[i]

  int rank() const { return int(names.size()); }
  bool is_eval(int i) const { return eval[i].has_value(); }
  bool has_eval() const;
  int index_of(const std::string& n) const;  // -1 if absent
  friend bool operator==(const FreeModule& a, const FreeModule& b) {
    return a.names == b.names && a.eval == b.eval;
  }

  static FreeModule free(std::vector<std::string> names);
  static FreeModule evaluation(const std::string& name, const Q& a);
  static FreeModule direct_sum(const FreeModule& a, const FreeModule& b);
};

/// Coordinates of an element over a basis; every entry has the same arity.
using Vec = std::vector<Poly>;

Vec zero_vec(int rank, int arity);
Vec basis_vec(int rank, int i, int arity);
int vec_arity(const Vec& v);
bool is_zero(const Vec& v);
Vec& add_to(Vec& a, const Vec& b);
Vec& sub_from(Vec& a, const Vec& b);
Vec scaled(const Vec& v, const Q& c);
Vec mul(const Poly& p, const Vec& v);
Vec neg(const Vec& v);
Vec compose(const Vec& v, const std::vector<Poly>& images);
Vec lift(const Vec& v, int arity);
// Replace del by the module's scalar when it is an evaluation module.
Vec reduce(const FreeModule& m, const Vec& v);
Poly reduce(const FreeModule& m, const Poly& p);
std::string to_string(const Vec& v, const FreeModule& m);

/// del-linear map, stored by images of the source basis.
struct ConfLinMap {
  FreeModule src, tgt;
  std::vector<Vec> cols;  // cols[j] = image of e_j, arity 0

  static ConfLinMap zero(const FreeModule& s, const FreeModule& t);
  static ConfLinMap identity(const FreeModule& m);
  static ConfLinMap scalar(const FreeModule& m, const Q& c);
  static ConfLinMap diag(const FreeModule& m, const std::vector<Q>& d);

  Vec apply(const Vec& x) const;
  Vec apply(const Vec& x, int arity) const;  // also for rank-0 sources
  const Poly& at(int row, int col) const { return cols[col][row]; }
  bool is_zero() const;
  int max_degree() const;
  friend bool operator==(const ConfLinMap& a, const ConfLinMap& b);
};

ConfLinMap operator*(const ConfLinMap& a, const ConfLinMap& b);  // a after b
ConfLinMap operator+(const ConfLinMap& a, const ConfLinMap& b);
ConfLinMap operator-(const ConfLinMap& a, const ConfLinMap& b);
ConfLinMap operator*(const Q& c, const ConfLinMap& a);
ConfLinMap power(const ConfLinMap& a, int k);
ConfLinMap direct_sum(const ConfLinMap& a, const ConfLinMap& b);
// Inverse over Q[del] if the determinant is a nonzero constant (after reduction).
std::optional<ConfLinMap> inverse(const ConfLinMap& a);
std::string to_string(const ConfLinMap& a);

/// Action table: entry [i][j] = rho(e_i)_lam1 m_j, arity 1.
using Table = std::vector<std::vector<Vec>>;

// rho(a)_Lam m = sum a_i(del->-Lam) m_j(del->del+Lam) T_ij(del, lam1->Lam).
// a, m and Lam share one arity; result has that arity.
Vec act(const Table& t, const FreeModule& tgt, const Vec& a, const Vec& m, const Poly& Lam);

struct LCA {
  FreeModule module;
  Table table;  // [e_i lam e_j]

  int rank() const { return module.rank(); }
  Vec bracket(const Vec& a, const Vec& b, const Poly& Lam) const { return act(table, module, a, b, Lam); }
  static LCA zero(const FreeModule& m);
  int max_degree() const;
};

struct RepTable {
  LCA algebra;
  FreeModule module;
  Table action;

  Vec apply(const Vec& a, const Vec& m, const Poly& Lam) const { return act(action, module, a, m, Lam); }
  static RepTable adjoint(const LCA& l) { return {l, l.module, l.table}; }
  static RepTable zero(const LCA& l, const FreeModule& m);
  int max_degree() const;
};

Table zero_table(int rs, int rt);

// Bracket of two basis elements of a table at the free variable lam1.
Vec eval_bracket(const LCA& l, const Vec& a, const Vec& b, int slot);

Report check_lca(const LCA& l);
Report check_representation(const RepTable& r);
LCA semidirect(const RepTable& r);
Report check_morphism(const LCA& src, const LCA& dst, const ConfLinMap& f);

}  // namespace nlca
