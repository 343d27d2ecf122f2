#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlca {

using Q = mpq_class;

// Variable 0 is del, variables 1..4 are lam1..lam4.
constexpr int kMaxLam = 4;
constexpr int kNumVars = kMaxLam + 1;
using Exp = std::array<uint8_t, kNumVars>;

struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact polynomial over Q in del and lam1..lam_k, k = arity.
class Poly {
 public:
  using Terms = std::map<Exp, Q>;

  Poly() = default;
  explicit Poly(int arity) : ar_(check_arity(arity)) {}
  Poly(int arity, const Q& c);

  static Poly del(int arity);
  static Poly lam(int i, int arity);
  static Poly var(int v, int arity) { return v == 0 ? del(arity) : lam(v, arity); }

  int arity() const { return ar_; }
  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  int degree() const;
  int degree_in(int v) const;
  bool has_var(int v) const { return degree_in(v) > 0; }
  Q constant() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Q& c);
  Poly operator-() const;
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Q& c) { return a *= c; }
  friend Poly operator*(const Q& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly pow(unsigned e) const;

  // Simultaneous substitution: variable v of *this becomes images[v]
  // (images.size() == arity()+1).  All images share the result arity.
  Poly compose(const std::vector<Poly>& images) const;
  Poly substitute(int v, const Poly& image) const;
  Poly lift(int arity) const;  // reinterpret in a larger variable set

  void add_term(const Exp& e, const Q& c);

 private:
  static int check_arity(int a);
  int ar_ = 0;
  Terms t_;
};

bool poly_equal(const Poly& a, const Poly& b);

std::string to_string(const Poly& p);
std::string var_name(int v);

// Literal grammar: rationals, del, lam1..lam4, + - * ^, parentheses.
// Throws ParseError carrying the offending column (0-based).
struct ParseError : std::runtime_error {
  size_t col;
  ParseError(const std::string& m, size_t c) : std::runtime_error(m), col(c) {}
};
Poly parse_poly(const std::string& s, int arity);

}  // namespace nlca
