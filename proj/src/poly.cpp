#include "nlca/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace nlca {

int Poly::check_arity(int a) {
  if (a < 0 || a > kMaxLam) throw StructuralError("lambda arity out of range: " + std::to_string(a));
  return a;
}

Poly::Poly(int arity, const Q& c) : ar_(check_arity(arity)) {
  if (c != 0) {
    Q x = c;
    x.canonicalize();
    t_.emplace(Exp{}, x);
  }
}

Poly Poly::del(int arity) {
  Poly p(arity);
  Exp e{};
  e[0] = 1;
  p.t_.emplace(e, 1);
  return p;
}

Poly Poly::lam(int i, int arity) {
  if (i < 1 || i > arity) throw StructuralError("unknown variable lam" + std::to_string(i));
  Poly p(arity);
  Exp e{};
  e[i] = 1;
  p.t_.emplace(e, 1);
  return p;
}

static int total(const Exp& e) {
  int d = 0;
  for (auto x : e) d += x;
  return d;
}

int Poly::degree() const {
  int d = -1;
  for (auto& [e, c] : t_) d = std::max(d, total(e));
  return d;
}

int Poly::degree_in(int v) const {
  int d = 0;
  for (auto& [e, c] : t_) d = std::max(d, int(e[v]));
  return d;
}

Q Poly::constant() const {
  auto it = t_.find(Exp{});
  return it == t_.end() ? Q(0) : it->second;
}

void Poly::add_term(const Exp& e, const Q& c0) {
  if (c0 == 0) return;
  Q c = c0;
  c.canonicalize();
  auto [it, fresh] = t_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  if (ar_ != o.ar_) throw StructuralError("arity mismatch in add");
  for (auto& [e, c] : o.t_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (ar_ != o.ar_) throw StructuralError("arity mismatch in sub");
  for (auto& [e, c] : o.t_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(const Q& c) {
  if (c == 0) {
    t_.clear();
    return *this;
  }
  Q k = c;
  k.canonicalize();
  for (auto& [e, x] : t_) x *= k;
  return *this;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [e, x] : r.t_) x = -x;
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.ar_ != b.ar_) throw StructuralError("arity mismatch in mul");
  Poly r(a.ar_);
  for (auto& [ea, ca] : a.t_)
    for (auto& [eb, cb] : b.t_) {
      Exp e;
      for (int i = 0; i < kNumVars; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

bool operator==(const Poly& a, const Poly& b) { return a.ar_ == b.ar_ && a.t_ == b.t_; }

bool poly_equal(const Poly& a, const Poly& b) {
  if (a.arity() != b.arity()) throw StructuralError("arity mismatch in comparison");
  return a == b;
}

Poly Poly::pow(unsigned e) const {
  Poly r(ar_, 1), base = *this;
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

Poly Poly::compose(const std::vector<Poly>& images) const {
  if (int(images.size()) != ar_ + 1) throw StructuralError("compose: wrong number of images");
  int out = images[0].arity();
  for (auto& im : images)
    if (im.arity() != out) throw StructuralError("compose: images of differing arity");
  Poly r(out);
  if (t_.empty()) return r;
  std::vector<std::vector<Poly>> pw(ar_ + 1);
  for (int v = 0; v <= ar_; ++v) {
    int d = degree_in(v);
    pw[v].reserve(d + 1);
    pw[v].emplace_back(out, 1);
    for (int k = 1; k <= d; ++k) pw[v].push_back(pw[v].back() * images[v]);
  }
  for (auto& [e, c] : t_) {
    Poly m(out, c);
    for (int v = 0; v <= ar_; ++v)
      if (e[v]) m = m * pw[v][e[v]];
    r += m;
  }
  return r;
}

Poly Poly::substitute(int v, const Poly& image) const {
  if (v < 0 || v > ar_) throw StructuralError("substitute: unknown variable");
  std::vector<Poly> im;
  for (int w = 0; w <= ar_; ++w) im.push_back(w == v ? image : var(w, image.arity()));
  return compose(im);
}

Poly Poly::lift(int arity) const {
  if (arity < ar_) throw StructuralError("lift to smaller arity");
  Poly r = *this;
  r.ar_ = check_arity(arity);
  return r;
}

std::string var_name(int v) { return v == 0 ? "del" : "lam" + std::to_string(v); }

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<Exp, Q>> ts(p.terms().begin(), p.terms().end());
  std::stable_sort(ts.begin(), ts.end(), [](auto& a, auto& b) {
    int da = total(a.first), db = total(b.first);
    if (da != db) return da > db;
    return a.first > b.first;
  });
  std::ostringstream os;
  bool first = true;
  for (auto& [e, c] : ts) {
    Q a = abs(c);
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    bool mono = total(e) > 0;
    bool sep = false;
    if (!mono || a != 1) {
      os << a.get_str();
      sep = true;
    }
    for (int v = 0; v < kNumVars; ++v)
      if (e[v]) {
        if (sep) os << "*";
        os << var_name(v);
        if (e[v] > 1) os << "^" << int(e[v]);
        sep = true;
      }
  }
  return os.str();
}

namespace {

class Parser {
 public:
  Parser(const std::string& s, int ar) : s_(s), ar_(ar) {}

  Poly run() {
    Poly p = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& m) { throw ParseError(m, i_); }

  void skip() {
    while (i_ < s_.size() && std::isspace((unsigned char)s_[i_])) ++i_;
  }

  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly r = term();
    for (;;) {
      if (eat('+'))
        r += term();
      else if (eat('-'))
        r -= term();
      else
        return r;
    }
  }

  Poly term() {
    Poly r = unary();
    while (eat('*')) r = r * unary();
    return r;
  }

  Poly unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  Poly power() {
    Poly a = atom();
    if (eat('^')) {
      skip();
      size_t st = i_;
      while (i_ < s_.size() && std::isdigit((unsigned char)s_[i_])) ++i_;
      if (st == i_) fail("expected exponent");
      unsigned long e = std::stoul(s_.substr(st, i_ - st));
      if (e > 64) fail("exponent too large");
      a = a.pow(unsigned(e));
    }
    return a;
  }

  std::string digits() {
    size_t st = i_;
    while (i_ < s_.size() && std::isdigit((unsigned char)s_[i_])) ++i_;
    return s_.substr(st, i_ - st);
  }

  Poly atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of input");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      Poly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit((unsigned char)c)) {
      Q num(digits());
      size_t save = i_;
      skip();
      if (i_ < s_.size() && s_[i_] == '/') {
        ++i_;
        skip();
        std::string d = digits();
        if (d.empty()) fail("expected denominator");
        Q den(d);
        if (den == 0) fail("zero denominator");
        num /= den;
      } else {
        i_ = save;
      }
      return Poly(ar_, num);
    }
    if (std::isalpha((unsigned char)c)) {
      size_t st = i_;
      while (i_ < s_.size() && std::isalnum((unsigned char)s_[i_])) ++i_;
      std::string id = s_.substr(st, i_ - st);
      if (id == "del") return Poly::del(ar_);
      if (id.size() == 4 && id.compare(0, 3, "lam") == 0 && id[3] >= '1' && id[3] <= '4') {
        int k = id[3] - '0';
        if (k > ar_) {
          i_ = st;
          fail("variable " + id + " not in scope");
        }
        return Poly::lam(k, ar_);
      }
      i_ = st;
      fail("unknown identifier '" + id + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const std::string& s_;
  int ar_;
  size_t i_ = 0;
};

}  // namespace

Poly parse_poly(const std::string& s, int arity) { return Parser(s, arity).run(); }

}  // namespace nlca
