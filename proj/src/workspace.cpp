#include "nlca/workspace.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace nlca {

Diagnostic::Diagnostic(const std::string& f, int l, int c, const std::string& msg)
    : std::runtime_error(f + ":" + std::to_string(l) + ":" + std::to_string(c) + ": " + msg), file(f), line(l), col(c) {}

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Module: return "module";
    case Kind::Algebra: return "algebra";
    case Kind::Map: return "map";
    case Kind::Rep: return "rep";
    case Kind::Cocycle: return "cocycle";
    case Kind::Extension: return "extension";
    case Kind::Crossed: return "crossed";
  }
  return "?";
}

std::optional<Kind> Workspace::kind(const std::string& n) const {
  auto it = kinds.find(n);
  if (it == kinds.end()) return std::nullopt;
  return it->second;
}

NijenhuisLCA Workspace::nlca(const std::string& a) const {
  auto& d = algebras.at(a);
  return NijenhuisLCA::raw(d.lca, d.N);
}

ConfLinMap Workspace::map_or_builtin(const std::string& n, const FreeModule& src, const FreeModule& tgt) const {
  if (n == "id") {
    if (!(src == tgt)) throw StructuralError("'id' needs equal source and target");
    return ConfLinMap::identity(src);
  }
  if (n == "zero") return ConfLinMap::zero(src, tgt);
  auto it = maps.find(n);
  if (it == maps.end()) throw StructuralError("unknown map '" + n + "'");
  if (!(it->second.map.src == src) || !(it->second.map.tgt == tgt))
    throw StructuralError("map '" + n + "' has the wrong source or target");
  return it->second.map;
}

ExtensionData Workspace::extension(const std::string& n) const {
  auto& cd = cocycles.at(extensions.at(n).cocycle);
  return build_extension(cd.c, nlca(cd.over), nlca(cd.by));
}

std::string Workspace::module_name(const FreeModule& m) const {
  for (auto& [n, k] : order)
    if (k == Kind::Module && modules.at(n) == m) return n;
  return "?";
}

Vec parse_vec(const std::string& s, const FreeModule& m, int arity) {
  Vec v = zero_vec(m.rank(), arity);
  size_t i = 0, n = s.size();
  auto ws = [&] {
    while (i < n && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  auto ident = [&]() -> std::string {
    size_t b = i;
    while (i < n && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
    if (b == i) throw ParseError("expected basis name", b);
    return s.substr(b, i - b);
  };
  ws();
  if (i < n && s[i] == '0') {
    size_t j = i + 1;
    while (j < n && std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j == n) return v;
  }
  bool first = true;
  while (true) {
    ws();
    if (i == n) {
      if (first) throw ParseError("empty vector literal", i);
      break;
    }
    Q sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = -1;
      else if (first) throw ParseError("unexpected '+'", i);
      ++i;
      ws();
    } else if (!first) {
      throw ParseError("expected '+' or '-'", i);
    }
    first = false;
    Poly c(arity, 1);
    if (i < n && s[i] == '(') {
      size_t b = ++i;
      int depth = 1;
      while (i < n && depth) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') --depth;
        ++i;
      }
      if (depth) throw ParseError("unbalanced parenthesis", b - 1);
      try {
        c = parse_poly(s.substr(b, i - 1 - b), arity);
      } catch (const ParseError& e) {
        throw ParseError(e.what(), b + e.col);
      }
      ws();
      if (i == n || s[i] != '*') throw ParseError("expected '*' before basis name", i);
      ++i;
      ws();
    }
    size_t at = i;
    std::string name = ident();
    int k = m.index_of(name);
    if (k < 0) throw ParseError("unknown basis element '" + name + "'", at);
    v[k] += sign * c;
  }
  return reduce(m, v);
}

namespace {

bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.'; }

struct Tok {
  std::string s;
  int col;  // 1-based
};

std::vector<Tok> split(const std::string& line) {
  std::vector<Tok> t;
  size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    size_t b = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    t.push_back({line.substr(b, i - b), int(b) + 1});
  }
  return t;
}

class Parser {
 public:
  Parser(Workspace& ws, const std::string& file) : ws_(ws), file_(file) {}

  void run(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) lines_.push_back(strip(raw));
    while (next_ < lines_.size()) statement();
  }

 private:
  Workspace& ws_;
  std::string file_;
  std::vector<std::string> lines_;
  size_t next_ = 0;
  int lineno_ = 0;

  static std::string strip(std::string s) {
    auto h = s.find('#');
    if (h != std::string::npos) s.erase(h);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    return s;
  }

  [[noreturn]] void fail(int col, const std::string& msg) { throw Diagnostic(file_, lineno_, col, msg); }

  void expect_words(const std::vector<Tok>& t, size_t n, const std::string& form) {
    if (t.size() != n) fail(t.empty() ? 1 : t[0].col, "expected '" + form + "'");
  }

  std::string new_name(const Tok& t) {
    if (t.s.empty() || !std::all_of(t.s.begin(), t.s.end(), name_char) || !std::isalpha(static_cast<unsigned char>(t.s[0])))
      fail(t.col, "invalid name '" + t.s + "'");
    if (t.s == "id" || t.s == "zero") fail(t.col, "'" + t.s + "' is reserved");
    if (ws_.has(t.s)) fail(t.col, "duplicate name '" + t.s + "' (already a " + kind_name(*ws_.kind(t.s)) + ")");
    return t.s;
  }

  const std::string& ref(const Tok& t, Kind k) {
    auto kk = ws_.kind(t.s);
    if (!kk) fail(t.col, "unresolved reference '" + t.s + "'");
    if (*kk != k) fail(t.col, "'" + t.s + "' is a " + kind_name(*kk) + ", expected a " + kind_name(k));
    return t.s;
  }

  void define(const std::string& n, Kind k) {
    ws_.kinds[n] = k;
    ws_.order.emplace_back(n, k);
  }

  int basis(const Tok& t, const FreeModule& m) {
    int i = m.index_of(t.s);
    if (i < 0) fail(t.col, "unknown basis element '" + t.s + "'");
    return i;
  }

  Vec vec_at(const std::string& line, size_t from, const FreeModule& m, int arity) {
    try {
      return parse_vec(line.substr(from), m, arity);
    } catch (const ParseError& e) {
      fail(int(from + e.col) + 1, e.what());
    }
  }

  // Body lines up to "end"; returns them with their line numbers.
  std::vector<std::pair<int, std::string>> block() {
    std::vector<std::pair<int, std::string>> body;
    int open = lineno_;
    while (next_ < lines_.size()) {
      lineno_ = int(++next_);
      const std::string& l = lines_[next_ - 1];
      auto t = split(l);
      if (t.empty()) continue;
      if (t[0].s == "end") {
        if (t.size() != 1) fail(t[1].col, "unexpected text after 'end'");
        return body;
      }
      body.emplace_back(lineno_, l);
    }
    lineno_ = open;
    fail(1, "block is not closed with 'end'");
  }

  ConfLinMap operator_map(const Tok& t, const FreeModule& m) {
    if (t.s == "id") return ConfLinMap::identity(m);
    if (t.s == "zero") return ConfLinMap::zero(m, m);
    const auto& n = ref(t, Kind::Map);
    const auto& d = ws_.maps.at(n);
    if (!(d.map.src == m) || !(d.map.tgt == m)) fail(t.col, "operator '" + n + "' is not an endomorphism of the module");
    return d.map;
  }

  // "[a b] = VEC"
  std::tuple<int, int, size_t> pair_line(const std::string& l, const FreeModule& left, const FreeModule& right) {
    size_t lb = l.find('['), rb = l.find(']'), eq = l.find('=');
    if (lb == std::string::npos || rb == std::string::npos || eq == std::string::npos || !(lb < rb && rb < eq))
      fail(1, "expected '[a b] = vector'");
    auto inner = split(l.substr(lb + 1, rb - lb - 1));
    if (inner.size() != 2) fail(int(lb) + 2, "expected two basis names inside brackets");
    for (auto& t : inner) t.col += int(lb) + 1;
    return {basis(inner[0], left), basis(inner[1], right), eq + 1};
  }

  void statement() {
    lineno_ = int(++next_);
    const std::string& l = lines_[next_ - 1];
    auto t = split(l);
    if (t.empty()) return;
    const std::string& w = t[0].s;
    if (w == "module") return module(l, t);
    if (w == "algebra") return algebra(t);
    if (w == "map") return map(t);
    if (w == "rep") return rep(t);
    if (w == "cocycle") return cocycle(t);
    if (w == "extension") {
      expect_words(t, 5, "extension NAME = build COCYCLE");
      if (t[2].s != "=" || t[3].s != "build") fail(t[2].col, "expected '= build'");
      auto n = new_name(t[1]);
      ws_.extensions[n] = {ref(t[4], Kind::Cocycle)};
      return define(n, Kind::Extension);
    }
    if (w == "crossed") {
      expect_words(t, 5, "crossed NAME = adjoint ALGEBRA");
      if (t[2].s != "=" || t[3].s != "adjoint") fail(t[2].col, "expected '= adjoint'");
      auto n = new_name(t[1]);
      ws_.crossed[n] = {ref(t[4], Kind::Algebra)};
      return define(n, Kind::Crossed);
    }
    fail(t[0].col, "unknown statement '" + w + "'");
  }

  void module(const std::string&, const std::vector<Tok>& t) {
    if (t.size() < 3 || t[2].s != "=") fail(t[0].col, "expected 'module NAME = basis...'");
    auto n = new_name(t[1]);
    FreeModule m;
    for (size_t i = 3; i < t.size(); ++i) {
      std::string b = t[i].s;
      std::optional<Q> ev;
      auto at = b.find('@');
      if (at != std::string::npos) {
        try {
          ev = Q(b.substr(at + 1));
          ev->canonicalize();
        } catch (const std::exception&) {
          fail(t[i].col + int(at) + 1, "invalid evaluation scalar");
        }
        b = b.substr(0, at);
      }
      if (b.empty() || !std::all_of(b.begin(), b.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }) ||
          !std::isalpha(static_cast<unsigned char>(b[0])) || b == "del" || b.rfind("lam", 0) == 0)
        fail(t[i].col, "invalid basis name '" + b + "'");
      if (m.index_of(b) >= 0) fail(t[i].col, "duplicate basis element '" + b + "'");
      m.names.push_back(b);
      m.eval.push_back(ev);
    }
    ws_.modules[n] = m;
    define(n, Kind::Module);
  }

  void algebra(const std::vector<Tok>& t) {
    expect_words(t, 4, "algebra NAME on MODULE");
    if (t[2].s != "on") fail(t[2].col, "expected 'on'");
    auto n = new_name(t[1]);
    const auto& mn = ref(t[3], Kind::Module);
    const FreeModule& m = ws_.modules.at(mn);
    AlgebraDef d{mn, LCA::zero(m), "", ConfLinMap::zero(m, m)};
    for (auto& [no, l] : block()) {
      lineno_ = no;
      auto bt = split(l);
      if (bt[0].s == "operator") {
        expect_words(bt, 2, "operator MAP");
        d.N = operator_map(bt[1], m);
        d.op = bt[1].s;
        continue;
      }
      auto [i, j, at] = pair_line(l, m, m);
      d.lca.table[i][j] = vec_at(l, at, m, 1);
    }
    ws_.algebras[n] = d;
    define(n, Kind::Algebra);
  }

  void map(const std::vector<Tok>& t) {
    expect_words(t, 6, "map NAME : SRC -> TGT");
    if (t[2].s != ":" || t[4].s != "->") fail(t[2].col, "expected 'map NAME : SRC -> TGT'");
    auto n = new_name(t[1]);
    const auto& sn = ref(t[3], Kind::Module);
    const auto& tn = ref(t[5], Kind::Module);
    const FreeModule &s = ws_.modules.at(sn), &g = ws_.modules.at(tn);
    MapDef d{sn, tn, ConfLinMap::zero(s, g)};
    for (auto& [no, l] : block()) {
      lineno_ = no;
      auto bt = split(l);
      if (bt.size() < 3 || bt[1].s != "->") fail(bt[0].col, "expected 'basis -> vector'");
      int j = basis(bt[0], s);
      d.map.cols[j] = vec_at(l, size_t(bt[1].col + 1), g, 0);
    }
    ws_.maps[n] = d;
    define(n, Kind::Map);
  }

  void rep(const std::vector<Tok>& t) {
    expect_words(t, 6, "rep NAME of ALGEBRA on MODULE");
    if (t[2].s != "of" || t[4].s != "on") fail(t[2].col, "expected 'rep NAME of ALGEBRA on MODULE'");
    auto n = new_name(t[1]);
    const auto& an = ref(t[3], Kind::Algebra);
    const auto& mn = ref(t[5], Kind::Module);
    const LCA& a = ws_.algebras.at(an).lca;
    const FreeModule& m = ws_.modules.at(mn);
    RepDef d{an, mn, RepTable::zero(a, m), "", ConfLinMap::zero(m, m)};
    for (auto& [no, l] : block()) {
      lineno_ = no;
      auto bt = split(l);
      if (bt[0].s == "operator") {
        expect_words(bt, 2, "operator MAP");
        d.NM = operator_map(bt[1], m);
        d.op = bt[1].s;
        continue;
      }
      auto [i, j, at] = pair_line(l, a.module, m);
      d.rep.action[i][j] = vec_at(l, at, m, 1);
    }
    ws_.reps[n] = d;
    define(n, Kind::Rep);
  }

  void cocycle(const std::vector<Tok>& t) {
    expect_words(t, 6, "cocycle NAME over ALGEBRA by ALGEBRA");
    if (t[2].s != "over" || t[4].s != "by") fail(t[2].col, "expected 'cocycle NAME over ALGEBRA by ALGEBRA'");
    auto n = new_name(t[1]);
    const auto& over = ref(t[3], Kind::Algebra);
    const auto& by = ref(t[5], Kind::Algebra);
    const FreeModule &L = ws_.modules.at(ws_.algebras.at(over).module), &H = ws_.modules.at(ws_.algebras.at(by).module);
    CocycleDef d{over, by, zero_cocycle(ws_.nlca(over), ws_.nlca(by))};
    for (auto& [no, l] : block()) {
      lineno_ = no;
      auto bt = split(l);
      size_t eq = l.find('=');
      if (eq == std::string::npos) fail(bt[0].col, "expected '='");
      const std::string& w = bt[0].s;
      if (w == "chi") {
        if (bt.size() < 5 || bt[3].s != "=") fail(bt[0].col, "expected 'chi a b = vector'");
        d.c.chi[basis(bt[1], L)][basis(bt[2], L)] = vec_at(l, eq + 1, H, 1);
      } else if (w == "rho") {
        if (bt.size() < 5 || bt[3].s != "=") fail(bt[0].col, "expected 'rho a h = vector'");
        d.c.rho[basis(bt[1], L)][basis(bt[2], H)] = vec_at(l, eq + 1, H, 1);
      } else if (w == "phi") {
        if (bt.size() < 4 || bt[2].s != "=") fail(bt[0].col, "expected 'phi a = vector'");
        d.c.phi.cols[basis(bt[1], L)] = vec_at(l, eq + 1, H, 0);
      } else {
        fail(bt[0].col, "expected chi, rho or phi");
      }
    }
    ws_.cocycles[n] = d;
    define(n, Kind::Cocycle);
  }
};

std::string read_file(const std::string& p) {
  std::ifstream in(p);
  if (!in) throw Diagnostic(p, 0, 0, "cannot read file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void print_pairs(std::ostringstream& os, const Table& t, const FreeModule& a, const FreeModule& b, const FreeModule& tgt,
                 const std::string& pre, bool brackets) {
  for (int i = 0; i < a.rank(); ++i)
    for (int j = 0; j < b.rank(); ++j)
      if (!is_zero(t[i][j])) {
        os << "  " << pre << (brackets ? "[" : "") << a.names[i] << " " << b.names[j] << (brackets ? "]" : "")
           << " = " << to_string(t[i][j], tgt) << "\n";
      }
}

}  // namespace

void parse_into(Workspace& ws, const std::string& text, const std::string& file) { Parser(ws, file).run(text); }

Workspace parse_files(const std::vector<std::string>& paths) {
  Workspace ws;
  for (auto& p : paths) parse_into(ws, read_file(p), p);
  return ws;
}

std::string print_workspace(const Workspace& ws) {
  std::ostringstream os;
  for (auto& [n, k] : ws.order) {
    switch (k) {
      case Kind::Module: {
        auto& m = ws.modules.at(n);
        os << "module " << n << " =";
        for (int i = 0; i < m.rank(); ++i) {
          os << " " << m.names[i];
          if (m.eval[i]) os << "@" << m.eval[i]->get_str();
        }
        os << "\n";
        break;
      }
      case Kind::Map: {
        auto& d = ws.maps.at(n);
        os << "map " << n << " : " << d.src << " -> " << d.tgt << "\n";
        for (int j = 0; j < d.map.src.rank(); ++j)
          if (!is_zero(d.map.cols[j])) os << "  " << d.map.src.names[j] << " -> " << to_string(d.map.cols[j], d.map.tgt) << "\n";
        os << "end\n";
        break;
      }
      case Kind::Algebra: {
        auto& d = ws.algebras.at(n);
        auto& m = ws.modules.at(d.module);
        os << "algebra " << n << " on " << d.module << "\n";
        print_pairs(os, d.lca.table, m, m, m, "", true);
        if (!d.op.empty()) os << "  operator " << d.op << "\n";
        os << "end\n";
        break;
      }
      case Kind::Rep: {
        auto& d = ws.reps.at(n);
        auto& m = ws.modules.at(d.module);
        os << "rep " << n << " of " << d.algebra << " on " << d.module << "\n";
        print_pairs(os, d.rep.action, d.rep.algebra.module, m, m, "", true);
        if (!d.op.empty()) os << "  operator " << d.op << "\n";
        os << "end\n";
        break;
      }
      case Kind::Cocycle: {
        auto& d = ws.cocycles.at(n);
        auto &L = ws.modules.at(ws.algebras.at(d.over).module), &H = ws.modules.at(ws.algebras.at(d.by).module);
        os << "cocycle " << n << " over " << d.over << " by " << d.by << "\n";
        print_pairs(os, d.c.chi, L, L, H, "chi ", false);
        print_pairs(os, d.c.rho, L, H, H, "rho ", false);
        for (int i = 0; i < L.rank(); ++i)
          if (!is_zero(d.c.phi.cols[i])) os << "  phi " << L.names[i] << " = " << to_string(d.c.phi.cols[i], H) << "\n";
        os << "end\n";
        break;
      }
      case Kind::Extension: os << "extension " << n << " = build " << ws.extensions.at(n).cocycle << "\n"; break;
      case Kind::Crossed: os << "crossed " << n << " = adjoint " << ws.crossed.at(n).algebra << "\n"; break;
    }
  }
  return os.str();
}

}  // namespace nlca
