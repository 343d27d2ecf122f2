#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include "nlca/deformation.hpp"
#include "nlca/parallel.hpp"
#include "nlca/wells.hpp"
#include "nlca/workspace.hpp"

#ifndef NLCA_FIXTURE_DIR
#define NLCA_FIXTURE_DIR "fixtures"
#endif

namespace nlca::cli {

namespace {

namespace fs = std::filesystem;

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Out {
  std::string command;
  Status status = Status::Pass;
  std::vector<Check> checks;
  std::vector<std::pair<std::string, std::string>> info;
  std::vector<std::pair<std::string, std::string>> sections;  // title, multi-line body

  void merge(const Report& r, const std::string& prefix = "") {
    for (auto c : r.checks) {
      c.name = prefix + c.name;
      checks.push_back(std::move(c));
    }
    for (auto& [k, v] : r.info) info.emplace_back(prefix + k, v);
    if (status == Status::Pass) status = r.status;
  }
  void add(Check c) {
    if (!c.pass && status == Status::Pass) status = Status::Fail;
    checks.push_back(std::move(c));
  }
  void note(const std::string& k, const std::string& v) { info.emplace_back(k, v); }
  void section(const std::string& t, const std::string& body) { sections.emplace_back(t, body); }

  std::string str() const {
    std::ostringstream os;
    os << "command: " << command << "\n";
    os << "status: " << status_name(status) << "\n";
    if (!checks.empty()) {
      os << "checks:\n";
      for (auto& c : checks) {
        os << "  " << c.name << ": " << (c.pass ? "pass" : "fail") << "\n";
        if (!c.pass && !c.witness.empty()) os << "    witness: " << c.witness << "\n";
      }
    }
    if (!info.empty()) {
      os << "info:\n";
      for (auto& [k, v] : info) os << "  " << k << ": " << v << "\n";
    }
    for (auto& [t, body] : sections) {
      os << t << ":\n";
      std::istringstream in(body);
      std::string line;
      while (std::getline(in, line))
        if (!line.empty()) os << "  " << line << "\n";
    }
    return os.str();
  }
};

int exit_code(Status s) {
  switch (s) {
    case Status::Pass: return 0;
    case Status::Fail:
    case Status::Infeasible:
    case Status::Precondition: return 1;
    case Status::Unsupported: return 2;
  }
  return 3;
}

std::string map_text(const ConfLinMap& f) {
  std::string s;
  for (int j = 0; j < f.src.rank(); ++j) s += f.src.names[j] + " -> " + to_string(f.cols[j], f.tgt) + "\n";
  return s.empty() ? "0\n" : s;
}

std::vector<std::string> fixture_files() {
  std::vector<std::string> dirs;
  if (const char* env = std::getenv("NLCA_FIXTURE_PATH")) {
    std::string p = env;
    size_t b = 0;
    while (b <= p.size()) {
      size_t e = p.find(':', b);
      if (e == std::string::npos) e = p.size();
      if (e > b) dirs.push_back(p.substr(b, e - b));
      b = e + 1;
    }
  } else {
    dirs.push_back(NLCA_FIXTURE_DIR);
  }
  std::vector<std::string> files;
  for (auto& d : dirs) {
    std::vector<std::string> here;
    std::error_code ec;
    for (auto& ent : fs::directory_iterator(d, ec))
      if (ent.is_regular_file() && ent.path().filename().string()[0] != '.') here.push_back(ent.path().string());
    if (ec) throw Usage("cannot read fixture directory '" + d + "'");
    std::sort(here.begin(), here.end());
    files.insert(files.end(), here.begin(), here.end());
  }
  return files;
}

Kind need(const Workspace& ws, const std::string& n, std::initializer_list<Kind> ok) {
  auto k = ws.kind(n);
  if (!k) throw Usage("unknown object '" + n + "'");
  if (std::find(ok.begin(), ok.end(), *k) == ok.end())
    throw Usage("'" + n + "' is a " + kind_name(*k) + ", which this verb does not accept");
  return *k;
}

struct Args {
  std::string name, n1, coeffs = "adjoint", complex = "delta", equiv, alpha = "id", beta = "id", eta;
  int degree = 2, bound = -1;
  bool solve = false;
  std::optional<unsigned> seed;
};

void do_check(const Workspace& ws, const Args& a, Out& o) {
  Kind k = need(ws, a.name, {Kind::Module, Kind::Algebra, Kind::Map, Kind::Rep, Kind::Cocycle, Kind::Extension,
                             Kind::Crossed});
  o.note("kind", kind_name(k));
  switch (k) {
    case Kind::Module: {
      auto& m = ws.modules.at(a.name);
      o.note("rank", std::to_string(m.rank()));
      break;
    }
    case Kind::Map: {
      auto& f = ws.maps.at(a.name).map;
      o.note("invertible", inverse(f) ? "yes" : "no");
      o.note("max_degree", std::to_string(f.max_degree()));
      break;
    }
    case Kind::Algebra: {
      auto& d = ws.algebras.at(a.name);
      o.merge(check_lca(d.lca));
      if (!d.op.empty()) o.merge(check_nijenhuis(d.lca, d.N), "operator_");
      if (a.seed && o.status == Status::Pass) {
        // delta^2 = 0 on seeded random cochains with adjoint coefficients
        std::mt19937_64 rng(*a.seed);
        auto ad = RepTable::adjoint(d.lca);
        bool ok = true;
        for (int n = 1; n <= 2 && ok; ++n) {
          auto f = random_cochain(n, d.lca.module, d.lca.module, 1, rng);
          ok = apply_delta(apply_delta(f, ad), ad).is_zero();
        }
        o.add({"random_delta_squared", ok, ok ? "" : "delta^2 f != 0"});
        o.note("seed", std::to_string(*a.seed));
      }
      break;
    }
    case Kind::Rep: {
      auto& d = ws.reps.at(a.name);
      o.merge(check_representation(d.rep));
      if (!d.op.empty()) o.merge(check_nij_representation(ws.nlca(d.algebra), {d.rep, d.NM}), "operator_");
      break;
    }
    case Kind::Cocycle: {
      auto& d = ws.cocycles.at(a.name);
      o.merge(check_nonabelian_cocycle(d.c, ws.nlca(d.over), ws.nlca(d.by)));
      break;
    }
    case Kind::Extension: {
      auto& cd = ws.cocycles.at(ws.extensions.at(a.name).cocycle);
      Report pre = check_nonabelian_cocycle(cd.c, ws.nlca(cd.over), ws.nlca(cd.by));
      if (!pre.ok()) {
        o.merge(pre, "cocycle_");
        o.status = Status::Precondition;
        break;
      }
      auto e = ws.extension(a.name);
      o.merge(check_extension_data(e));
      if (o.status == Status::Pass) o.add({"roundtrip", extract_cocycle(e) == cd.c, ""});
      break;
    }
    case Kind::Crossed: {
      auto X = adjoint_crossed_module(ws.nlca(ws.crossed.at(a.name).algebra));
      o.merge(check_crossed_module(X));
      if (o.status == Status::Pass) {
        o.merge(strict_crossed_roundtrip(X), "roundtrip_");
        auto D = crossed_direct_sum(X);
        o.merge(check_nijenhuis(D.algebra, D.N), "direct_sum_");
      }
      break;
    }
  }
}

void do_deform(const Workspace& ws, const Args& a, Out& o) {
  need(ws, a.name, {Kind::Algebra});
  if (a.n1.empty()) throw Usage("deform needs --n1 MAP");
  auto base = ws.nlca(a.name);
  Report bn = check_nijenhuis(base.algebra, base.N);
  if (!bn.ok()) {
    o.merge(bn, "base_");
    o.status = Status::Precondition;
    return;
  }
  auto s = DeformationSeries::make(base, {ws.map_or_builtin(a.n1, base.algebra.module, base.algebra.module)});
  o.merge(infinitesimal_cocycle(s), "n1_");
  if (o.status != Status::Pass) return;
  auto ob = obstruction(s, a.bound);
  o.merge(ob.report, "ob_");
  o.section("obstruction", to_string(ob.ob));
  if (ob.next) o.section("next_term", map_text(*ob.next));
  if (ob.status.rfind("obstructed", 0) == 0 && o.status == Status::Pass) o.status = Status::Infeasible;
}

void do_cohomology(const Workspace& ws, const Args& a, Out& o) {
  need(ws, a.name, {Kind::Algebra});
  auto n = ws.nlca(a.name);
  RepTable rep = RepTable::adjoint(n.algebra);
  ConfLinMap NM = n.N;
  if (a.coeffs != "adjoint") {
    need(ws, a.coeffs, {Kind::Rep});
    auto& d = ws.reps.at(a.coeffs);
    if (d.algebra != a.name) throw Usage("'" + a.coeffs + "' is a representation of " + d.algebra);
    rep = d.rep;
    NM = d.NM;
  }
  if (a.degree < 1 || a.degree > 3) throw Usage("--degree must lie in 1..3");
  int D = a.bound < 0 ? 2 : a.bound;
  ComplexSpec cx;
  if (a.complex == "delta") cx = delta_complex(rep);
  else if (a.complex == "dn") cx = dn_complex(n, {rep, NM});
  else if (a.complex == "dnl") cx = dnl_complex(n, {rep, NM});
  else throw Usage("--complex must be delta, dn or dnl");
  auto r = solve_truncated(cx, a.degree, D);
  o.note("complex", a.complex);
  o.note("degree", std::to_string(a.degree));
  o.note("bound", std::to_string(D));
  o.note("unknowns", std::to_string(r.unknowns));
  o.note("equations", std::to_string(r.equations));
  o.note("rank", std::to_string(r.rank));
  o.note("cocycle_dim", std::to_string(r.cocycle_dim));
  o.note("coboundary_dim", std::to_string(r.coboundary_dim));
  o.note("h_dim", std::to_string(r.h_dim));
  std::string basis;
  for (size_t i = 0; i < r.cocycle_basis.size(); ++i)
    for (size_t c = 0; c < r.cocycle_basis[i].size(); ++c) {
      std::istringstream in(to_string(r.cocycle_basis[i][c]));
      std::string line;
      while (std::getline(in, line)) basis += "z" + std::to_string(i) + "." + std::to_string(c) + " " + line + "\n";
    }
  if (!basis.empty()) o.section("cocycle_basis", basis);
}

void do_extend(const Workspace& ws, const Args& a, Out& o) {
  need(ws, a.name, {Kind::Cocycle});
  auto& d = ws.cocycles.at(a.name);
  auto L = ws.nlca(d.over), H = ws.nlca(d.by);
  Report pre = check_nonabelian_cocycle(d.c, L, H);
  o.merge(pre, "cocycle_");
  if (!pre.ok()) {
    o.status = Status::Precondition;
    return;
  }
  auto e = build_extension(d.c, L, H);
  o.merge(check_extension_data(e), "extension_");
  if (o.status == Status::Pass) o.add({"roundtrip", extract_cocycle(e) == d.c, ""});
  o.note("rank", std::to_string(e.total.algebra.rank()));
  if (!a.equiv.empty()) {
    need(ws, a.equiv, {Kind::Cocycle});
    auto& d2 = ws.cocycles.at(a.equiv);
    if (d2.over != d.over || d2.by != d.by) throw Usage("cocycles live over different algebras");
    auto sol = solve_equivalence(d.c, d2.c, L, H, a.bound);
    o.note("equivalence", status_name(sol.status));
    o.note("equivalence_bound", std::to_string(sol.bound));
    if (!sol.certificate.empty()) o.note("certificate", sol.certificate);
    if (sol.status == Status::Infeasible) o.note("certified", sol.certified ? "yes" : "no");
    if (sol.tau) o.section("tau", map_text(*sol.tau));
    if (o.status == Status::Pass) o.status = sol.status;
  }
}

std::pair<ExtensionData, AutomorphismPair> ext_pair(const Workspace& ws, const Args& a) {
  need(ws, a.name, {Kind::Extension});
  auto& cd = ws.cocycles.at(ws.extensions.at(a.name).cocycle);
  Report pre = check_nonabelian_cocycle(cd.c, ws.nlca(cd.over), ws.nlca(cd.by));
  if (!pre.ok()) throw Usage("extension '" + a.name + "' is built from an invalid cocycle");
  auto e = ws.extension(a.name);
  AutomorphismPair p{ws.map_or_builtin(a.alpha, e.sub.algebra.module, e.sub.algebra.module),
                     ws.map_or_builtin(a.beta, e.quot.algebra.module, e.quot.algebra.module)};
  return {e, p};
}

void do_wells(const Workspace& ws, const Args& a, Out& o) {
  auto [e, p] = ext_pair(ws, a);
  auto w = wells_obstruction(e, p, a.bound);
  o.merge(w.report);
  if (w.class_status == "precondition") return;
  o.section("transformed_cocycle", to_string(w.transformed, e.quot, e.sub));
  if (w.tau) o.section("tau", map_text(*w.tau));
}

void do_induce(const Workspace& ws, const Args& a, Out& o, bool lift_mode) {
  auto [e, p] = ext_pair(ws, a);
  if (lift_mode || !a.solve) {
    if (a.eta.empty()) throw Usage(lift_mode ? "lift needs --eta MAP" : "induce needs --solve or --eta MAP");
    ConfLinMap eta = ws.map_or_builtin(a.eta, e.quot.algebra.module, e.sub.algebra.module);
    if (!lift_mode) {
      o.merge(verify_inducing_map(e, p, eta));
      return;
    }
    auto r = lift(e, p, eta);
    o.merge(r.report);
    if (r.gamma) o.section("gamma", map_text(*r.gamma));
    return;
  }
  auto r = solve_inducing_map(e, p, a.bound);
  o.merge(r.report);
  o.status = r.status;
  if (r.eta) o.section("eta", map_text(*r.eta));
  if (r.gamma) o.section("gamma", map_text(*r.gamma));
}

void do_classify(const Workspace& ws, const Args& a, Out& o) {
  need(ws, a.name, {Kind::Crossed});
  auto X = adjoint_crossed_module(ws.nlca(ws.crossed.at(a.name).algebra));
  Report c = check_crossed_module(X);
  if (!c.ok()) {
    o.merge(c, "crossed_");
    o.status = Status::Precondition;
    return;
  }
  auto [T, H] = strict_from_crossed(X);
  o.merge(check_2term(T), "two_term_");
  o.merge(check_homotopy_nijenhuis(T, H), "homotopy_nijenhuis_");
  o.note("shape", shape_name(classify(T, H)));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Checks and solvers for Nijenhuis Lie conformal algebras", "nlca"};
  app.fallthrough();
  app.require_subcommand(1);
  std::vector<std::string> files;
  std::string report_path;
  bool parallel = false;
  Args a;
  app.add_option("-f,--file", files, "definition files (default: every file on the fixture path)");
  app.add_option("--bound", a.bound, "truncation degree");
  app.add_flag("--parallel", parallel, "use the OpenMP kernels");
  app.add_option("--report", report_path, "also write the report to this path");
  app.add_option("--seed", a.seed, "seed for random property runs");

  auto named = [&](const char* verb, const char* what) {
    auto* s = app.add_subcommand(verb, what);
    s->add_option("name", a.name, "object name")->required();
    return s;
  };
  auto* check = named("check", "validate any named object");
  auto* deform = named("deform", "order-1 deformation: cocycle test and obstruction");
  deform->add_option("--n1", a.n1, "first-order term")->required();
  auto* coh = named("cohomology", "truncated cohomology of an algebra");
  coh->add_option("--coeffs", a.coeffs, "representation name or 'adjoint'");
  coh->add_option("--degree", a.degree, "cochain degree");
  coh->add_option("--complex", a.complex, "delta, dn or dnl");
  auto* ext = named("extend", "build and validate the extension of a cocycle");
  ext->add_option("--equiv", a.equiv, "decide equivalence with another cocycle");
  auto pair_opts = [&](CLI::App* s) {
    s->add_option("--alpha", a.alpha, "automorphism of H (map name or 'id')");
    s->add_option("--beta", a.beta, "automorphism of L (map name or 'id')");
  };
  auto* wells = named("wells", "Wells class of an automorphism pair");
  pair_opts(wells);
  auto* induce = named("induce", "inducibility of an automorphism pair");
  pair_opts(induce);
  induce->add_flag("--solve", a.solve, "solve for eta (abelian kernel)");
  induce->add_option("--eta", a.eta, "verify a given eta : L -> H");
  auto* lift_cmd = named("lift", "build gamma from an inducing map");
  pair_opts(lift_cmd);
  lift_cmd->add_option("--eta", a.eta, "eta : L -> H")->required();
  auto* cls = named("classify", "classify the strict structure of a crossed module");

  std::vector<std::string> argv_s{"nlca"};
  argv_s.insert(argv_s.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_s) argv.push_back(s.data());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  set_parallel(parallel);
  Out o;
  std::string verb = app.get_subcommands().front()->get_name();
  o.command = verb + " " + a.name;
  try {
    Workspace ws = parse_files(files.empty() ? fixture_files() : files);
    if (verb == "check") do_check(ws, a, o);
    else if (verb == "deform") do_deform(ws, a, o);
    else if (verb == "cohomology") do_cohomology(ws, a, o);
    else if (verb == "extend") do_extend(ws, a, o);
    else if (verb == "wells") do_wells(ws, a, o);
    else if (verb == "induce") do_induce(ws, a, o, false);
    else if (verb == "lift") do_induce(ws, a, o, true);
    else if (verb == "classify") do_classify(ws, a, o);
    (void)check, (void)deform, (void)coh, (void)ext, (void)wells, (void)induce, (void)lift_cmd, (void)cls;
  } catch (const Diagnostic& d) {
    err << "parse error: " << d.what() << "\n";
    return 2;
  } catch (const Usage& u) {
    err << "usage error: " << u.what() << "\n";
    return 2;
  } catch (const StructuralError& s) {
    err << "error: " << s.what() << "\n";
    return 2;
  } catch (const std::exception& x) {
    err << "internal error: " << x.what() << "\n";
    return 3;
  }
  std::string text = o.str();
  out << text;
  if (!report_path.empty()) {
    std::ofstream f(report_path);
    if (!f) {
      err << "cannot write report to '" << report_path << "'\n";
      return 2;
    }
    f << text;
  }
  return exit_code(o.status);
}

}  // namespace nlca::cli
