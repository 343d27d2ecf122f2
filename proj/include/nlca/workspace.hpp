#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlca/extension.hpp"
#include "nlca/homotopy.hpp"

namespace nlca {

/// Definition-file diagnostic with a 1-based line and column.
struct Diagnostic : std::runtime_error {
  std::string file;
  int line = 0, col = 0;
  Diagnostic(const std::string& f, int l, int c, const std::string& msg);
};

enum class Kind { Module, Algebra, Map, Rep, Cocycle, Extension, Crossed };
const char* kind_name(Kind k);

struct AlgebraDef {
  std::string module;
  LCA lca;
  std::string op;  // name of the operator map, empty = zero operator
  ConfLinMap N;
};

struct MapDef {
  std::string src, tgt;
  ConfLinMap map;
};

struct RepDef {
  std::string algebra, module;
  RepTable rep;
  std::string op;
  ConfLinMap NM;
};

struct CocycleDef {
  std::string over, by;  // algebras
  NonAbelianCocycle c;
};

struct ExtensionDef {
  std::string cocycle;
};

struct CrossedDef {
  std::string algebra;  // adjoint crossed module
};

/// Named objects from one or more definition files.
struct Workspace {
  std::vector<std::pair<std::string, Kind>> order;  // definition order
  std::map<std::string, Kind> kinds;
  std::map<std::string, FreeModule> modules;
  std::map<std::string, AlgebraDef> algebras;
  std::map<std::string, MapDef> maps;
  std::map<std::string, RepDef> reps;
  std::map<std::string, CocycleDef> cocycles;
  std::map<std::string, ExtensionDef> extensions;
  std::map<std::string, CrossedDef> crossed;

  bool has(const std::string& n) const { return kinds.count(n) > 0; }
  std::optional<Kind> kind(const std::string& n) const;
  NijenhuisLCA nlca(const std::string& algebra) const;  // raw, not validated
  // "id" and "zero" resolve to the identity / zero map on the given modules.
  ConfLinMap map_or_builtin(const std::string& n, const FreeModule& src, const FreeModule& tgt) const;
  ExtensionData extension(const std::string& n) const;
  // Name of the module object behind a FreeModule, for printing.
  std::string module_name(const FreeModule& m) const;
};

// Parses the text of one file into ws (objects may refer to earlier ones).
void parse_into(Workspace& ws, const std::string& text, const std::string& file);
Workspace parse_files(const std::vector<std::string>& paths);

// Canonical text form; parse(print(ws)) prints identically.
std::string print_workspace(const Workspace& ws);

// Vector literal: sum of "(poly)*basis" or "basis" terms, or "0".
Vec parse_vec(const std::string& s, const FreeModule& m, int arity);

}  // namespace nlca
