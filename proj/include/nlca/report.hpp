#pragma once

#include <string>
#include <vector>

namespace nlca {

enum class Status { Pass, Fail, Infeasible, Precondition, Unsupported };

const char* status_name(Status s);

struct Check {
  std::string name;
  bool pass = true;
  std::string witness;  // first failing tuple and residual
};

struct Report {
  Status status = Status::Pass;
  std::vector<Check> checks;
  std::vector<std::pair<std::string, std::string>> info;

  bool ok() const { return status == Status::Pass; }
  const Check* find(const std::string& name) const;
  bool passed(const std::string& name) const;
  Report& add(Check c);
  Report& merge(const Report& o, const std::string& prefix = "");
  void note(std::string k, std::string v) { info.emplace_back(std::move(k), std::move(v)); }
  std::string str() const;
};

Report precondition(const std::string& what);

}  // namespace nlca
