#include "nlca/report.hpp"

#include <sstream>

namespace nlca {

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Infeasible: return "infeasible";
    case Status::Precondition: return "precondition";
    case Status::Unsupported: return "unsupported";
  }
  return "?";
}

const Check* Report::find(const std::string& name) const {
  for (auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

bool Report::passed(const std::string& name) const {
  auto* c = find(name);
  return c && c->pass;
}

Report& Report::add(Check c) {
  if (!c.pass && status == Status::Pass) status = Status::Fail;
  checks.push_back(std::move(c));
  return *this;
}

Report& Report::merge(const Report& o, const std::string& prefix) {
  for (auto c : o.checks) {
    c.name = prefix + c.name;
    checks.push_back(std::move(c));
  }
  for (auto& [k, v] : o.info) info.emplace_back(prefix + k, v);
  if (status == Status::Pass) status = o.status;
  return *this;
}

std::string Report::str() const {
  std::ostringstream os;
  os << "status: " << status_name(status) << "\n";
  for (auto& c : checks) {
    os << "  " << c.name << ": " << (c.pass ? "pass" : "fail") << "\n";
    if (!c.pass && !c.witness.empty()) os << "    witness: " << c.witness << "\n";
  }
  for (auto& [k, v] : info) os << "  " << k << ": " << v << "\n";
  return os.str();
}

Report precondition(const std::string& what) {
  Report r;
  r.status = Status::Precondition;
  r.note("precondition", what);
  return r;
}

}  // namespace nlca
