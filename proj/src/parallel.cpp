#include "nlca/parallel.hpp"

#include <atomic>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nlca {

static std::atomic<bool> g_parallel{false};

void set_parallel(bool on) { g_parallel = on; }
bool parallel_enabled() { return g_parallel; }

size_t tuple_count(int rank, int n) {
  size_t c = 1;
  for (int k = 0; k < n; ++k) c *= size_t(rank);
  return c;
}

std::vector<int> unflatten(size_t idx, int rank, int n) {
  std::vector<int> t(n);
  for (int k = n - 1; k >= 0; --k) {
    t[k] = int(idx % rank);
    idx /= rank;
  }
  return t;
}

size_t flatten(const std::vector<int>& t, int rank) {
  size_t i = 0;
  for (int x : t) i = i * rank + x;
  return i;
}

std::string tuple_str(const std::vector<int>& t, const std::vector<std::string>& names) {
  std::string s = "(";
  for (size_t k = 0; k < t.size(); ++k) {
    if (k) s += ",";
    s += names.empty() ? std::to_string(t[k]) : names[t[k]];
  }
  return s + ")";
}

void for_each_index_serial(size_t n, const std::function<void(size_t)>& f) {
  for (size_t i = 0; i < n; ++i) f(i);
}

void for_each_index_parallel(size_t n, const std::function<void(size_t)>& f) {
  std::exception_ptr err;
  std::mutex mu;
  long long m = (long long)n;
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < m; ++i) {
    try {
      f(size_t(i));
    } catch (...) {
      std::lock_guard<std::mutex> g(mu);
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
}

void for_each_index(size_t n, const std::function<void(size_t)>& f) {
  if (g_parallel && n > 1)
    for_each_index_parallel(n, f);
  else
    for_each_index_serial(n, f);
}

Check check_all(const std::string& name, size_t n,
                const std::function<std::optional<std::string>(size_t)>& f) {
  Check c{name, true, ""};
  if (!g_parallel) {
    for (size_t i = 0; i < n; ++i)
      if (auto w = f(i)) {
        c.pass = false;
        c.witness = *w;
        return c;
      }
    return c;
  }
  std::vector<std::optional<std::string>> res(n);
  for_each_index_parallel(n, [&](size_t i) { res[i] = f(i); });
  for (size_t i = 0; i < n; ++i)
    if (res[i]) {
      c.pass = false;
      c.witness = *res[i];
      break;
    }
  return c;
}

}  // namespace nlca
