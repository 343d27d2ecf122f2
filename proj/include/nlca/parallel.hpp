#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nlca/report.hpp"

namespace nlca {

// Global switch between the serial reference loops and the OpenMP kernels.
void set_parallel(bool on);
bool parallel_enabled();

size_t tuple_count(int rank, int n);
std::vector<int> unflatten(size_t idx, int rank, int n);
size_t flatten(const std::vector<int>& t, int rank);
std::string tuple_str(const std::vector<int>& t, const std::vector<std::string>& names);

// Calls f(i) for i in [0, n); parallel when enabled.  Exceptions are
// rethrown on the calling thread.
void for_each_index(size_t n, const std::function<void(size_t)>& f);
void for_each_index_serial(size_t n, const std::function<void(size_t)>& f);
void for_each_index_parallel(size_t n, const std::function<void(size_t)>& f);

// Runs a tuple predicate; the witness is the lexicographically least failure
// no matter how the work was scheduled.
Check check_all(const std::string& name, size_t n,
                const std::function<std::optional<std::string>(size_t)>& f);

}  // namespace nlca
