#pragma once

// Execution policy shared by the sweep kernels. Every parallel kernel has a
// serial path that produces bit-identical results; tests compare the two.

#include <cstddef>
#include <exception>
#include <vector>

namespace dtk {

enum class Execution { Serial, Parallel };

/// Number of OpenMP threads a Parallel kernel would use (1 without OpenMP).
int parallel_threads();

/// Runs body(i) for i in [0, n). Exceptions are captured per index and the
/// first one (by index) is rethrown, so both policies fail identically.
template <class Body>
void for_each_index(std::size_t n, Execution exec, Body&& body) {
  std::vector<std::exception_ptr> errors(n);
  [[maybe_unused]] const bool par = exec == Execution::Parallel && n > 1;
#pragma omp parallel for schedule(dynamic) if (par)
  for (std::size_t i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace dtk
