#pragma once

#include <exception>

namespace bggkit {

// Runs body(0..n-1), across OpenMP threads when `parallel`; the first
// exception thrown by any iteration is rethrown afterwards.
template <class F>
void parallel_for(long n, bool parallel, F&& body) {
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical
      error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace bggkit
