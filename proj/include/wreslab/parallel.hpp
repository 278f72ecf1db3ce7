#pragma once

// Index-parallel map used by the trial batteries and the contour quadrature.
//
// map_serial() is the reference: it evaluates fn(0), fn(1), ... in order.
// map_omp() evaluates the same calls across OpenMP threads and returns results in
// index order, so any reduction done by the caller afterwards is bit-identical to
// the serial path. Exceptions thrown by fn are rethrown (lowest index first).

#include <exception>
#include <optional>
#include <type_traits>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wreslab::parallel {

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

template <class Fn>
auto map_serial(int n, Fn&& fn) -> std::vector<std::invoke_result_t<Fn&, int>> {
  std::vector<std::invoke_result_t<Fn&, int>> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(fn(i));
  return out;
}

template <class Fn>
auto map_omp(int n, Fn&& fn) -> std::vector<std::invoke_result_t<Fn&, int>> {
  using R = std::invoke_result_t<Fn&, int>;
  std::vector<std::optional<R>> slots(static_cast<std::size_t>(n));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < n; ++i) {
    try {
      slots[static_cast<std::size_t>(i)].emplace(fn(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<R> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

enum class Execution { serial, omp };

template <class Fn>
auto map(Execution ex, int n, Fn&& fn) {
  return ex == Execution::serial ? map_serial(n, fn) : map_omp(n, fn);
}

}  // namespace wreslab::parallel
