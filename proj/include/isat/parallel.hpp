#pragma once

#include <cstddef>
#include <exception>
#include <type_traits>
#include <vector>

#include <omp.h>

namespace isat {

/// Reference: results[i] = fn(i) for i in [0, count), in order.
template <class Fn>
auto map_indexed_serial(std::size_t count, Fn&& fn) {
  using R = std::invoke_result_t<Fn&, std::size_t>;
  std::vector<R> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(fn(i));
  return out;
}

/// OpenMP version of map_indexed_serial. Each index owns its inputs (callers
/// derive per-index RNG streams), so the output equals the serial one for
/// any thread count. The first exception thrown by any task is rethrown.
template <class Fn>
auto map_indexed(std::size_t count, int threads, Fn&& fn) {
  using R = std::invoke_result_t<Fn&, std::size_t>;
  if (threads <= 1 || count < 2) return map_indexed_serial(count, fn);

  std::vector<R> out(count);
  std::exception_ptr error;
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long long i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(isat_map_indexed_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace isat
