#pragma once

#include <charconv>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace curvecut {

// I/O failures map to CLI exit code 2, solver failures to exit code 3.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Worker-thread cap: CURVECUT_THREADS if set (>= 1), else hardware concurrency.
inline int worker_threads() {
  if (const char* env = std::getenv("CURVECUT_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return static_cast<int>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Sums row_value(r) for r in [0, rows). Rows may be evaluated on several
// threads, but per-row values are always combined in row order, so the result
// does not depend on the thread count.
template <class Fn>
double row_sum(int rows, Fn&& row_value) {
  if (rows <= 0) return 0.0;
  int threads = worker_threads();
  if (threads > rows) threads = rows;
  std::vector<double> per_row(static_cast<size_t>(rows), 0.0);
  if (threads <= 1) {
    for (int r = 0; r < rows; ++r) per_row[static_cast<size_t>(r)] = row_value(r);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t]() {
        for (int r = t; r < rows; r += threads) per_row[static_cast<size_t>(r)] = row_value(r);
      });
    }
    for (auto& th : pool) th.join();
  }
  double total = 0.0;
  for (int r = 0; r < rows; ++r) total += per_row[static_cast<size_t>(r)];
  return total;
}

// Shortest round-trip decimal form, locale independent.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string format_int(long long v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace curvecut
