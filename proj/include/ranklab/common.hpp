#pragma once

// Shared scalar types, caps, error types, deterministic RNG helpers and a
// sharded counting loop whose result does not depend on the worker count.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace ranklab {

inline constexpr const char* kVersion = "0.1.0";

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Raised when an input exceeds a configured enumeration or size cap.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when an audit of a statement that must hold fails.
struct AuditViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Caps {
  std::int64_t tensor_entries = 1'000'000;     // dense coefficient storage
  Int bias_points = 10'000'000;                // sample space for exact bias
  Int locus_points = 10'000'000;               // enumerated locus ambient
  std::int64_t search_budget = 1'000'000;      // certificate search nodes
  std::int64_t term_space = 1 << 20;           // per-term exhaustion bound
  std::int64_t field_size = 64;                // extension field cardinality
  int extension_degree = 4;
  std::int64_t enumeration = 1'000'000;        // generic element enumeration
  Int box_points = 20'000'000;                 // integer box enumeration
  int workers = 1;
};

inline Int int_pow(Int base, unsigned exp) {
  Int r = 1;
  while (exp != 0U) {
    if (exp & 1U) r *= base;
    base *= base;
    exp >>= 1U;
  }
  return r;
}

inline Int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Int r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

inline Int factorial(int n) {
  Int r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

using Rng = std::mt19937_64;

// Unbiased draw from [0, n); rejection keeps the stream deterministic across
// platforms, unlike std::uniform_int_distribution.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_below: empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              (std::numeric_limits<std::uint64_t>::max() % n);
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return v % n;
}

inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1U;
  return lo + static_cast<std::int64_t>(uniform_below(rng, span));
}

// Sums fn(begin, end) over a fixed partition of [0, total); shard sums are
// combined in shard order, so the result is independent of `workers`.
inline unsigned long long sharded_sum(
    unsigned long long total, int workers,
    const std::function<unsigned long long(unsigned long long,
                                           unsigned long long)>& fn) {
  if (workers < 1) workers = 1;
  if (workers == 1 || total < 1024) return fn(0, total);
  const auto n = static_cast<unsigned long long>(workers);
  std::vector<unsigned long long> partial(n, 0);
  std::vector<std::thread> pool;
  pool.reserve(n);
  const unsigned long long chunk = (total + n - 1) / n;
  for (unsigned long long w = 0; w < n; ++w) {
    const unsigned long long b = std::min(total, w * chunk);
    const unsigned long long e = std::min(total, b + chunk);
    pool.emplace_back([&partial, &fn, w, b, e] { partial[w] = fn(b, e); });
  }
  for (auto& t : pool) t.join();
  unsigned long long sum = 0;
  for (unsigned long long w = 0; w < n; ++w) sum += partial[w];
  return sum;
}

// Odometer step over mixed radix `dims`; returns false after the last tuple.
inline bool next_tuple(std::vector<int>& idx, const std::vector<int>& dims) {
  for (int i = static_cast<int>(idx.size()) - 1; i >= 0; --i) {
    if (++idx[i] < dims[i]) return true;
    idx[i] = 0;
  }
  return false;
}

}  // namespace ranklab
