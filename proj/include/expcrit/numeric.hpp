// expcrit: exponent-critical finite groups
// Requirements: C++20

#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "error.hpp"

namespace expcrit {

using u64 = std::uint64_t;
using i64 = std::int64_t;

constexpr bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Prime factorization as (prime, multiplicity) pairs, primes ascending.
inline std::vector<std::pair<u64, int>> factorize(u64 n) {
  std::vector<std::pair<u64, int>> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    int k = 0;
    while (n % d == 0) {
      n /= d;
      ++k;
    }
    out.emplace_back(d, k);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline std::vector<u64> prime_divisors(u64 n) {
  std::vector<u64> out;
  for (auto [p, k] : factorize(n)) out.push_back(p);
  return out;
}

/// Largest power of p dividing n.
constexpr u64 p_part(u64 n, u64 p) {
  if (n == 0) throw Error(ErrorKind::invalid_parameters, "p_part of zero");
  if (!is_prime(p)) throw Error(ErrorKind::invalid_parameters, "p_part needs a prime");
  u64 out = 1;
  while (n % p == 0) {
    n /= p;
    out *= p;
  }
  return out;
}

/// If n = p^k for a prime p returns p, otherwise 0 (n = 1 gives 0).
inline u64 prime_of_power(u64 n) {
  auto f = factorize(n);
  return f.size() == 1 ? f.front().first : 0;
}

constexpr u64 ipow(u64 base, unsigned e) {
  u64 r = 1;
  while (e-- > 0) r *= base;
  return r;
}

/// log_p(n) for n an exact power of p.
constexpr unsigned ilog(u64 n, u64 p) {
  unsigned k = 0;
  while (n > 1) {
    n /= p;
    ++k;
  }
  return k;
}

constexpr u64 binomial(u64 n, u64 k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  u64 r = 1;
  for (u64 i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

constexpr i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

/// Multiplicative order of u modulo n (gcd(u, n) must be 1).
inline u64 multiplicative_order(u64 u, u64 n) {
  if (n == 1) return 1;
  if (std::gcd(u, n) != 1) throw Error(ErrorKind::invalid_parameters, "unit required");
  u64 x = u % n, k = 1;
  while (x != 1) {
    x = x * u % n;
    ++k;
  }
  return k;
}

}  // namespace expcrit
