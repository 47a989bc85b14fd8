// expcrit: exponent-critical finite groups
// Requirements: C++20

#pragma once

#include <string>
#include <vector>

#include "error.hpp"
#include "numeric.hpp"

namespace expcrit {

/// Square integer matrix with entries reduced modulo `modulus`. Acts on row
/// vectors from the right: e_i -> row i.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t k, i64 modulus) : k_(k), n_(modulus), a_(k * k, 0) {}

  static IntMatrix identity(std::size_t k, i64 modulus) {
    IntMatrix m(k, modulus);
    for (std::size_t i = 0; i < k; ++i) m(i, i) = 1 % modulus;
    return m;
  }

  std::size_t size() const { return k_; }
  i64 modulus() const { return n_; }
  i64& operator()(std::size_t i, std::size_t j) { return a_[i * k_ + j]; }
  i64 operator()(std::size_t i, std::size_t j) const { return a_[i * k_ + j]; }
  std::vector<i64> row(std::size_t i) const { return {a_.begin() + static_cast<long>(i * k_), a_.begin() + static_cast<long>((i + 1) * k_)}; }

  IntMatrix reduced(i64 modulus) const {
    IntMatrix m(k_, modulus);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = mod(a_[i], modulus);
    return m;
  }

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    IntMatrix r(x.k_, x.n_);
    for (std::size_t i = 0; i < x.k_; ++i)
      for (std::size_t l = 0; l < x.k_; ++l) {
        i64 v = x(i, l);
        if (v == 0) continue;
        for (std::size_t j = 0; j < x.k_; ++j) r(i, j) = (r(i, j) + v * y(l, j)) % x.n_;
      }
    return r;
  }
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  IntMatrix pow(u64 e) const {
    IntMatrix r = identity(k_, n_), b = *this;
    while (e > 0) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  /// v * M
  std::vector<i64> apply(const std::vector<i64>& v) const {
    std::vector<i64> out(k_, 0);
    for (std::size_t i = 0; i < k_; ++i)
      for (std::size_t j = 0; j < k_; ++j) out[j] = (out[j] + v[i] * (*this)(i, j)) % n_;
    return out;
  }

  /// Multiplicative order by repeated multiplication, or 0 past `limit`.
  u64 order(u64 limit = 1'000'000) const {
    IntMatrix id = identity(k_, n_), x = *this;
    for (u64 t = 1; t <= limit; ++t) {
      if (x == id) return t;
      x = x * (*this);
    }
    return 0;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < k_; ++i) {
      s += i ? ",[" : "[";
      for (std::size_t j = 0; j < k_; ++j) s += (j ? "," : "") + std::to_string((*this)(i, j));
      s += "]";
    }
    return s + "]";
  }

 private:
  std::size_t k_ = 0;
  i64 n_ = 1;
  std::vector<i64> a_;
};

/// Rank over the prime field F_p of a list of vectors.
inline std::size_t rank_mod_p(std::vector<std::vector<i64>> rows, i64 p) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && mod(rows[piv][c], p) == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    // inverse of the pivot by Fermat
    i64 inv = 1, base = mod(rows[rank][c], p);
    for (i64 e = p - 2; e > 0; e >>= 1, base = base * base % p)
      if (e & 1) inv = inv * base % p;
    for (auto& v : rows[rank]) v = mod(v * inv, p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank) continue;
      i64 f = mod(rows[r][c], p);
      if (f == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) rows[r][j] = mod(rows[r][j] - f * rows[rank][j], p);
    }
    ++rank;
  }
  return rank;
}

/// Whether the reduction of M modulo p fixes no proper non-zero subspace of F_p^k:
/// every non-zero vector must generate the whole space under M.
inline bool acts_irreducibly(const IntMatrix& m, i64 p) {
  const std::size_t k = m.size();
  IntMatrix r = m.reduced(p);
  const u64 count = ipow(static_cast<u64>(p), static_cast<unsigned>(k));
  std::vector<i64> v(k);
  for (u64 idx = 1; idx < count; ++idx) {
    u64 t = idx;
    for (std::size_t i = 0; i < k; ++i) {
      v[i] = static_cast<i64>(t % static_cast<u64>(p));
      t /= static_cast<u64>(p);
    }
    std::vector<std::vector<i64>> span{v};
    for (std::size_t i = 1; i < k; ++i) span.push_back(r.apply(span.back()));
    if (rank_mod_p(span, p) < k) return false;
  }
  return true;
}

}  // namespace expcrit
