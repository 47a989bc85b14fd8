// expcrit: exponent-critical finite groups
// Requirements: C++20

#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace expcrit {

/// A bijection on {0..degree-1} stored as its image sequence.
///
/// Products act on the right: (x * y)(i) = y(x(i)), so x is applied first.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<std::uint32_t> images) : images_(std::move(images)) {
    std::vector<char> seen(images_.size(), 0);
    for (auto v : images_) {
      if (v >= images_.size() || seen[v])
        throw Error(ErrorKind::invalid_parameters, "images do not form a bijection");
      seen[v] = 1;
    }
  }

  static Permutation identity(std::size_t degree) {
    Permutation p;
    p.images_.resize(degree);
    std::iota(p.images_.begin(), p.images_.end(), 0u);
    return p;
  }

  /// Parses cycle notation such as "(1 2 3)(4 5)". Points are 1-based when
  /// `one_based` is set. The degree is at least `min_degree` and covers every point.
  static Permutation from_cycles(std::string_view text, std::size_t min_degree = 0,
                                 bool one_based = true);

  std::size_t degree() const { return images_.size(); }
  std::uint32_t operator()(std::uint32_t point) const { return images_[point]; }
  std::span<const std::uint32_t> images() const { return images_; }

  bool is_identity() const {
    for (std::uint32_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  Permutation extended(std::size_t degree) const {
    Permutation p = *this;
    for (auto i = p.images_.size(); i < degree; ++i) p.images_.push_back(static_cast<std::uint32_t>(i));
    return p;
  }

  Permutation inverse() const {
    Permutation p;
    p.images_.resize(images_.size());
    for (std::uint32_t i = 0; i < images_.size(); ++i) p.images_[images_[i]] = i;
    return p;
  }

  friend Permutation operator*(const Permutation& x, const Permutation& y) {
    if (x.degree() != y.degree()) throw Error(ErrorKind::degree_mismatch, "composing permutations");
    Permutation p;
    p.images_.resize(x.degree());
    for (std::size_t i = 0; i < x.degree(); ++i) p.images_[i] = y.images_[x.images_[i]];
    return p;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

  /// Cycle notation, 1-based by default; the identity prints as "()".
  std::string to_cycles(bool one_based = true) const {
    std::string out;
    std::vector<char> seen(images_.size(), 0);
    for (std::uint32_t i = 0; i < images_.size(); ++i) {
      if (seen[i] || images_[i] == i) continue;
      out += '(';
      for (std::uint32_t j = i; !seen[j]; j = images_[j]) {
        seen[j] = 1;
        if (j != i) out += ' ';
        out += std::to_string(j + (one_based ? 1 : 0));
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

 private:
  std::vector<std::uint32_t> images_;
};

inline Permutation Permutation::from_cycles(std::string_view text, std::size_t min_degree,
                                            bool one_based) {
  std::vector<std::vector<std::uint32_t>> cycles;
  std::size_t degree = min_degree;
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorKind::parse_error, msg + " at position " + std::to_string(pos) + " in \"" +
                                            std::string(text) + "\"");
  };
  while (pos < text.size()) {
    char c = text[pos];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
      continue;
    }
    if (c != '(') fail("expected '('");
    ++pos;
    std::vector<std::uint32_t> cycle;
    while (true) {
      while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ','))
        ++pos;
      if (pos >= text.size()) fail("unterminated cycle");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[pos]))) fail("expected a point");
      std::size_t value = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        value = value * 10 + static_cast<std::size_t>(text[pos++] - '0');
      if (one_based) {
        if (value == 0) fail("points are 1-based");
        --value;
      }
      cycle.push_back(static_cast<std::uint32_t>(value));
      degree = std::max(degree, value + 1);
    }
    cycles.push_back(std::move(cycle));
  }
  // Cycles compose left to right, matching the right action.
  Permutation result = Permutation::identity(degree);
  for (const auto& cycle : cycles) {
    std::vector<std::uint32_t> img(degree);
    std::iota(img.begin(), img.end(), 0u);
    std::vector<char> used(degree, 0);
    for (auto v : cycle) {
      if (used[v]) fail("repeated point in cycle");
      used[v] = 1;
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) img[cycle[i]] = cycle[(i + 1) % cycle.size()];
    result = result * Permutation(std::move(img));
  }
  return result;
}

}  // namespace expcrit
