// expcrit: exponent-critical finite groups
// Requirements: C++20

#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "group.hpp"
#include "numeric.hpp"

namespace expcrit {

/// Word over abstract generators: letter +(i+1) is generator i, -(i+1) its inverse.
using Word = std::vector<int>;

inline Word free_reduce(const Word& w) {
  Word out;
  for (int x : w) {
    if (x == 0) throw Error(ErrorKind::invalid_parameters, "letter 0 in word");
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

inline Word word_inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& x : out) x = -x;
  return out;
}

inline Word word_concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return free_reduce(out);
}

inline Word word_power(const Word& w, i64 n) {
  Word base = n < 0 ? word_inverse(w) : w;
  Word out;
  for (i64 i = 0; i < (n < 0 ? -n : n); ++i) out.insert(out.end(), base.begin(), base.end());
  return free_reduce(out);
}

/// [x, y] = x^-1 y^-1 x y
inline Word word_commutator(const Word& x, const Word& y) {
  Word out = word_inverse(x);
  auto yi = word_inverse(y);
  out.insert(out.end(), yi.begin(), yi.end());
  out.insert(out.end(), x.begin(), x.end());
  out.insert(out.end(), y.begin(), y.end());
  return free_reduce(out);
}

/// [x, _i b]
inline Word word_iterated_commutator(Word x, const Word& b, unsigned i) {
  for (unsigned k = 0; k < i; ++k) x = word_commutator(x, b);
  return x;
}

struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;

  /// Relators are stored freely reduced; empty ones are dropped.
  void add_relator(const Word& w) {
    auto r = free_reduce(w);
    for (int x : r)
      if (x == 0 || static_cast<std::size_t>(x < 0 ? -x : x) > generators.size())
        throw Error(ErrorKind::invalid_parameters, "generator index out of range");
    if (!r.empty()) relators.push_back(std::move(r));
  }
};

/// Evaluates a word in a group, generator i of the word mapped to images[i].
inline ElementId evaluate(const FiniteGroup& g, const Word& w, std::span<const ElementId> images) {
  ElementId x = kIdentity;
  for (int l : w) {
    ElementId s = images[static_cast<std::size_t>((l < 0 ? -l : l) - 1)];
    x = g.mul(x, l < 0 ? g.inv(s) : s);
  }
  return x;
}

// ---------------------------------------------------------------------------
// Text format:  < a, b | a^8, [a,b]^2, [a; 2 b], a^4 = [a,b] >

namespace detail {

class PresentationParser {
 public:
  explicit PresentationParser(std::string_view text) : text_(text) {}

  Presentation parse() {
    expect('<');
    while (true) {
      auto name = identifier();
      if (std::find(pres_.generators.begin(), pres_.generators.end(), name) != pres_.generators.end())
        fail("duplicate generator '" + name + "'");
      pres_.generators.push_back(name);
      skip();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      break;
    }
    skip();
    if (peek() == '|') {
      ++pos_;
      skip();
      if (peek() != '>') {
        while (true) {
          Word lhs = word();
          skip();
          if (peek() == '=') {
            ++pos_;
            Word rhs = word();
            lhs = word_concat(lhs, word_inverse(rhs));
          }
          pres_.add_relator(lhs);
          skip();
          if (peek() == ',') {
            ++pos_;
            continue;
          }
          break;
        }
      }
    }
    expect('>');
    skip();
    if (pos_ != text_.size()) fail("trailing input");
    return pres_;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::parse_error, msg + " at position " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::string identifier() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_ || std::isdigit(static_cast<unsigned char>(text_[start]))) fail("expected a generator name");
    return std::string(text_.substr(start, pos_ - start));
  }
  i64 integer() {
    skip();
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      ++pos_;
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer");
    i64 v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (text_[pos_++] - '0');
      if (v > 1'000'000'000) fail("integer too large");
    }
    return neg ? -v : v;
  }

  // word := factor { ['*'] factor }
  Word word() {
    Word w = factor();
    while (true) {
      skip();
      char c = peek();
      if (c == '*') {
        ++pos_;
        w = word_concat(w, factor());
      } else if (c == '(' || c == '[' || std::isalpha(static_cast<unsigned char>(c)) || c == '1') {
        w = word_concat(w, factor());
      } else {
        return w;
      }
    }
  }

  // factor := primary [ '^' integer ]
  Word factor() {
    Word w = primary();
    skip();
    while (peek() == '^') {
      ++pos_;
      w = word_power(w, integer());
      skip();
    }
    return w;
  }

  Word primary() {
    skip();
    char c = peek();
    if (c == '(') {
      ++pos_;
      Word w = word();
      expect(')');
      return w;
    }
    if (c == '[') {
      ++pos_;
      Word x = word();
      skip();
      if (peek() == ';') {
        ++pos_;
        i64 n = integer();
        if (n < 0) fail("iteration count must be non-negative");
        Word b = word();
        expect(']');
        return word_iterated_commutator(x, b, static_cast<unsigned>(n));
      }
      expect(',');
      Word y = word();
      skip();
      // [x, y, z] = [[x, y], z]
      Word w = word_commutator(x, y);
      while (peek() == ',') {
        ++pos_;
        w = word_commutator(w, word());
        skip();
      }
      expect(']');
      return w;
    }
    if (c == '1') {
      ++pos_;
      return {};
    }
    auto name = identifier();
    auto it = std::find(pres_.generators.begin(), pres_.generators.end(), name);
    if (it == pres_.generators.end()) fail("unknown generator '" + name + "'");
    return {static_cast<int>(it - pres_.generators.begin()) + 1};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Presentation pres_;
};

}  // namespace detail

inline Presentation parse_presentation(std::string_view text) { return detail::PresentationParser(text).parse(); }

// ---------------------------------------------------------------------------
// Todd-Coxeter (HLT) coset enumeration

/// Completed coset table: rows are cosets (0 = the subgroup), column 2i is
/// generator i and column 2i+1 its inverse.
struct CosetTable {
  std::size_t num_generators = 0;
  std::size_t num_cosets = 0;
  std::vector<std::int32_t> table;

  std::int32_t at(std::size_t coset, std::size_t column) const { return table[coset * 2 * num_generators + column]; }
  bool complete() const {
    return std::none_of(table.begin(), table.end(), [](std::int32_t v) { return v < 0; });
  }
};

namespace detail {

class ToddCoxeter {
 public:
  ToddCoxeter(const Presentation& pres, std::size_t max_cosets)
      : ncols_(2 * pres.generators.size()), max_cosets_(max_cosets) {
    for (const auto& r : pres.relators) relators_.push_back(columns(r));
    new_coset();
  }

  CosetTable run(const std::vector<Word>& subgroup_words) {
    for (const auto& w : subgroup_words) {
      auto cols = columns(free_reduce(w));
      if (!cols.empty()) scan_and_fill(0, cols);
    }
    for (std::size_t c = 0; c < forward_.size(); ++c) {
      for (const auto& r : relators_) {
        if (!alive(c)) break;
        scan_and_fill(static_cast<std::int32_t>(c), r);
      }
      if (!alive(c)) continue;
      for (std::size_t x = 0; x < ncols_; ++x)
        if (entry(static_cast<std::int32_t>(c), x) < 0) define(static_cast<std::int32_t>(c), x);
    }
    return compact();
  }

 private:
  static std::size_t inverse_column(std::size_t x) { return x ^ 1u; }

  std::vector<std::size_t> columns(const Word& w) const {
    std::vector<std::size_t> out;
    for (int l : w) out.push_back(l > 0 ? 2 * static_cast<std::size_t>(l - 1) : 2 * static_cast<std::size_t>(-l - 1) + 1);
    return out;
  }

  std::int32_t& entry(std::int32_t c, std::size_t x) { return table_[static_cast<std::size_t>(c) * ncols_ + x]; }
  bool alive(std::size_t c) const { return forward_[c] == static_cast<std::int32_t>(c); }

  std::int32_t new_coset() {
    if (forward_.size() >= max_cosets_)
      throw Error(ErrorKind::cap_exceeded, "coset enumeration exceeded " + std::to_string(max_cosets_) + " cosets");
    auto c = static_cast<std::int32_t>(forward_.size());
    forward_.push_back(c);
    table_.resize(table_.size() + ncols_, -1);
    ++live_;
    return c;
  }

  void define(std::int32_t c, std::size_t x) {
    std::int32_t d = new_coset();
    entry(c, x) = d;
    entry(d, inverse_column(x)) = c;
  }

  std::int32_t rep(std::int32_t k) {
    std::int32_t r = k;
    while (forward_[static_cast<std::size_t>(r)] != r) r = forward_[static_cast<std::size_t>(r)];
    while (forward_[static_cast<std::size_t>(k)] != r) {
      std::int32_t next = forward_[static_cast<std::size_t>(k)];
      forward_[static_cast<std::size_t>(k)] = r;
      k = next;
    }
    return r;
  }

  void merge(std::int32_t k, std::int32_t l, std::vector<std::int32_t>& queue) {
    k = rep(k);
    l = rep(l);
    if (k == l) return;
    if (k > l) std::swap(k, l);
    forward_[static_cast<std::size_t>(l)] = k;
    queue.push_back(l);
    --live_;
  }

  void coincidence(std::int32_t a, std::int32_t b) {
    std::vector<std::int32_t> queue;
    merge(a, b, queue);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      std::int32_t e = queue[i];
      for (std::size_t x = 0; x < ncols_; ++x) {
        std::int32_t f = entry(e, x);
        if (f < 0) continue;
        std::size_t xi = inverse_column(x);
        if (entry(f, xi) == e) entry(f, xi) = -1;
        std::int32_t e1 = rep(e), f1 = rep(f);
        if (entry(e1, x) >= 0) {
          merge(f1, entry(e1, x), queue);
        } else if (entry(f1, xi) >= 0) {
          merge(e1, entry(f1, xi), queue);
        } else {
          entry(e1, x) = f1;
          entry(f1, xi) = e1;
        }
      }
    }
  }

  void scan_and_fill(std::int32_t c, const std::vector<std::size_t>& w) {
    const std::size_t n = w.size();
    std::int32_t f = c, b = c;
    std::size_t i = 0, j = n;  // j is one past the last unscanned letter
    while (true) {
      while (i < j && entry(f, w[i]) >= 0) f = entry(f, w[i++]);
      if (i == j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j > i && entry(b, inverse_column(w[j - 1])) >= 0) b = entry(b, inverse_column(w[--j]));
      if (j == i) {
        coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        entry(f, w[i]) = b;
        entry(b, inverse_column(w[i])) = f;
        return;
      }
      define(f, w[i]);
    }
  }

  CosetTable compact() {
    std::vector<std::int32_t> renumber(forward_.size(), -1);
    std::int32_t next = 0;
    for (std::size_t c = 0; c < forward_.size(); ++c)
      if (alive(c)) renumber[c] = next++;
    CosetTable out;
    out.num_generators = ncols_ / 2;
    out.num_cosets = static_cast<std::size_t>(next);
    out.table.assign(out.num_cosets * ncols_, -1);
    for (std::size_t c = 0; c < forward_.size(); ++c) {
      if (!alive(c)) continue;
      for (std::size_t x = 0; x < ncols_; ++x) {
        std::int32_t d = entry(static_cast<std::int32_t>(c), x);
        if (d >= 0) out.table[static_cast<std::size_t>(renumber[c]) * ncols_ + x] = renumber[static_cast<std::size_t>(rep(d))];
      }
    }
    return out;
  }

  std::size_t ncols_;
  std::size_t max_cosets_;
  std::vector<std::vector<std::size_t>> relators_;
  std::vector<std::int32_t> table_;
  std::vector<std::int32_t> forward_;  // union-find parent; forward_[c] == c iff alive
  std::size_t live_ = 0;
};

}  // namespace detail

/// Enumerates the cosets of <subgroup_words> in the presented group. Throws
/// cap-exceeded when more than `max_cosets` cosets get defined; that means the
/// index is unknown, not that it is infinite.
inline CosetTable todd_coxeter(const Presentation& pres, const std::vector<Word>& subgroup_words = {},
                               std::size_t max_cosets = 0) {
  if (max_cosets == 0) max_cosets = limits().max_cosets;
  if (pres.generators.empty()) {
    CosetTable t;
    t.num_cosets = 1;
    return t;
  }
  return detail::ToddCoxeter(pres, max_cosets).run(subgroup_words);
}

/// The permutation group generated by the generator columns of a completed table.
inline FiniteGroup table_to_group(const CosetTable& tbl) {
  if (!tbl.complete()) throw Error(ErrorKind::incomplete_table, "coset table has undefined entries");
  if (tbl.num_cosets * tbl.num_cosets > limits().max_code_words)
    throw Error(ErrorKind::cap_exceeded, "coset table too large for a permutation realization");
  std::vector<Permutation> gens;
  for (std::size_t i = 0; i < tbl.num_generators; ++i) {
    std::vector<std::uint32_t> img(tbl.num_cosets);
    for (std::size_t c = 0; c < tbl.num_cosets; ++c) img[c] = static_cast<std::uint32_t>(tbl.at(c, 2 * i));
    gens.emplace_back(std::move(img));
  }
  return materialize(std::span<const Permutation>(gens), tbl.num_cosets);
}

/// Enumerates over the trivial subgroup and returns the regular permutation group.
inline FiniteGroup presented_group(const Presentation& pres) {
  auto t = todd_coxeter(pres);
  if (t.num_cosets > limits().max_elements)
    throw Error(ErrorKind::cap_exceeded, "presented group has " + std::to_string(t.num_cosets) + " elements");
  auto g = table_to_group(t);
  if (g.order() != t.num_cosets) throw Error(ErrorKind::order_mismatch, "table and closure disagree");
  return g;
}

/// Two-generator presentation of the universal type-A group on a0, b0.
inline Presentation u_presentation(u64 p, unsigned m) {
  if (!is_prime(p)) throw Error(ErrorKind::invalid_parameters, "p must be prime");
  if (m < 2) throw Error(ErrorKind::m_too_small, "m must be at least 2");
  Presentation pres;
  pres.generators = {"a0", "b0"};
  const Word a{1}, b{2};
  std::vector<Word> ai;
  for (unsigned i = 0; i <= p; ++i) ai.push_back(word_iterated_commutator(a, b, i));
  for (unsigned i = 0; i < p; ++i)
    for (unsigned j = i + 1; j < p; ++j) pres.add_relator(word_commutator(ai[i], ai[j]));
  Word r = ai[p];
  for (unsigned j = 1; j < p; ++j) r = word_concat(r, word_power(ai[j], static_cast<i64>(binomial(p, j))));
  pres.add_relator(r);
  pres.add_relator(word_power(a, static_cast<i64>(ipow(p, m))));
  for (unsigned i = 1; i < p; ++i) pres.add_relator(word_power(ai[i], static_cast<i64>(ipow(p, m - 1))));
  pres.add_relator(word_power(b, static_cast<i64>(ipow(p, m - 1))));
  return pres;
}

}  // namespace expcrit
