// expcrit: exponent-critical finite groups
// Requirements: C++20

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace expcrit {

enum class ErrorKind {
  cap_exceeded,
  degree_mismatch,
  not_a_homomorphism,
  action_not_automorphism,
  order_mismatch,
  not_normal,
  not_a_divisor,
  not_a_prime_power,
  no_such_order,
  search_exhausted,
  precondition_violated,
  m_too_small,
  no_such_action,
  invalid_parameters,
  incomplete_table,
  parse_error,
  undecided,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::cap_exceeded: return "cap-exceeded";
    case ErrorKind::degree_mismatch: return "degree-mismatch";
    case ErrorKind::not_a_homomorphism: return "not-a-homomorphism";
    case ErrorKind::action_not_automorphism: return "action-not-automorphism";
    case ErrorKind::order_mismatch: return "order-mismatch";
    case ErrorKind::not_normal: return "not-normal";
    case ErrorKind::not_a_divisor: return "p-not-a-divisor";
    case ErrorKind::not_a_prime_power: return "not-a-prime-power-group";
    case ErrorKind::no_such_order: return "no-such-order";
    case ErrorKind::search_exhausted: return "search-exhausted";
    case ErrorKind::precondition_violated: return "precondition-violated";
    case ErrorKind::m_too_small: return "m-too-small";
    case ErrorKind::no_such_action: return "no-such-action";
    case ErrorKind::invalid_parameters: return "invalid-parameters";
    case ErrorKind::incomplete_table: return "incomplete-table";
    case ErrorKind::parse_error: return "parse-error";
    case ErrorKind::undecided: return "undecided";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Process-wide size limits. The CLI overrides them from the environment.
struct Limits {
  std::size_t max_elements = 20000;
  std::size_t lattice_order = 2000;
  std::size_t max_subgroups = 250000;
  std::size_t isomorphism_order = 512;
  std::size_t max_cosets = 100000;
  std::size_t cayley_table_order = 2048;
  // Upper bound on order * carrier width, i.e. stored element data.
  std::size_t max_code_words = std::size_t{1} << 26;
};

inline Limits& limits() {
  static Limits instance;
  return instance;
}

}  // namespace expcrit
