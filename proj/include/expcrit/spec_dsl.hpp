// expcrit: exponent-critical finite groups
// Requirements: C++20

#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coset_enum.hpp"
#include "error.hpp"
#include "families.hpp"
#include "group.hpp"
#include "permutation.hpp"
#include "structure.hpp"
#include "universal.hpp"

namespace expcrit {

/// Parse tree of a group specification.
///
///   spec := atom | "directprod(" spec "," spec ")" | "quotient(" spec "," subgroup-ref ")"
///   subgroup-ref := "center" | "derived" | "frattini" | "ncl" STRING+
///
/// `ncl` takes words in the generator names g1, g2, ... and denotes their normal closure.
struct GroupSpec {
  struct Param {
    std::string key;
    std::optional<i64> integer;
    std::string word;        // identifier or sign value
    std::size_t child = 0;   // index into children, for nested specs
    bool nested = false;
  };

  std::string name;
  std::vector<i64> args;
  std::vector<Param> params;
  std::vector<std::string> strings;
  std::string sign;
  std::vector<GroupSpec> children;
  std::string subgroup;  // quotient only

  const Param* param(std::string_view key) const {
    for (const auto& p : params)
      if (p.key == key) return &p;
    return nullptr;
  }

  /// Canonical text; parsing it yields an equal tree.
  std::string to_string() const;
};

namespace detail {

inline std::string quote(const std::string& s) { return "\"" + s + "\""; }

}  // namespace detail

inline std::string GroupSpec::to_string() const {
  if (name == "directprod") return "directprod(" + children[0].to_string() + ", " + children[1].to_string() + ")";
  if (name == "quotient") {
    std::string ref = subgroup;
    for (const auto& s : strings) ref += " " + detail::quote(s);
    return "quotient(" + children[0].to_string() + ", " + ref + ")";
  }
  std::string out = name;
  for (auto a : args) out += " " + std::to_string(a);
  if (!sign.empty()) out += " " + sign;
  for (const auto& s : strings) out += " " + detail::quote(s);
  for (const auto& p : params) {
    out += " " + p.key + "=";
    if (p.nested)
      out += "(" + children[p.child].to_string() + ")";
    else if (p.integer)
      out += std::to_string(*p.integer);
    else
      out += p.word;
  }
  return out;
}

namespace detail {

struct AtomShape {
  std::string_view name;
  int ints = 0;             // positional integers
  bool sign = false;        // trailing + or -
  bool strings = false;     // one or more strings
  std::vector<std::string_view> keys;  // required key=value parameters
};

inline const std::vector<AtomShape>& atom_shapes() {
  static const std::vector<AtomShape> shapes = {
      {"cyclic", 1, false, false, {}},
      {"dihedral", 1, false, false, {}},
      {"quaternion", 1, false, false, {}},
      {"sym", 1, false, false, {}},
      {"alt", 1, false, false, {}},
      {"perm", 0, false, true, {}},
      {"extraspecial", 2, true, false, {}},
      {"mna", 0, false, false, {"p", "k", "q", "b"}},
      {"familyB", 0, false, false, {"p", "a", "mna"}},
      {"familyC1", 0, false, false, {"p", "a", "mna"}},
      {"familyC2", 0, false, false, {"p", "m", "k", "q", "n"}},
      {"familyC3", 0, false, false, {"p", "m", "k", "q", "n"}},
      {"familyC4", 0, false, false, {"q", "shape", "p", "a"}},
      {"typeB", 0, false, false, {"p", "alpha", "beta", "rho", "sigma"}},
      {"U", 0, false, false, {"p", "m"}},
      {"UmodD", 0, false, false, {"p", "m"}},
      {"UmodN", 0, false, false, {"p", "m", "index"}},
      {"present", 0, false, true, {}},
  };
  return shapes;
}

class SpecParser {
 public:
  explicit SpecParser(std::string_view text) : s_(text) {}

  GroupSpec parse() {
    auto spec = parse_spec();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return spec;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::parse_error, msg + " at position " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  bool at_ident() {
    skip_ws();
    return pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_');
  }
  bool at_int() {
    skip_ws();
    return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
  }
  std::string ident() {
    if (!at_ident()) fail("expected identifier");
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }
  i64 integer() {
    if (!at_int()) fail("expected integer");
    i64 v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_++] - '0');
      if (v > (i64{1} << 40)) fail("integer too large");
    }
    return v;
  }
  std::string string_literal() {
    expect('"');
    std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != '"') ++pos_;
    if (pos_ == s_.size()) fail("unterminated string");
    return std::string(s_.substr(start, pos_++ - start));
  }
  // Raw presentation text "< ... >" outside quotes.
  std::string raw_presentation() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != '>') ++pos_;
    if (pos_ == s_.size()) fail("unterminated presentation");
    ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  GroupSpec parse_spec() {
    std::size_t start = pos_;
    GroupSpec spec;
    spec.name = ident();
    if (spec.name == "directprod") {
      expect('(');
      spec.children.push_back(parse_spec());
      expect(',');
      spec.children.push_back(parse_spec());
      expect(')');
      return spec;
    }
    if (spec.name == "quotient") {
      expect('(');
      spec.children.push_back(parse_spec());
      expect(',');
      spec.subgroup = ident();
      if (spec.subgroup == "ncl") {
        while (peek('"')) spec.strings.push_back(string_literal());
        if (spec.strings.empty()) fail("ncl needs at least one word");
      } else if (spec.subgroup != "center" && spec.subgroup != "derived" && spec.subgroup != "frattini") {
        fail("unknown subgroup reference '" + spec.subgroup + "'");
      }
      expect(')');
      return spec;
    }
    const AtomShape* shape = nullptr;
    for (const auto& a : atom_shapes())
      if (a.name == spec.name) shape = &a;
    if (!shape) {
      pos_ = start;
      fail("unknown constructor '" + spec.name + "'");
    }
    for (int i = 0; i < shape->ints; ++i) {
      if (!at_int()) fail("arity mismatch: " + spec.name + " takes " + std::to_string(shape->ints) + " integer(s)");
      spec.args.push_back(integer());
    }
    if (shape->sign) {
      if (peek('+') || peek('-'))
        spec.sign = std::string(1, s_[pos_++]);
      else
        fail("expected sign '+' or '-'");
    }
    if (shape->strings) {
      if (spec.name == "present" && peek('<')) {
        spec.strings.push_back(raw_presentation());
      } else {
        while (peek('"')) spec.strings.push_back(string_literal());
      }
      if (spec.strings.empty()) fail("arity mismatch: " + spec.name + " needs at least one string");
      if (spec.name == "present" && spec.strings.size() != 1) fail("arity mismatch: present takes one presentation");
    }
    while (!shape->keys.empty() && at_ident()) {
      GroupSpec::Param p;
      p.key = ident();
      expect('=');
      if (peek('(')) {
        ++pos_;
        p.nested = true;
        p.child = spec.children.size();
        spec.children.push_back(parse_spec());
        expect(')');
      } else if (at_int()) {
        p.integer = integer();
      } else if (peek('+') || peek('-')) {
        p.word = std::string(1, s_[pos_++]);
      } else {
        p.word = ident();
      }
      if (spec.param(p.key)) fail("duplicate parameter '" + p.key + "'");
      spec.params.push_back(std::move(p));
    }
    check_keys(spec, *shape);
    return spec;
  }

  void check_keys(const GroupSpec& spec, const AtomShape& shape) const {
    std::vector<std::string_view> required(shape.keys);
    if (spec.name == "familyC4") {
      auto* sh = spec.param("shape");
      if (sh && sh->word == "elementary") required.push_back("k");
      if (sh && sh->word == "extraspecial") {
        required.push_back("n");
        required.push_back("sign");
      }
    }
    for (auto key : required)
      if (!spec.param(key)) fail("arity mismatch: " + spec.name + " needs parameter " + std::string(key));
    for (const auto& p : spec.params)
      if (std::find(required.begin(), required.end(), p.key) == required.end())
        fail("arity mismatch: " + spec.name + " has no parameter " + p.key);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

inline i64 int_param(const GroupSpec& s, std::string_view key) {
  auto* p = s.param(key);
  if (!p || !p->integer) throw Error(ErrorKind::parse_error, s.name + ": parameter " + std::string(key) + " must be an integer");
  return *p->integer;
}

inline const GroupSpec& spec_param(const GroupSpec& s, std::string_view key) {
  auto* p = s.param(key);
  if (!p || !p->nested) throw Error(ErrorKind::parse_error, s.name + ": parameter " + std::string(key) + " must be a (spec)");
  return s.children[p->child];
}

inline ExtraspecialSign parse_sign(const std::string& s) {
  if (s == "+") return ExtraspecialSign::plus;
  if (s == "-") return ExtraspecialSign::minus;
  throw Error(ErrorKind::parse_error, "sign must be '+' or '-', got '" + s + "'");
}

inline u64 as_u64(i64 v) { return static_cast<u64>(v); }
inline unsigned as_uint(i64 v) { return static_cast<unsigned>(v); }

}  // namespace detail

inline GroupSpec parse_spec(std::string_view text) { return detail::SpecParser(text).parse(); }

/// Builds the group a spec denotes. Generators follow the constructor's own order.
inline FiniteGroup build_group(const GroupSpec& s) {
  using namespace detail;
  const auto& n = s.name;
  if (n == "directprod") return direct_product(build_group(s.children[0]), build_group(s.children[1]));
  if (n == "quotient") {
    auto g = build_group(s.children[0]);
    Subgroup h;
    if (s.subgroup == "center") {
      h = center(g);
    } else if (s.subgroup == "derived") {
      h = derived_subgroup(g);
    } else if (s.subgroup == "frattini") {
      h = frattini(g);
    } else {
      std::string text = "<";
      for (std::size_t i = 0; i < g.num_generators(); ++i) text += (i ? ", g" : " g") + std::to_string(i + 1);
      text += " | ";
      for (std::size_t i = 0; i < s.strings.size(); ++i) text += (i ? ", " : "") + s.strings[i];
      text += " >";
      auto pres = parse_presentation(text);
      std::vector<ElementId> gens;
      for (const auto& w : pres.relators) gens.push_back(evaluate(g, w, g.generators()));
      h = normal_closure(g, gens);
    }
    return quotient(g, h);
  }
  if (n == "cyclic") return cyclic_group(static_cast<std::size_t>(s.args[0]));
  if (n == "dihedral") return dihedral_group(static_cast<std::size_t>(s.args[0]));
  if (n == "quaternion") return dicyclic_group(static_cast<std::size_t>(s.args[0]));
  if (n == "sym") return symmetric_group(static_cast<std::size_t>(s.args[0]));
  if (n == "alt") return alternating_group(static_cast<std::size_t>(s.args[0]));
  if (n == "perm") {
    std::vector<Permutation> gens;
    std::size_t degree = 1;
    for (const auto& c : s.strings) {
      gens.push_back(Permutation::from_cycles(c, 0, true));
      degree = std::max(degree, gens.back().degree());
    }
    for (auto& p : gens) p = p.extended(degree);
    return materialize(std::span<const Permutation>(gens), degree);
  }
  if (n == "extraspecial") return extraspecial(as_u64(s.args[0]), as_uint(s.args[1]), parse_sign(s.sign));
  if (n == "mna")
    return minimal_nonabelian_pq(as_u64(int_param(s, "p")), static_cast<std::size_t>(int_param(s, "k")),
                                 as_u64(int_param(s, "q")), as_uint(int_param(s, "b")));
  if (n == "familyB") return family_B(as_u64(int_param(s, "p")), as_uint(int_param(s, "a")), build_group(spec_param(s, "mna")));
  if (n == "familyC1") return family_C1(as_u64(int_param(s, "p")), as_uint(int_param(s, "a")), build_group(spec_param(s, "mna")));
  if (n == "familyC2" || n == "familyC3") {
    auto f = n == "familyC2" ? family_C2 : family_C3;
    return f(as_u64(int_param(s, "p")), as_uint(int_param(s, "m")), static_cast<std::size_t>(int_param(s, "k")),
             as_u64(int_param(s, "q")), as_uint(int_param(s, "n")));
  }
  if (n == "familyC4") {
    C4Shape shape;
    const auto& kind = s.param("shape")->word;
    if (kind == "elementary") {
      shape.kind = C4Shape::Kind::elementary;
      shape.k = static_cast<std::size_t>(int_param(s, "k"));
    } else if (kind == "extraspecial") {
      shape.kind = C4Shape::Kind::extraspecial;
      shape.n = as_uint(int_param(s, "n"));
      shape.sign = parse_sign(s.param("sign")->word);
    } else {
      throw Error(ErrorKind::parse_error, "familyC4: shape must be elementary or extraspecial");
    }
    return family_C4(as_u64(int_param(s, "q")), shape, as_u64(int_param(s, "p")), as_uint(int_param(s, "a")));
  }
  if (n == "typeB")
    return typeB_presentation(TypeBParams{as_u64(int_param(s, "p")), as_uint(int_param(s, "alpha")),
                                          as_uint(int_param(s, "beta")), as_uint(int_param(s, "rho")),
                                          as_uint(int_param(s, "sigma"))});
  if (n == "U" || n == "UmodD" || n == "UmodN") {
    auto ctx = build_U(as_u64(int_param(s, "p")), as_uint(int_param(s, "m")));
    if (n == "U") return std::move(ctx.group);
    if (n == "UmodD") return quotient_UN(ctx, subgroup_D(ctx));
    auto members = enumerate_script_N(ctx);
    auto idx = int_param(s, "index");
    if (idx < 0 || static_cast<std::size_t>(idx) >= members.size())
      throw Error(ErrorKind::invalid_parameters, "UmodN: index " + std::to_string(idx) + " out of range (" +
                                                     std::to_string(members.size()) + " members)");
    return quotient_UN(ctx, members[static_cast<std::size_t>(idx)]);
  }
  if (n == "present") return presented_group(parse_presentation(s.strings[0]));
  throw Error(ErrorKind::parse_error, "unknown constructor '" + n + "'");
}

inline FiniteGroup build_group(std::string_view text) { return build_group(parse_spec(text)); }

}  // namespace expcrit
