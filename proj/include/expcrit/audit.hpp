// expcrit: exponent-critical finite groups
// Requirements: C++20

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "error.hpp"
#include "families.hpp"
#include "spec_dsl.hpp"
#include "structure.hpp"
#include "universal.hpp"
#include "witness.hpp"

namespace expcrit {

struct AuditCheck {
  std::string label;
  std::string subject;
  CheckStatus status = CheckStatus::pass;
  std::string detail;
};

struct AuditReport {
  std::string suite;
  std::map<std::string, std::string> params;
  std::vector<AuditCheck> checks;

  std::size_t count(CheckStatus s) const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [s](const AuditCheck& c) { return c.status == s; }));
  }
  bool ok() const { return count(CheckStatus::fail) == 0; }
};

inline const std::vector<std::string>& audit_suites() {
  static const std::vector<std::string> suites = {"thmA", "thmB", "thmC", "thmD", "thmE", "lem45", "lem46", "corpus"};
  return suites;
}

// ---------------------------------------------------------------------------
// Corpus

struct CorpusEntry {
  std::string spec;
  std::string family;
  u64 designated_prime = 0;  // prime expected to have no witness, 0 if none
  bool negative = false;     // control expected to fail criticality or be rejected
};

inline std::vector<CorpusEntry> builtin_corpus() {
  std::vector<CorpusEntry> c;
  for (int n = 6; n <= 64; n += 2) c.push_back({"dihedral " + std::to_string(n), "dihedral"});
  for (int n = 8; n <= 48; n += 4) c.push_back({"quaternion " + std::to_string(n), "dicyclic"});
  for (int n = 3; n <= 5; ++n) c.push_back({"sym " + std::to_string(n), "symmetric"});
  for (int n = 3; n <= 5; ++n) c.push_back({"alt " + std::to_string(n), "alternating"});
  for (u64 p : {2, 3})
    for (const auto& t : typeB_parameter_list(p, 5))
      c.push_back({"typeB p=" + std::to_string(p) + " alpha=" + std::to_string(t.alpha) + " beta=" + std::to_string(t.beta) +
                       " rho=" + std::to_string(t.rho) + " sigma=" + std::to_string(t.sigma),
                   "typeB", p});
  c.push_back({"familyC1 p=3 a=1 mna=(quaternion 8)", "familyC1", 3});
  c.push_back({"familyC1 p=3 a=2 mna=(dihedral 8)", "familyC1", 3});
  c.push_back({"familyC2 p=2 m=2 k=2 q=3 n=1", "familyC2", 2});
  c.push_back({"familyC2 p=2 m=1 k=2 q=3 n=1", "familyC2", 2});
  c.push_back({"familyC2 p=5 m=1 k=1 q=2 n=1", "familyC2", 5});
  c.push_back({"familyC3 p=3 m=2 k=1 q=2 n=1", "familyC3", 3});
  c.push_back({"familyC3 p=2 m=2 k=2 q=3 n=1", "familyC3", 2});
  c.push_back({"familyC4 q=3 shape=elementary k=2 p=2 a=3", "familyC4", 2});
  c.push_back({"familyC4 q=3 shape=extraspecial n=1 sign=+ p=2 a=2", "familyC4", 2});
  c.push_back({"familyB p=5 a=1 mna=(alt 4)", "familyB", 5});
  c.push_back({"familyB p=5 a=2 mna=(sym 3)", "familyB", 5});
  c.push_back({"familyB p=5 a=1 mna=(mna p=7 k=1 q=3 b=1)", "familyB", 5});
  c.push_back({"familyB p=7 a=1 mna=(sym 3)", "familyB", 7});
  c.push_back({"familyB p=7 a=1 mna=(alt 4)", "familyB", 7});
  c.push_back({"directprod(cyclic 35, sym 3)", "product"});
  c.push_back({"directprod(cyclic 7, familyB p=5 a=1 mna=(alt 4))", "product"});
  for (auto [p, m] : {std::pair<u64, unsigned>{2, 2}, {2, 3}, {2, 4}, {3, 2}}) {
    const std::string pm = "p=" + std::to_string(p) + " m=" + std::to_string(m);
    c.push_back({"U " + pm, "U"});
    auto count = enumerate_script_N(build_U(p, m)).size();
    for (std::size_t i = 0; i < count; ++i) c.push_back({"UmodN " + pm + " index=" + std::to_string(i), "UmodN", p});
  }
  // negative controls
  c.push_back({"present <a, b, c | a^3, b^3, c^2, [a,b], (a*c)^2, (b*c)^2>", "reducible-action", 3, true});
  c.push_back({"directprod(cyclic 5, dihedral 12)", "non-minimal-complement", 5, true});
  c.push_back({"familyB p=5 a=1 mna=(sym 4)", "non-minimal-complement", 5, true});
  c.push_back({"directprod(cyclic 3, sym 3)", "C3-shape-m1", 3, true});
  c.push_back({"familyC3 p=3 m=1 k=1 q=2 n=1", "C3-shape-m1", 3, true});
  return c;
}

namespace detail {

struct Built {
  std::optional<FiniteGroup> group;
  std::optional<Error> build_error;
  std::optional<AnalysisReport> report;
  std::optional<Error> analysis_error;
  bool analyzed = false;
};

class Corpus {
 public:
  explicit Corpus(std::vector<CorpusEntry> entries) : entries_(std::move(entries)), built_(entries_.size()) {}

  std::size_t size() const { return entries_.size(); }
  const CorpusEntry& entry(std::size_t i) const { return entries_[i]; }

  const FiniteGroup* group(std::size_t i) {
    auto& b = built_[i];
    if (!b.group && !b.build_error) {
      try {
        b.group = build_group(entries_[i].spec);
      } catch (const Error& e) {
        b.build_error = e;
      }
    }
    return b.group ? &*b.group : nullptr;
  }
  const Error* build_error(std::size_t i) {
    group(i);
    return built_[i].build_error ? &*built_[i].build_error : nullptr;
  }

  const AnalysisReport* report(std::size_t i) {
    auto& b = built_[i];
    if (!b.analyzed) {
      b.analyzed = true;
      if (const auto* g = group(i)) {
        try {
          b.report = analyze(*g);
        } catch (const Error& e) {
          b.analysis_error = e;
        }
      }
    }
    return b.report ? &*b.report : nullptr;
  }
  const Error* analysis_error(std::size_t i) {
    report(i);
    return built_[i].analysis_error ? &*built_[i].analysis_error : nullptr;
  }

 private:
  std::vector<CorpusEntry> entries_;
  std::vector<Built> built_;
};

class Recorder {
 public:
  explicit Recorder(AuditReport& r) : r_(r) {}
  void check(std::string label, std::string subject, bool ok, std::string detail) {
    r_.checks.push_back({std::move(label), std::move(subject), ok ? CheckStatus::pass : CheckStatus::fail, std::move(detail)});
  }
  void skip(std::string label, std::string subject, std::string reason) {
    r_.checks.push_back({std::move(label), std::move(subject), CheckStatus::skip, std::move(reason)});
  }
  void add(std::string subject, const Check& c) { r_.checks.push_back({c.label, std::move(subject), c.status, c.detail}); }

 private:
  AuditReport& r_;
};

inline std::string over_cap(const Error& e) { return "skipped: over cap (" + std::string(e.what()) + ")"; }

class Params {
 public:
  Params(const std::map<std::string, std::string>& raw, std::vector<std::string> allowed) : raw_(raw) {
    for (const auto& [k, v] : raw)
      if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
        throw Error(ErrorKind::invalid_parameters, "unknown audit parameter '" + k + "'");
  }
  std::optional<i64> integer(const std::string& key) const {
    auto it = raw_.find(key);
    if (it == raw_.end()) return std::nullopt;
    try {
      std::size_t used = 0;
      i64 v = std::stoll(it->second, &used);
      if (used == it->second.size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::invalid_parameters, "parameter " + key + " must be an integer");
  }
  std::optional<std::string> text(const std::string& key) const {
    auto it = raw_.find(key);
    return it == raw_.end() ? std::nullopt : std::optional<std::string>(it->second);
  }

 private:
  const std::map<std::string, std::string>& raw_;
};

inline bool is_cyclic(const FiniteGroup& g, const Subgroup& s) { return exponent(g, s) == s.order(); }

/// Whether conjugation by x leaves no subgroup strictly between `base` and `top`
/// invariant other than those two; the section top/base must be elementary abelian.
inline bool acts_irreducibly_on(const FiniteGroup& g, const Subgroup& top, const Subgroup& base, ElementId x) {
  for (auto v : top.members) {
    if (base.contains(v)) continue;
    Subgroup h = base;
    ElementId y = v;
    do {
      h = join(g, h, y);
      y = g.conj(y, x);
    } while (y != v);
    if (h.order() != top.order()) return false;
  }
  return true;
}

inline Subgroup commutator_subgroup(const FiniteGroup& g, const Subgroup& a, const Subgroup& b) {
  std::vector<ElementId> gens;
  for (auto x : a.generators)
    for (auto y : b.generators) gens.push_back(commutator(g, x, y));
  return normal_closure(g, gens);
}

inline std::string primes_text(const std::vector<std::pair<u64, int>>& f) {
  std::string s;
  for (auto [p, k] : f) s += (s.empty() ? "" : "*") + std::to_string(p) + (k > 1 ? "^" + std::to_string(k) : "");
  return s.empty() ? "1" : s;
}

/// G = S x H with S a cyclic Sylow p-subgroup and H minimal non-abelian.
inline bool cyclic_sylow_times_mna(const FiniteGroup& g, u64 p) {
  auto s = sylow_subgroup(g, p);
  if (!is_cyclic(g, s)) return false;
  auto z = center(g);
  if (!is_subset(s, z)) return false;
  std::vector<u64> others;
  for (auto q : prime_divisors(g.order()))
    if (q != p) others.push_back(q);
  auto h = hall_subgroup(g, others);
  return h && is_minimal_nonabelian(as_group(g, *h));
}

/// Which of the four two-prime shapes G has with respect to p, or 0.
inline int two_prime_shape(const FiniteGroup& g, u64 p) {
  u64 q = 0;
  for (auto r : prime_divisors(g.order()))
    if (r != p) q = r;
  if (cyclic_sylow_times_mna(g, p)) return 1;
  auto P = sylow_subgroup(g, p);
  auto Q = sylow_subgroup(g, q);
  if (is_normal(g, P) && is_abelian(g, P) && is_cyclic(g, Q)) {
    const ElementId x = Q.generators.front();
    const auto cp = centralizer(g, P);
    if (g.order() / cp.order() != q) return 0;
    const u64 e = exponent(g, P);
    std::vector<ElementId> powers;
    for (auto y : P.members) powers.push_back(g.pow(y, static_cast<i64>(p)));
    std::sort(powers.begin(), powers.end());
    powers.erase(std::unique(powers.begin(), powers.end()), powers.end());
    const auto Pp = subgroup_from_members(g, powers);
    // homocyclic iff |P| = |Omega_1(P)|^m where p^m = exp(P)
    std::size_t omega = 0;
    for (auto y : P.members) omega += g.pow(y, static_cast<i64>(p)) == kIdentity;
    const bool homocyclic = ipow(omega, ilog(e, p)) == P.order();
    if (homocyclic && acts_irreducibly_on(g, P, Pp, x)) return 2;
    auto comm = commutator_subgroup(g, P, Q);
    if (e > p && exponent(g, comm) == p && acts_irreducibly_on(g, comm, trivial_subgroup(), x)) {
      for (auto a : P.members)
        if (g.order_of(a) == e && g.conj(a, x) == a && intersection(g, closure(g, {a}), comm).order() == 1 &&
            closure(g, {a}).order() * comm.order() == P.order())
          return 3;
    }
    return 0;
  }
  if (is_normal(g, Q) && !is_normal(g, P) && is_cyclic(g, P)) {
    auto qg = as_group(g, Q);
    if (!is_special(qg)) return 0;
    const ElementId x = P.generators.front();
    auto qd = derived_subgroup(g, Q);
    for (auto y : qd.members)
      if (g.conj(y, x) != y) return 0;
    if (acts_irreducibly_on(g, Q, qd, x)) return 4;
  }
  return 0;
}

/// Pascal's triangle modulo `modulus` for rows 0..n.
inline std::vector<std::vector<i64>> binomials_mod(std::size_t n, i64 modulus) {
  std::vector<std::vector<i64>> c(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    c[i].assign(i + 1, 1 % modulus);
    for (std::size_t j = 1; j < i; ++j) c[i][j] = (c[i - 1][j - 1] + c[i - 1][j]) % modulus;
  }
  return c;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Identities for a group with an abelian maximal subgroup

struct IdentityTally {
  std::size_t pairs = 0;
  std::size_t kappa_failures = 0, power_failures = 0, b_order_failures = 0, conj_failures = 0;
  bool sampled = false;
};

/// Checks, for x in A and b outside A, that x -> [x,b] is a homomorphism on A and
/// the power, commutator-order and conjugation identities. `r` is |G:A|, a prime.
/// Above `exhaustive_limit` a fixed-seed sample of `samples` pairs is used.
inline IdentityTally verify_abelian_maximal_identities(const FiniteGroup& g, const Subgroup& a, u64 r,
                                                      std::size_t exhaustive_limit = 500, std::size_t samples = 2000) {
  IdentityTally t;
  const u64 e = exponent(g);
  const auto binom = detail::binomials_mod(static_cast<std::size_t>(e) + 1, static_cast<i64>(e));
  std::vector<ElementId> outside;
  for (ElementId y = 0; y < g.order(); ++y)
    if (!a.contains(y)) outside.push_back(y);
  std::vector<std::pair<ElementId, ElementId>> pairs;
  if (g.order() <= exhaustive_limit) {
    for (auto b : outside)
      for (auto x : a.members) pairs.emplace_back(x, b);
  } else {
    t.sampled = true;
    std::mt19937_64 rng(0x5eed);
    for (std::size_t i = 0; i < samples; ++i)
      pairs.emplace_back(a.members[rng() % a.members.size()], outside[rng() % outside.size()]);
  }
  std::mt19937_64 rng(0xc0ffee);
  const std::size_t n = static_cast<std::size_t>(e);
  std::vector<ElementId> iter(n + 2);
  for (auto [x, b] : pairs) {
    ++t.pairs;
    // kappa on a partner y
    const ElementId y = a.members[rng() % a.members.size()];
    if (commutator(g, g.mul(x, y), b) != g.mul(commutator(g, x, b), commutator(g, y, b))) ++t.kappa_failures;
    iter[0] = x;
    for (std::size_t j = 1; j <= std::max<std::size_t>(n, r); ++j) {
      if (j >= iter.size()) iter.resize(j + 1);
      iter[j] = commutator(g, iter[j - 1], b);
    }
    // (bx)^i = b^i x^i prod_{j=1}^{i-1} [x,_j b]^C(i,j+1)
    const ElementId bx = g.mul(b, x);
    ElementId lhs = kIdentity;
    bool power_ok = true, conj_ok = true;
    for (std::size_t i = 1; i <= n; ++i) {
      lhs = g.mul(lhs, bx);
      ElementId rhs = g.mul(g.pow(b, static_cast<i64>(i)), g.pow(x, static_cast<i64>(i)));
      for (std::size_t j = 1; j + 1 <= i; ++j) rhs = g.mul(rhs, g.pow(iter[j], binom[i][j + 1]));
      power_ok = power_ok && lhs == rhs;
      // b^-i x b^i = x prod_{j=1}^{i} [x,_j b]^C(i,j)
      ElementId c = x;
      for (std::size_t j = 1; j <= i; ++j) c = g.mul(c, g.pow(iter[j], binom[i][j]));
      conj_ok = conj_ok && g.conj(x, g.pow(b, static_cast<i64>(i))) == c;
    }
    t.power_failures += !power_ok;
    t.conj_failures += !conj_ok;
    // [x,_r b] = prod_{i=1}^{r-1} [x,_i b]^-C(r,i)
    ElementId rhs = kIdentity;
    for (std::size_t i = 1; i < r; ++i) rhs = g.mul(rhs, g.pow(iter[i], -static_cast<i64>(binomial(r, i))));
    t.b_order_failures += iter[r] != rhs;
  }
  return t;
}

/// An abelian maximal subgroup that is normal of prime index, if any (first in the
/// sorted maximal list).
inline std::optional<Subgroup> abelian_maximal_of_prime_index(const FiniteGroup& g) {
  for (const auto& m : maximal_subgroups(g))
    if (is_abelian(g, m) && is_prime(g.order() / m.order()) && is_normal(g, m)) return m;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Suites

namespace detail {

inline void corpus_member_checks(Corpus& c, Recorder& rec, bool brute_force) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& e = c.entry(i);
    const auto* g = c.group(i);
    if (!g) {
      const auto* err = c.build_error(i);
      if (e.negative)
        rec.check("corpus.negative", e.spec, true, "rejected at construction: " + std::string(to_string(err->kind())));
      else if (err->kind() == ErrorKind::cap_exceeded)
        rec.skip("corpus.build", e.spec, over_cap(*err));
      else
        rec.check("corpus.build", e.spec, false, err->what());
      continue;
    }
    const auto* rep = c.report(i);
    if (!rep) {
      rec.skip("corpus.analyze", e.spec, "skipped: " + std::string(c.analysis_error(i)->what()));
      continue;
    }
    rec.check("corpus.analyze", e.spec, true,
              "order " + std::to_string(rep->order) + " = " + primes_text(rep->factorization) + ", exponent " +
                  std::to_string(rep->exponent) + ", critical " + (rep->exponent_critical ? "true" : "false") +
                  ", type " + std::string(to_string(rep->type)));
    if (e.negative) {
      rec.check("corpus.negative", e.spec, !rep->exponent_critical, "negative control must not be exponent-critical");
    } else if (e.designated_prime != 0 && e.family != "UmodN") {
      bool missing = false;
      for (const auto& w : rep->witnesses)
        if (w.prime == e.designated_prime) missing = !w.found();
      rec.check("corpus.family", e.spec, rep->exponent_critical && missing,
                "exponent-critical with no " + std::to_string(e.designated_prime) + "-witness");
    }
    if (!brute_force) continue;
    if (g->order() > 500) {
      rec.skip("witness.bruteforce", e.spec, "skipped: order above 500");
      continue;
    }
    SubgroupLattice lat;
    try {
      lat = all_subgroups(*g);
    } catch (const Error& err) {
      rec.skip("witness.bruteforce", e.spec, over_cap(err));
      continue;
    }
    bool agree = true;
    std::string detail;
    for (const auto& w : rep->witnesses) {
      bool any = false;
      for (const auto& h : lat.subgroups)
        if (is_p_witness(*g, h, w.prime, rep->exponent)) {
          any = true;
          break;
        }
      agree = agree && any == w.found();
      detail += std::to_string(w.prime) + (any ? ":witness " : ":none ");
    }
    rec.check("witness.bruteforce", e.spec, agree, detail + "over " + std::to_string(lat.subgroups.size()) + " subgroups");
  }
}

inline void thmA_checks(Corpus& c, Recorder& rec) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto* rep = c.report(i);
    if (!rep) continue;
    const auto& e = c.entry(i);
    const auto* g = c.group(i);
    const std::size_t primes = rep->factorization.size();
    if (rep->exponent_critical && !g->is_abelian())
      rec.check("thmA.primes", e.spec, primes <= 3, std::to_string(primes) + " prime divisors");
    if (primes >= 4) {
      bool all = std::all_of(rep->witnesses.begin(), rep->witnesses.end(), [](const WitnessReport& w) { return w.found(); });
      rec.check("thmA.four-primes", e.spec, all, "every prime has a witness");
    }
    if (primes == 3 && rep->exponent_critical && !g->is_abelian()) {
      bool central = false, abelian = true;
      auto z = center(*g);
      for (auto [p, k] : rep->factorization) {
        auto s = sylow_subgroup(*g, p);
        abelian = abelian && is_abelian(*g, s);
        central = central || (s.order() > 1 && is_cyclic(*g, s) && is_subset(s, z));
      }
      rec.check("thmA.three-primes", e.spec, central && abelian, "central cyclic Sylow subgroup and abelian Sylow subgroups");
    }
  }
}

inline void thmB_checks(Corpus& c, Recorder& rec) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& e = c.entry(i);
    const auto* g = c.group(i);
    if (!g) {
      if (e.family == "familyB" || (e.negative && e.family == "non-minimal-complement"))
        rec.check(e.negative ? "thmB.negative" : "thmB.construct", e.spec, e.negative,
                  std::string("construction: ") + c.build_error(i)->what());
      continue;
    }
    const auto* rep = c.report(i);
    if (!rep || g->is_abelian() || rep->factorization.size() != 3) continue;
    bool shape = false;
    for (auto [p, k] : rep->factorization) shape = shape || cyclic_sylow_times_mna(*g, p);
    rec.check("thmB.iff", e.spec, shape == rep->exponent_critical,
              std::string("critical ") + (rep->exponent_critical ? "true" : "false") + ", cyclic Sylow x minimal non-abelian " +
                  (shape ? "true" : "false"));
    if (e.family == "familyB") {
      const auto& w = *std::find_if(rep->witnesses.begin(), rep->witnesses.end(),
                                    [&](const WitnessReport& r) { return r.prime == e.designated_prime; });
      rec.check("thmB.family", e.spec, rep->exponent_critical && !w.found(),
                "no " + std::to_string(e.designated_prime) + "-witness");
    }
  }
}

inline void thmC_checks(Corpus& c, Recorder& rec) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& e = c.entry(i);
    const bool c_family = e.family.rfind("familyC", 0) == 0;
    const auto* g = c.group(i);
    if (!g) {
      if (c_family || e.negative) rec.check(e.negative ? "thmC.negative" : "thmC.construct", e.spec, e.negative,
                                            std::string("construction: ") + c.build_error(i)->what());
      continue;
    }
    const auto* rep = c.report(i);
    if (!rep) continue;
    if (e.negative) {
      rec.check("thmC.negative", e.spec, !rep->exponent_critical, "negative control is not exponent-critical");
      continue;
    }
    if (g->is_abelian() || rep->factorization.size() != 2 || !rep->exponent_critical) continue;
    // classify by a prime without a witness
    int shape = 0;
    u64 prime = 0;
    for (const auto& w : rep->witnesses)
      if (!w.found() && shape == 0) {
        shape = two_prime_shape(*g, w.prime);
        prime = w.prime;
      }
    rec.check("thmC.classify", e.spec, shape != 0,
              shape ? "family (" + std::string(shape == 1 ? "i" : shape == 2 ? "ii" : shape == 3 ? "iii" : "iv") +
                          ") with respect to p = " + std::to_string(prime)
                    : "matches none of the four families");
    if (!c_family) continue;
    const int expected = e.family == "familyC1" ? 1 : e.family == "familyC2" ? 2 : e.family == "familyC3" ? 3 : 4;
    const auto& w = *std::find_if(rep->witnesses.begin(), rep->witnesses.end(),
                                  [&](const WitnessReport& r) { return r.prime == e.designated_prime; });
    const int own = two_prime_shape(*g, e.designated_prime);
    // m = 1 in C2 is minimal non-abelian and may also read as shape (i)
    rec.check("thmC.family", e.spec, !w.found() && (own == expected || (expected == 2 && own != 0)),
              "no " + std::to_string(e.designated_prime) + "-witness; shape " + std::to_string(own));
  }
}

inline void thmD_checks(Corpus& c, Recorder& rec, const std::vector<u64>& primes, unsigned max_sum) {
  for (auto p : primes) {
    for (const auto& t : typeB_parameter_list(p, max_sum)) {
      const std::string subject = "typeB p=" + std::to_string(p) + " alpha=" + std::to_string(t.alpha) +
                                  " beta=" + std::to_string(t.beta) + " rho=" + std::to_string(t.rho) +
                                  " sigma=" + std::to_string(t.sigma);
      FiniteGroup g;
      try {
        g = typeB_presentation(t);
      } catch (const Error& err) {
        if (err.kind() == ErrorKind::cap_exceeded)
          rec.skip("thmD.forward", subject, over_cap(err));
        else
          rec.check("thmD.forward", subject, false, err.what());
        continue;
      }
      auto rep = analyze(g);
      const auto dorder = derived_subgroup(g).order();
      const auto rank = generator_rank(g);
      rec.check("thmD.forward", subject,
                rep.exponent_critical && rep.type == PGroupType::typeB && rank == 2 && dorder == p &&
                    g.order() == ipow(p, t.alpha + t.beta + 1),
                "order " + std::to_string(g.order()) + ", type " + std::string(to_string(rep.type)) + ", rank " +
                    std::to_string(rank) + ", |P'| " + std::to_string(dorder));
    }
  }
  // odd-p tuples are pairwise non-isomorphic
  for (auto p : primes) {
    if (p == 2) continue;
    auto list = typeB_parameter_list(p, max_sum);
    std::vector<FiniteGroup> groups;
    for (const auto& t : list) groups.push_back(typeB_presentation(t));
    std::size_t distinct = 0, skipped = 0;
    bool ok = true;
    for (std::size_t i = 0; i < groups.size(); ++i)
      for (std::size_t j = i + 1; j < groups.size(); ++j) {
        if (groups[i].order() != groups[j].order()) {
          ++distinct;
          continue;
        }
        try {
          if (is_isomorphic(groups[i], groups[j])) ok = false;
          else ++distinct;
        } catch (const Error& err) {
          if (err.kind() != ErrorKind::cap_exceeded) throw;
          ++skipped;
        }
      }
    rec.check("thmD.distinct", "typeB p=" + std::to_string(p), ok, std::to_string(distinct) + " pairs distinct");
    if (skipped > 0)
      rec.skip("thmD.distinct", "typeB p=" + std::to_string(p),
               "skipped: over cap (" + std::to_string(skipped) + " pairs share a fingerprint above the isomorphism cap)");
  }
  // converse over the corpus
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto* g = c.group(i);
    const auto* rep = c.report(i);
    if (!g || !rep || !pgroup_prime(*g) || g->is_abelian()) continue;
    const u64 p = *pgroup_prime(*g);
    const bool shape = generator_rank(*g) == 2 && derived_subgroup(*g).order() == p;
    rec.check("thmD.iff", c.entry(i).spec, shape == (rep->type == PGroupType::typeB),
              std::string("2-generated with |P'| = p: ") + (shape ? "true" : "false") + ", type " +
                  std::string(to_string(rep->type)));
  }
}

inline std::vector<std::pair<u64, unsigned>> pm_list(const Params& params, std::vector<std::pair<u64, unsigned>> defaults) {
  auto p = params.integer("p");
  auto m = params.integer("m");
  if (p.has_value() != m.has_value()) throw Error(ErrorKind::invalid_parameters, "give both p and m, or neither");
  if (p) return {{static_cast<u64>(*p), static_cast<unsigned>(*m)}};
  return defaults;
}

inline std::string pm_subject(u64 p, unsigned m) { return "U p=" + std::to_string(p) + " m=" + std::to_string(m); }

inline void thmE_family_checks(u64 p, unsigned m, Recorder& rec) {
  const std::string subject = pm_subject(p, m);
  UContext u;
  try {
    u = build_U(p, m);
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::cap_exceeded) throw;
    rec.skip("thmE.build", subject, over_cap(err));
    return;
  }
  try {
    auto t = todd_coxeter(u_presentation(p, m));
    rec.check("thmE.cosets", subject, t.num_cosets == u.group.order(),
              std::to_string(t.num_cosets) + " cosets, |U| = " + std::to_string(u.group.order()));
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::cap_exceeded) throw;
    rec.skip("thmE.cosets", subject, over_cap(err));
  }
  std::vector<Subgroup> members;
  try {
    members = enumerate_script_N(u);
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::cap_exceeded) throw;
    rec.skip("thmE.N", subject, over_cap(err));
    return;
  }
  auto d = subgroup_D(u);
  const auto reps = distinct_quotients(u, members);
  rec.check("thmE.N", subject, std::find(members.begin(), members.end(), d) != members.end(),
            std::to_string(members.size()) + " members, " + std::to_string(reps.size()) +
                " quotients up to isomorphism; D is a member");
  auto ud = quotient_UN(u, d);
  const u64 ud_order = ipow(p, (m - 1) * static_cast<unsigned>(p + 1));
  rec.check("thmE.UmodD", subject, ud.order() == ud_order, "|U/D| = " + std::to_string(ud.order()));
  const bool converse = p % 2 == 1 || m >= 3;
  const u64 derived_order = ipow(p, (m - 1) * static_cast<unsigned>(p - 1));
  const auto derived = derived_subgroup(u.group);
  for (std::size_t i = 0; i < members.size(); ++i) {
    const std::string sub = subject + " N#" + std::to_string(i);
    auto q = quotient_UN(u, members[i]);
    auto rep = analyze(q);
    rec.check("thmE.ii", sub, !q.is_abelian() && rep.exponent_critical && rep.exponent == ipow(p, m),
              "order " + std::to_string(q.order()) + ", exponent " + std::to_string(rep.exponent) + ", critical " +
                  (rep.exponent_critical ? "true" : "false"));
    if (converse) {
      const auto qd = derived_subgroup(q).order();
      rec.check("thmE.iii", sub, rep.type == PGroupType::typeA && qd == derived_order &&
                                     intersection(u.group, members[i], derived).order() == 1,
                "type " + std::string(to_string(rep.type)) + ", |(U/N)'| = " + std::to_string(qd));
    } else {
      rec.check("thmE.iii", sub, rep.type != PGroupType::typeA, "type " + std::string(to_string(rep.type)) + " (exponent 4, no type A)");
    }
  }
}

/// Realizes a type-A group P of exponent p^m as U/N via a0 -> a, b0 -> b.
inline void thmE_realize(const std::string& subject, const FiniteGroup& g, Recorder& rec) {
  const u64 p = *pgroup_prime(g);
  const u64 e = exponent(g);
  const unsigned m = static_cast<unsigned>(ilog(e, p));
  if (m < 2) {
    rec.skip("thmE.i", subject, "skipped: exponent p");
    return;
  }
  std::optional<Subgroup> abelian_max;
  for (const auto& mx : maximal_subgroups(g))
    if (is_abelian(g, mx)) abelian_max = mx;
  const auto& a_sub = *abelian_max;
  // a^{p^{m-1}} [a,_{p-1} b]^{p^{m-2}} = 1 for all a of order p^m and b outside A
  bool identity = true;
  std::optional<std::pair<ElementId, ElementId>> gens;
  for (auto a : a_sub.members) {
    if (g.order_of(a) != e) continue;
    for (ElementId b = 0; b < g.order(); ++b) {
      if (a_sub.contains(b)) continue;
      const ElementId t = g.mul(g.pow(a, static_cast<i64>(ipow(p, m - 1))),
                                g.pow(iterated_commutator(g, a, b, static_cast<unsigned>(p - 1)), static_cast<i64>(ipow(p, m - 2))));
      identity = identity && t == kIdentity;
      if (!gens && closure(g, {a, b}).order() == g.order()) gens = std::pair{a, b};
    }
  }
  rec.check("thmE.i.identity", subject, identity, "a^(p^(m-1)) [a,_(p-1) b]^(p^(m-2)) = 1 for all a of order p^m, b outside A");
  if (!gens) {
    rec.check("thmE.i", subject, false, "no generating pair (a, b) with o(a) = p^m");
    return;
  }
  UContext u;
  try {
    u = build_U(p, m, 0);
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::cap_exceeded) throw;
    rec.skip("thmE.i", subject, over_cap(err));
    return;
  }
  GroupHom h;
  try {
    h = hom_from_images(u.group, g, std::vector<ElementId>{gens->first, gens->second});
  } catch (const Error& err) {
    rec.check("thmE.i", subject, false, std::string("a0 -> a, b0 -> b is not a homomorphism: ") + err.what());
    return;
  }
  auto n = subgroup_from_members(u.group, h.kernel());
  const bool surjective = u.group.order() / n.order() == g.order();
  const bool in_family = in_script_N(u, n, subgroup_D(u), frattini_by_generators(u), derived_by_generators(u));
  std::string detail = "kernel of order " + std::to_string(n.order()) + " in U(" + std::to_string(p) + "," + std::to_string(m) + ")";
  bool iso = true;
  if (surjective && g.order() <= 512) {
    try {
      iso = is_isomorphic(quotient_UN(u, n), g);
      detail += ", U/N isomorphic by backtracking";
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::cap_exceeded) throw;
      detail += ", backtracking cross-check over cap";
    }
  }
  if (u.group.order() <= limits().lattice_order) {
    auto members = enumerate_script_N(u);
    const bool listed = std::find(members.begin(), members.end(), n) != members.end();
    detail += listed ? ", N found in the enumeration" : ", N missing from the enumeration";
    iso = iso && listed;
  }
  rec.check("thmE.i", subject, surjective && in_family && iso, detail);
}

}  // namespace detail

/// Runs an audit suite. `params` are key=value pairs from the command line;
/// unknown keys raise invalid-parameters.
inline AuditReport run_audit(const std::string& suite, const std::map<std::string, std::string>& raw) {
  using namespace detail;
  if (std::find(audit_suites().begin(), audit_suites().end(), suite) == audit_suites().end())
    throw Error(ErrorKind::invalid_parameters, "unknown audit suite '" + suite + "'");
  AuditReport report;
  report.suite = suite;
  report.params = raw;
  Recorder rec(report);

  auto corpus_from = [&](const Params& params) {
    if (auto s = params.text("spec")) {
      parse_spec(*s);
      return Corpus({CorpusEntry{*s, "user"}});
    }
    return Corpus(builtin_corpus());
  };

  if (suite == "corpus") {
    Params params(raw, {"spec"});
    auto c = corpus_from(params);
    corpus_member_checks(c, rec, true);
    thmA_checks(c, rec);
  } else if (suite == "thmA") {
    Params params(raw, {"spec"});
    auto c = corpus_from(params);
    thmA_checks(c, rec);
  } else if (suite == "thmB") {
    Params params(raw, {"spec"});
    auto c = corpus_from(params);
    thmB_checks(c, rec);
  } else if (suite == "thmC") {
    Params params(raw, {"spec"});
    auto c = corpus_from(params);
    thmC_checks(c, rec);
  } else if (suite == "thmD") {
    Params params(raw, {"spec", "p", "max_sum"});
    auto c = corpus_from(params);
    std::vector<u64> primes{2, 3};
    if (auto p = params.integer("p")) primes = {static_cast<u64>(*p)};
    thmD_checks(c, rec, primes, static_cast<unsigned>(params.integer("max_sum").value_or(5)));
  } else if (suite == "thmE") {
    Params params(raw, {"p", "m", "spec"});
    const auto pms = pm_list(params, {{2, 2}, {2, 3}, {2, 4}, {3, 2}});
    if (!params.text("spec"))
      for (auto [p, m] : pms) thmE_family_checks(p, m, rec);
    auto c = corpus_from(params);
    for (std::size_t i = 0; i < c.size(); ++i) {
      const auto* rep = c.report(i);
      if (!rep || rep->type != PGroupType::typeA) continue;
      const auto* g = c.group(i);
      if (g->order() > 512) {
        rec.skip("thmE.i", c.entry(i).spec, "skipped: order above 512");
        continue;
      }
      const u64 p = *pgroup_prime(*g);
      if (params.integer("p") && !std::any_of(pms.begin(), pms.end(), [&](auto pm) {
            return pm.first == p && ipow(p, pm.second) == rep->exponent;
          }))
        continue;
      thmE_realize(c.entry(i).spec, *g, rec);
    }
  } else if (suite == "lem45") {
    Params params(raw, {"spec", "samples"});
    auto c = corpus_from(params);
    const auto samples = static_cast<std::size_t>(params.integer("samples").value_or(2000));
    for (std::size_t i = 0; i < c.size(); ++i) {
      const auto* g = c.group(i);
      if (!g || g->is_abelian()) continue;
      std::optional<Subgroup> a;
      try {
        a = abelian_maximal_of_prime_index(*g);
      } catch (const Error& err) {
        rec.skip("lem45", c.entry(i).spec, over_cap(err));
        continue;
      }
      if (!a) continue;
      const u64 r = g->order() / a->order();
      auto t = verify_abelian_maximal_identities(*g, *a, r, 500, samples);
      const std::string how = std::to_string(t.pairs) + (t.sampled ? " sampled" : " exhaustive") + " pairs (x, b)" +
                              (pgroup_prime(*g) ? "" : ", index " + std::to_string(r));
      const auto& s = c.entry(i).spec;
      rec.check("lem45.kappa", s, t.kappa_failures == 0, how + ", " + std::to_string(t.kappa_failures) + " failures");
      rec.check("lem45.power", s, t.power_failures == 0, how + ", " + std::to_string(t.power_failures) + " failures");
      rec.check("lem45.b_order", s, t.b_order_failures == 0, how + ", " + std::to_string(t.b_order_failures) + " failures");
      rec.check("lem45.conj", s, t.conj_failures == 0, how + ", " + std::to_string(t.conj_failures) + " failures");
    }
  } else if (suite == "lem46") {
    Params params(raw, {"p", "m"});
    for (auto [p, m] : pm_list(params, {{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}})) {
      try {
        auto u = build_U(p, m);
        for (const auto& chk : verify_u_facts(u)) rec.add(pm_subject(p, m), chk);
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::cap_exceeded) throw;
        rec.skip("lem46", pm_subject(p, m), over_cap(err));
      }
    }
  }
  return report;
}

}  // namespace expcrit
