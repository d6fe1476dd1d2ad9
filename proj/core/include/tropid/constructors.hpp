#pragma once

// Identity families and the witness matrices that falsify them: factor
// witnesses in UT_{n+1}, identities generated from words containing all
// factors of a given length, separating identities between UT_n and
// UT_{n+1}, the full-matrix composition schemes, and the separation of
// M_{p-1} from M_p for primes p.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "tropid/tropical.hpp"
#include "tropid/word.hpp"

namespace tropid {

  using WitnessAssignment = Assignment<TropMatrix>;

  // For a word w of length n: c_1 = 0, c_k = c_{k-1} - 1 if w_{k-1} = a
  // and c_{k-1} + 1 if w_{k-1} = b. Then a = diag(c_1, ..., c_{n+1}) and b
  // has -c_1, -c_{n+1} at the two diagonal corners, 0 on the superdiagonal
  // and -inf elsewhere. For words u, v with w a factor of u but not of v,
  // u(ab, ba) and v(ab, ba) differ in entry (0, n).
  struct FactorWitness {
    Word                      word;
    std::vector<std::int64_t> params;
    TropMatrix                a;
    TropMatrix                b;

    WitnessAssignment assignment() const {
      return {a, b};
    }
  };

  FactorWitness factor_witness(std::string_view w);

  // <waw[ab,ba], wbw[ab,ba]>, valid for UT_n when w has every word of
  // length n - 1 as a factor and neither waw nor wbw contains a run of n
  // equal letters. Throws PreconditionFailed naming the missing factor or
  // the offending run.
  Identity zur_identity(std::string_view w, std::size_t n);

  // An identity satisfied by UT_n together with matrices in UT_{n+1}
  // falsifying it under a -> witness.a, b -> witness.b.
  struct SeparatingPair {
    std::size_t       n;
    Identity          identity;
    WitnessAssignment witness;
    // Factor of the inner left word but not the inner right word whose
    // factor witness is `witness`; empty for n = 1.
    Word separating_word;
    // For n >= 2 the identity is <inner_lhs[ab,ba], inner_rhs[ab,ba]>.
    Word inner_lhs;
    Word inner_rhs;
  };

  SeparatingPair ut_separating_pair(std::size_t n);

  // The alternating word b(ab)^{(n-2)/2} (n even) or (ba)^{(n-1)/2} (n odd),
  // n >= 4.
  Word alternating_tail(std::size_t n);

  // The base word whose doubling around a single a or b yields the UT_n
  // separating identity for n >= 4.
  Word separating_base_word(std::size_t n);

  // lcm{1, ..., n}.
  Integer lcm_upto(std::size_t n);

  // <ua, va>[(qr)^t[a^N, b^N], (qr)^t r[a^N, b^N]] with N = lcm{1..n}.
  // Requires t >= (n-1)^2 + 1 unless allow_remark is set.
  Identity fulliden_compose_i(WordExpr const& u,
                              WordExpr const& v,
                              WordExpr const& q,
                              WordExpr const& r,
                              std::uint64_t   t,
                              std::size_t     n,
                              bool            allow_remark = false);

  // <ua, va>[wqp[a^N, b^N], wrp[a^N, b^N]] with w = (pqprp)^t. An omitted
  // exponent means w = pqprp and requires allow_remark.
  Identity fulliden_compose_ii(WordExpr const&              u,
                               WordExpr const&              v,
                               WordExpr const&              p,
                               WordExpr const&              q,
                               WordExpr const&              r,
                               std::optional<std::uint64_t> t,
                               std::size_t                  n,
                               bool                         allow_remark = false);

  // The 5832-letter identity satisfied by M_3, and the pair of matrices in
  // M_4 that falsifies it.
  Identity          m3_identity();
  WitnessAssignment m4_witness();

  // a^2b^4a^2 a^2b^2 a^2b^4a^2 = a^2b^4a^2 b^2a^2 a^2b^4a^2, satisfied by
  // M_2.
  Identity m2_falsifier_pair();

  // One level k of the recursive construction: an identity q = r satisfied
  // by UT_k and the exponent t_k >= (k-1)^2 + 1.
  struct InductLevel {
    std::size_t   k;
    WordExpr      q;
    WordExpr      r;
    std::uint64_t t;
  };

  struct InductConfig {
    std::size_t n;
    // levels[i].k == i + 3, for 3 <= k <= n.
    std::vector<InductLevel> levels;
  };

  // The words A_k, B_k for 2 <= k <= n, indexed by k (entries 0 and 1 are
  // unused): A_n = a, B_n = b and for k = n, ..., 3
  //   A_{k-1} = (q_k r_k)^{t_k}[A_k^K, B_k^K],
  //   B_{k-1} = (q_k r_k)^{t_k} r_k[A_k^K, B_k^K],   K = lcm{1..k}.
  struct InductWords {
    std::vector<std::optional<WordExpr>> a;
    std::vector<std::optional<WordExpr>> b;
  };

  InductWords induct_words(InductConfig const& cfg);

  // <u2[A_2,B_2] A_2 A_3 ... A_{n-1}, v2[A_2,B_2] A_2 A_3 ... A_{n-1}>.
  Identity induct_identity(InductConfig const& cfg,
                           WordExpr const&     u2,
                           WordExpr const&     v2);

  // Replacement of a level identity q = r whose B-value has repeated
  // diagonal entries: q a^s q = r a^s r (doubled) or q a^s r = r a^s q
  // (crossed), before the a-count adjustment.
  struct PrimeRepair {
    enum class Form { doubled, crossed };
    Form          form;
    std::uint64_t spacer;
  };

  // Evaluated state of one level of the prime construction.
  struct PrimeLevel {
    std::size_t m;  // the level: A_m, B_m
    TropMatrix  a_value;
    TropMatrix  b_value;
    bool        a_is_full_cycle    = false;
    bool        b_diagonal_distinct = false;
    // For m < p - 1: the number of a's appended to both sides of
    // q_{m+1} = r_{m+1}, and the repair applied before that, if any.
    std::uint64_t              a_appended = 0;
    std::optional<PrimeRepair> repair;
  };

  struct PrimeSeparation {
    std::uint64_t             p;
    Identity                  identity;
    WitnessAssignment         witness;
    std::uint64_t             t = 0;
    std::optional<InductConfig> config;
    // Levels m = p - 1 down to 2 (p > 3).
    std::vector<PrimeLevel> levels;
  };

  // Identity satisfied by M_{p-1} and witness in M_p falsifying it. The
  // witness is the 0-weight p-cycle X and Y = diag(0, 1, ..., p-1).
  PrimeSeparation prime_separation(std::uint64_t p);

  bool is_prime(std::uint64_t p);

  // The 0-weight permutation matrix of the cycle 1 -> 2 -> ... -> n -> 1.
  TropMatrix cycle_matrix(std::size_t n);

}  // namespace tropid
