#pragma once

// The plactic monoid of rank n: Schensted row insertion, the Knuth
// relations as a rewriting oracle, and the tropical representation indexed
// by subsets of {1, ..., n}.
//
// Plactic words are digit strings "1".."9".

#include <cstddef>
#include <cstdint>
#include <set>
#include <string_view>
#include <vector>

#include "tropid/constructors.hpp"
#include "tropid/tropical.hpp"
#include "tropid/word.hpp"

namespace tropid {

  // A semistandard tableau. rows[0] is the insertion row; rows are weakly
  // increasing, row lengths weakly decrease, and columns strictly increase
  // going from rows[0] to later rows.
  class Tableau {
   public:
    Tableau() = default;
    explicit Tableau(std::vector<std::vector<int>> rows);

    // Letters must lie in {1, ..., n}.
    static Tableau from_word(std::string_view w, int n = 4);

    // Row insertion: x bumps the leftmost entry strictly greater than it.
    void insert(int x);

    std::vector<std::vector<int>> const& rows() const noexcept {
      return rows_;
    }
    std::size_t size() const noexcept;
    bool        empty() const noexcept {
      return rows_.empty();
    }

    // Rows read from the last to rows[0], each left to right; inserting it
    // into the empty tableau gives back *this.
    Word reading_word() const;

    friend bool operator==(Tableau const&, Tableau const&) = default;
    friend auto operator<=>(Tableau const&, Tableau const&) = default;

   private:
    std::vector<std::vector<int>> rows_;
  };

  Tableau schensted_insert(Tableau t, int x);

  // Inserts the reading word of t into s.
  Tableau plactic_mul(Tableau const& s, Tableau const& t);

  // Every word reachable from w by the Knuth relations
  //   bca <-> bac (a < b <= c),  cab <-> acb (a <= b < c)
  // applied anywhere, in both directions. Throws PreconditionFailed if
  // w is longer than `cap`.
  std::set<Word> knuth_closure(std::string_view w, std::size_t cap = 8);

  // A subset of {1, ..., n} as a bitmask; bit i-1 set iff i is a member.
  using Subset = std::uint32_t;

  // The subsets of {1, ..., n} in the total order used to index the
  // representation: decreasing cardinality, then lexicographic on the
  // increasing list of elements.
  class SubsetIndex {
   public:
    explicit SubsetIndex(int n);

    int n() const noexcept {
      return n_;
    }
    std::size_t size() const noexcept {
      return order_.size();
    }
    Subset operator[](std::size_t i) const {
      return order_.at(i);
    }
    std::size_t index_of(Subset s) const;

    std::vector<Subset> const& subsets() const noexcept {
      return order_;
    }

   private:
    int                      n_;
    std::vector<Subset>      order_;
    std::vector<std::size_t> position_;
  };

  std::vector<int> elements(Subset s);
  Subset           make_subset(std::initializer_list<int> elements);
  std::string      subset_to_string(Subset s);

  // S <= T iff |S| >= |T| and the i-th smallest element of S is at most
  // the i-th smallest element of T for each i <= |T|.
  bool subset_leq(Subset s, Subset t);

  // { S subset of [n] : P <= S <= Q }.
  std::vector<Subset> order_interval(int n, Subset p, Subset q);
  // The union of the sets in the order interval [P, Q].
  Subset interval_union(int n, Subset p, Subset q);

  // rho(x)_{P,Q} = -inf if |P| != |Q| or P is not <= Q; 1 if x lies in the
  // union of [P,Q]; 0 otherwise. Indexed by SubsetIndex(n).
  TropMatrix rho_generator(int x, int n = 4);
  // Product of the generator images; the word must be nonempty.
  TropMatrix rho(std::string_view w, int n = 4);
  // 0 where |P| = |Q| and P <= Q, -inf elsewhere.
  TropMatrix rho_identity_element(int n = 4);

  // <abuab[ab,ba], abvab[ab,ba]>.
  Identity plactic_identity_lift(std::string_view u, std::string_view v);

  // The lifted identity for u = w b w, v = w a w with w = ba^3b^3aba, and
  // the factor witness of abab in UT_5.
  SeparatingPair p4_ut5_separation();

  // Evaluation of an identity side in the plactic monoid.
  Tableau evaluate_plactic(WordExpr const& e, Assignment<Tableau> const& assign);

}  // namespace tropid
