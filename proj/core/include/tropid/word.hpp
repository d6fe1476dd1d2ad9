#pragma once

// Words over {a, b}, straight-line-program word expressions, and
// homomorphic evaluation of expressions in an arbitrary semigroup.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tropid/errors.hpp"
#include "tropid/tropical.hpp"

namespace tropid {

  // Explicit words are plain strings. Over {a, b} for identities; the
  // plactic code reuses the same type with digit letters.
  using Word = std::string;

  // Words of length above this are kept in compressed form by default.
  inline constexpr std::uint64_t default_explicit_threshold = 100'000;

  ////////////////////////////////////////////////////////////////////////
  // Explicit words
  ////////////////////////////////////////////////////////////////////////

  // The image of w under a -> x, b -> y.
  Word substitute(std::string_view w, std::string_view x, std::string_view y);

  std::size_t count_letter(std::string_view w, char c);

  inline bool is_factor(std::string_view needle, std::string_view haystack) {
    return haystack.find(needle) != std::string_view::npos;
  }

  // True iff c^n is a factor of w.
  bool has_run(std::string_view w, char c, std::size_t n);

  // All 2^k words of length k over {a, b}, in lexicographic order (a < b).
  std::vector<Word> words_of_length(std::size_t k);

  // The first (in lexicographic order) word of length k that is not a factor
  // of w, if any.
  std::optional<Word> first_missing_factor(std::string_view w, std::size_t k);

  inline bool all_factors_present(std::string_view w, std::size_t k) {
    return !first_missing_factor(w, k).has_value();
  }

  ////////////////////////////////////////////////////////////////////////
  // WordExpr
  ////////////////////////////////////////////////////////////////////////

  // An immutable word expression: an explicit word, a concatenation, a
  // positive power, or a substitution target[a -> x, b -> y]. Subexpressions
  // are shared, so an expression is a DAG whose expansion may be far longer
  // than its size. Every expression denotes a nonempty word over {a, b}.
  class WordExpr {
   public:
    enum class Kind { word, concat, power, subst };

    static WordExpr letter(char c);
    static WordExpr word(Word letters);
    static WordExpr concat(std::vector<WordExpr> items);
    static WordExpr power(WordExpr base, std::uint64_t exponent);
    static WordExpr subst(WordExpr target, WordExpr image_a, WordExpr image_b);

    Kind kind() const noexcept {
      return node_->kind;
    }

    Integer const& length() const noexcept {
      return node_->length;
    }
    Integer const& count(char c) const noexcept {
      return c == 'a' ? node_->count_a : node_->count_b;
    }

    // Kind::word only.
    Word const& letters() const noexcept {
      return node_->letters;
    }
    // Kind::concat only.
    std::span<WordExpr const> items() const noexcept {
      return node_->children;
    }
    // Kind::power only.
    WordExpr const& base() const noexcept {
      return node_->children[0];
    }
    std::uint64_t exponent() const noexcept {
      return node_->exponent;
    }
    // Kind::subst only.
    WordExpr const& target() const noexcept {
      return node_->children[0];
    }
    WordExpr const& image_a() const noexcept {
      return node_->children[1];
    }
    WordExpr const& image_b() const noexcept {
      return node_->children[2];
    }
    WordExpr const& image(char c) const noexcept {
      return node_->children[c == 'a' ? 1 : 2];
    }

    // Identity of the underlying node, for memoisation.
    void const* id() const noexcept {
      return node_.get();
    }

   private:
    struct Node {
      Kind                  kind;
      Word                  letters;
      std::vector<WordExpr> children;
      std::uint64_t         exponent = 0;
      Integer               length;
      Integer               count_a;
      Integer               count_b;
    };

    explicit WordExpr(std::shared_ptr<Node const> node)
        : node_(std::move(node)) {}

    std::shared_ptr<Node const> node_;
  };

  inline WordExpr concat(WordExpr x, WordExpr y) {
    return WordExpr::concat({std::move(x), std::move(y)});
  }

  inline Integer const& expanded_length(WordExpr const& e) noexcept {
    return e.length();
  }
  inline Integer const& letter_count(WordExpr const& e, char c) noexcept {
    return e.count(c);
  }

  // The explicit word; throws ExpansionTooLarge if longer than `limit`.
  Word expand(WordExpr const& e, Integer const& limit = default_explicit_threshold);

  // The letter at 0-based position pos, found by descent through the
  // length annotations without expanding.
  char letter_at(WordExpr const& e, Integer const& pos);

  // The 0-based position of the first letter at which the expansions of x
  // and y differ (or the shorter length, if one is a proper prefix of the
  // other); nullopt if they are the same word. Short expressions are
  // compared by expansion; long ones by binary search over prefix hashes,
  // with the returned position certified by letter_at.
  std::optional<Integer> first_difference(WordExpr const& x, WordExpr const& y);

  // Human-readable form, e.g. "(ab)^62[a^12, b^12]".
  std::string to_string(WordExpr const& e);

  ////////////////////////////////////////////////////////////////////////
  // Identity
  ////////////////////////////////////////////////////////////////////////

  class Identity {
   public:
    // Throws NotAnIdentity if both sides expand to the same word.
    Identity(WordExpr lhs, WordExpr rhs);

    WordExpr const& lhs() const noexcept {
      return lhs_;
    }
    WordExpr const& rhs() const noexcept {
      return rhs_;
    }
    // First position at which the two sides differ.
    Integer const& first_difference() const noexcept {
      return difference_;
    }

    // Each letter occurs equally often on both sides.
    bool is_balanced() const;

   private:
    WordExpr lhs_;
    WordExpr rhs_;
    Integer  difference_;
  };

  ////////////////////////////////////////////////////////////////////////
  // Evaluation
  ////////////////////////////////////////////////////////////////////////

  template <typename S>
  struct Assignment {
    S a;
    S b;

    S const& operator[](char c) const {
      return c == 'a' ? a : b;
    }
  };

  // base^k by repeated squaring, k >= 1.
  template <typename S, typename Mul>
  S semigroup_power(S base, std::uint64_t k, Mul&& mul) {
    if (k == 0) {
      throw PreconditionFailed("semigroup power exponent must be positive");
    }
    std::optional<S> result;
    while (true) {
      if (k & 1) {
        result = result ? mul(*result, base) : base;
      }
      k >>= 1;
      if (k == 0) {
        break;
      }
      base = mul(base, base);
    }
    return std::move(*result);
  }

  namespace detail {
    template <typename S, typename Mul>
    class Evaluator {
     public:
      Evaluator(Assignment<S> const& assign, Mul& mul)
          : assign_(assign), mul_(mul) {}

      S operator()(WordExpr const& e) {
        if (auto it = memo_.find(e.id()); it != memo_.end()) {
          return it->second;
        }
        S value = compute(e);
        memo_.emplace(e.id(), value);
        return value;
      }

     private:
      S compute(WordExpr const& e) {
        switch (e.kind()) {
          case WordExpr::Kind::word: {
            auto const& w   = e.letters();
            S           acc = assign_[w[0]];
            for (std::size_t i = 1; i < w.size(); ++i) {
              acc = mul_(acc, assign_[w[i]]);
            }
            return acc;
          }
          case WordExpr::Kind::concat: {
            auto items = e.items();
            S    acc   = (*this)(items[0]);
            for (std::size_t i = 1; i < items.size(); ++i) {
              acc = mul_(acc, (*this)(items[i]));
            }
            return acc;
          }
          case WordExpr::Kind::power:
            return semigroup_power((*this)(e.base()), e.exponent(), mul_);
          case WordExpr::Kind::subst: {
            Assignment<S>      inner{(*this)(e.image_a()), (*this)(e.image_b())};
            Evaluator<S, Mul>  sub(inner, mul_);
            return sub(e.target());
          }
        }
        throw Error("unreachable word expression kind");
      }

      Assignment<S> const&                 assign_;
      Mul&                                 mul_;
      std::unordered_map<void const*, S>   memo_;
    };
  }  // namespace detail

  // The image of e under the homomorphism a -> assign.a, b -> assign.b into
  // the semigroup with multiplication `mul`. Shared subexpressions are
  // evaluated once, powers by repeated squaring, and substitutions by
  // evaluating the images before the target.
  template <typename S, typename Mul>
  S evaluate(WordExpr const& e, Assignment<S> const& assign, Mul&& mul) {
    detail::Evaluator<S, std::remove_reference_t<Mul>> eval(assign, mul);
    return eval(e);
  }

  inline TropMatrix evaluate(WordExpr const& e, Assignment<TropMatrix> const& assign) {
    return evaluate(e, assign, [](TropMatrix const& x, TropMatrix const& y) {
      return x * y;
    });
  }

}  // namespace tropid
