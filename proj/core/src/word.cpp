#include "tropid/word.hpp"

#include <algorithm>
#include <sstream>

namespace tropid {

  ////////////////////////////////////////////////////////////////////////
  // Explicit words
  ////////////////////////////////////////////////////////////////////////

  Word substitute(std::string_view w, std::string_view x, std::string_view y) {
    Word out;
    out.reserve(count_letter(w, 'a') * x.size() + count_letter(w, 'b') * y.size());
    for (char c : w) {
      if (c == 'a') {
        out += x;
      } else if (c == 'b') {
        out += y;
      } else {
        throw PreconditionFailed(std::string("letter '") + c
                                 + "' is not one of a, b");
      }
    }
    return out;
  }

  std::size_t count_letter(std::string_view w, char c) {
    return static_cast<std::size_t>(std::count(w.begin(), w.end(), c));
  }

  bool has_run(std::string_view w, char c, std::size_t n) {
    if (n == 0) {
      return true;
    }
    std::size_t run = 0;
    for (char x : w) {
      run = (x == c) ? run + 1 : 0;
      if (run >= n) {
        return true;
      }
    }
    return false;
  }

  std::vector<Word> words_of_length(std::size_t k) {
    std::vector<Word> out;
    out.reserve(std::size_t(1) << k);
    for (std::size_t bits = 0; bits < (std::size_t(1) << k); ++bits) {
      Word w(k, 'a');
      for (std::size_t i = 0; i < k; ++i) {
        if (bits & (std::size_t(1) << (k - 1 - i))) {
          w[i] = 'b';
        }
      }
      out.push_back(std::move(w));
    }
    return out;
  }

  std::optional<Word> first_missing_factor(std::string_view w, std::size_t k) {
    for (auto& f : words_of_length(k)) {
      if (!is_factor(f, w)) {
        return f;
      }
    }
    return std::nullopt;
  }

  ////////////////////////////////////////////////////////////////////////
  // WordExpr
  ////////////////////////////////////////////////////////////////////////

  WordExpr WordExpr::letter(char c) {
    return word(Word(1, c));
  }

  WordExpr WordExpr::word(Word letters) {
    if (letters.empty()) {
      throw PreconditionFailed("word expressions must be nonempty");
    }
    auto node     = std::make_shared<Node>();
    node->kind    = Kind::word;
    node->count_a = count_letter(letters, 'a');
    node->count_b = count_letter(letters, 'b');
    node->length  = letters.size();
    if (node->count_a + node->count_b != node->length) {
      throw PreconditionFailed("word '" + letters
                               + "' has letters outside {a, b}");
    }
    node->letters = std::move(letters);
    return WordExpr(std::move(node));
  }

  WordExpr WordExpr::concat(std::vector<WordExpr> items) {
    if (items.empty()) {
      throw PreconditionFailed("concatenation needs at least one item");
    }
    if (items.size() == 1) {
      return std::move(items[0]);
    }
    auto node  = std::make_shared<Node>();
    node->kind = Kind::concat;
    for (auto const& item : items) {
      node->length += item.length();
      node->count_a += item.count('a');
      node->count_b += item.count('b');
    }
    node->children = std::move(items);
    return WordExpr(std::move(node));
  }

  WordExpr WordExpr::power(WordExpr base, std::uint64_t exponent) {
    if (exponent == 0) {
      throw PreconditionFailed("power exponent must be positive");
    }
    if (exponent == 1) {
      return base;
    }
    auto node      = std::make_shared<Node>();
    node->kind     = Kind::power;
    node->exponent = exponent;
    node->length   = base.length() * exponent;
    node->count_a  = base.count('a') * exponent;
    node->count_b  = base.count('b') * exponent;
    node->children.push_back(std::move(base));
    return WordExpr(std::move(node));
  }

  WordExpr WordExpr::subst(WordExpr target, WordExpr image_a, WordExpr image_b) {
    auto node  = std::make_shared<Node>();
    node->kind = Kind::subst;
    Integer const& ta = target.count('a');
    Integer const& tb = target.count('b');
    node->length      = ta * image_a.length() + tb * image_b.length();
    node->count_a     = ta * image_a.count('a') + tb * image_b.count('a');
    node->count_b     = ta * image_a.count('b') + tb * image_b.count('b');
    node->children    = {std::move(target), std::move(image_a), std::move(image_b)};
    return WordExpr(std::move(node));
  }

  namespace {

    // Substitution context used while descending: letter c of the current
    // subexpression stands for image(c) interpreted in `parent`.
    struct Context {
      WordExpr const* image_a;
      WordExpr const* image_b;
      Context const*  parent;
      Integer         len_a;
      Integer         len_b;

      WordExpr const& image(char c) const {
        return c == 'a' ? *image_a : *image_b;
      }
      Integer const& len(char c) const {
        return c == 'a' ? len_a : len_b;
      }
    };

    Integer length_in(WordExpr const& e, Context const* ctx) {
      if (ctx == nullptr) {
        return e.length();
      }
      return e.count('a') * ctx->len_a + e.count('b') * ctx->len_b;
    }

    Context enter(WordExpr const& e, Context const* ctx) {
      return Context{&e.image_a(), &e.image_b(), ctx,
                     length_in(e.image_a(), ctx), length_in(e.image_b(), ctx)};
    }

    char letter_at_in(WordExpr const& e, Integer pos, Context const* ctx) {
      switch (e.kind()) {
        case WordExpr::Kind::word:
          for (char c : e.letters()) {
            Integer len = ctx ? ctx->len(c) : Integer(1);
            if (pos < len) {
              return ctx ? letter_at_in(ctx->image(c), pos, ctx->parent) : c;
            }
            pos -= len;
          }
          break;
        case WordExpr::Kind::concat:
          for (auto const& item : e.items()) {
            Integer len = length_in(item, ctx);
            if (pos < len) {
              return letter_at_in(item, pos, ctx);
            }
            pos -= len;
          }
          break;
        case WordExpr::Kind::power:
          return letter_at_in(e.base(), pos % length_in(e.base(), ctx), ctx);
        case WordExpr::Kind::subst: {
          Context inner = enter(e, ctx);
          return letter_at_in(e.target(), pos, &inner);
        }
      }
      throw IndexOutOfRange("word position out of range");
    }

    void expand_into(WordExpr const& e, Word& out) {
      switch (e.kind()) {
        case WordExpr::Kind::word:
          out += e.letters();
          return;
        case WordExpr::Kind::concat:
          for (auto const& item : e.items()) {
            expand_into(item, out);
          }
          return;
        case WordExpr::Kind::power: {
          auto start = out.size();
          expand_into(e.base(), out);
          auto len = out.size() - start;
          for (std::uint64_t i = 1; i < e.exponent(); ++i) {
            out.append(out, start, len);
          }
          return;
        }
        case WordExpr::Kind::subst: {
          Word x, y;
          expand_into(e.image_a(), x);
          expand_into(e.image_b(), y);
          Word t;
          expand_into(e.target(), t);
          for (char c : t) {
            out += (c == 'a') ? x : y;
          }
          return;
        }
      }
    }

    // Polynomial hashes modulo the Mersenne prime 2^61 - 1, under two
    // bases. A value represents a word w as (hash(w), base^|w|) per base;
    // concatenation is then a monoid operation, so hashes of expressions
    // are computed by homomorphic evaluation.
    constexpr std::uint64_t mersenne61 = (std::uint64_t(1) << 61) - 1;

    std::uint64_t mulmod(std::uint64_t x, std::uint64_t y) {
      auto           prod = static_cast<unsigned __int128>(x) * y;
      std::uint64_t  lo   = static_cast<std::uint64_t>(prod & mersenne61);
      std::uint64_t  hi   = static_cast<std::uint64_t>(prod >> 61);
      std::uint64_t  r    = lo + hi;
      return r >= mersenne61 ? r - mersenne61 : r;
    }

    std::uint64_t addmod(std::uint64_t x, std::uint64_t y) {
      std::uint64_t r = x + y;
      return r >= mersenne61 ? r - mersenne61 : r;
    }

    constexpr std::uint64_t hash_base_1 = 1'000'003;
    constexpr std::uint64_t hash_base_2 = 0x1f3d5b79a2c4e6bULL % mersenne61;

    struct Hash {
      std::uint64_t h1 = 0, m1 = 1, h2 = 0, m2 = 1;

      friend bool operator==(Hash const&, Hash const&) = default;
    };

    Hash combine(Hash const& x, Hash const& y) {
      return {addmod(mulmod(x.h1, y.m1), y.h1), mulmod(x.m1, y.m1),
              addmod(mulmod(x.h2, y.m2), y.h2), mulmod(x.m2, y.m2)};
    }

    Hash letter_hash(char c) {
      std::uint64_t code = (c == 'a') ? 1 : 2;
      return {code, hash_base_1, code, hash_base_2};
    }

    Hash hash_power(Hash const& h, Integer k) {
      Hash result;
      Hash base = h;
      while (k > 0) {
        if (bit_test(k, 0)) {
          result = combine(result, base);
        }
        base = combine(base, base);
        k >>= 1;
      }
      return result;
    }

    // Context carrying the hashes of the two images.
    struct HashContext {
      Context            ctx;
      HashContext const* parent;
      Hash               hash_a;
      Hash               hash_b;

      Hash const& hash(char c) const {
        return c == 'a' ? hash_a : hash_b;
      }
    };

    Hash full_hash(WordExpr const& e, HashContext const* hctx) {
      Assignment<Hash> assign = hctx ? Assignment<Hash>{hctx->hash_a, hctx->hash_b}
                                     : Assignment<Hash>{letter_hash('a'),
                                                        letter_hash('b')};
      return evaluate(e, assign, combine);
    }

    Integer length_in(WordExpr const& e, HashContext const* hctx) {
      return length_in(e, hctx ? &hctx->ctx : nullptr);
    }

    // Hash of the first `pos` letters of e's expansion under hctx.
    Hash prefix_hash(WordExpr const& e, Integer pos, HashContext const* hctx) {
      Hash acc;
      if (pos == 0) {
        return acc;
      }
      switch (e.kind()) {
        case WordExpr::Kind::word:
          for (char c : e.letters()) {
            Integer len = hctx ? hctx->ctx.len(c) : Integer(1);
            if (pos >= len) {
              acc = combine(acc, hctx ? hctx->hash(c) : letter_hash(c));
              pos -= len;
              if (pos == 0) {
                return acc;
              }
            } else {
              return combine(acc, prefix_hash(hctx->ctx.image(c), pos,
                                              hctx->parent));
            }
          }
          break;
        case WordExpr::Kind::concat:
          for (auto const& item : e.items()) {
            Integer len = length_in(item, hctx);
            if (pos >= len) {
              acc = combine(acc, full_hash(item, hctx));
              pos -= len;
              if (pos == 0) {
                return acc;
              }
            } else {
              return combine(acc, prefix_hash(item, pos, hctx));
            }
          }
          break;
        case WordExpr::Kind::power: {
          Integer len = length_in(e.base(), hctx);
          Integer q   = pos / len;
          Integer r   = pos % len;
          acc         = hash_power(full_hash(e.base(), hctx), q);
          return combine(acc, prefix_hash(e.base(), r, hctx));
        }
        case WordExpr::Kind::subst: {
          HashContext inner{enter(e, hctx ? &hctx->ctx : nullptr), hctx,
                            full_hash(e.image_a(), hctx),
                            full_hash(e.image_b(), hctx)};
          return prefix_hash(e.target(), pos, &inner);
        }
      }
      throw IndexOutOfRange("prefix length out of range");
    }

  }  // namespace

  Word expand(WordExpr const& e, Integer const& limit) {
    if (e.length() > limit) {
      throw ExpansionTooLarge(e.length(), limit);
    }
    Word out;
    out.reserve(static_cast<std::size_t>(e.length()));
    expand_into(e, out);
    return out;
  }

  char letter_at(WordExpr const& e, Integer const& pos) {
    if (pos < 0 || pos >= e.length()) {
      throw IndexOutOfRange("position " + pos.str() + " out of range for length "
                            + e.length().str());
    }
    return letter_at_in(e, pos, nullptr);
  }

  std::optional<Integer> first_difference(WordExpr const& x, WordExpr const& y) {
    Integer const n = std::min(x.length(), y.length());
    if (x.length() <= default_explicit_threshold
        && y.length() <= default_explicit_threshold) {
      Word const wx = expand(x);
      Word const wy = expand(y);
      auto [ix, iy] = std::mismatch(wx.begin(), wx.end(), wy.begin(), wy.end());
      if (ix == wx.end() && iy == wy.end()) {
        return std::nullopt;
      }
      return Integer(ix - wx.begin());
    }
    auto same_prefix = [&](Integer const& len) {
      return prefix_hash(x, len, nullptr) == prefix_hash(y, len, nullptr);
    };
    if (same_prefix(n)) {
      if (x.length() == y.length()) {
        return std::nullopt;
      }
      return n;
    }
    // Invariant: prefixes of length lo agree, prefixes of length hi differ.
    Integer lo = 0, hi = n;
    while (hi - lo > 1) {
      Integer mid = (lo + hi) / 2;
      if (same_prefix(mid)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    Integer pos = hi - 1;
    if (letter_at(x, pos) == letter_at(y, pos)) {
      throw Error("prefix hash collision while locating first difference");
    }
    return pos;
  }

  namespace {
    void write(std::ostream& os, WordExpr const& e, bool nested) {
      switch (e.kind()) {
        case WordExpr::Kind::word:
          if (e.letters().size() > 64) {
            os << e.letters().substr(0, 24) << "...(" << e.letters().size()
               << " letters)";
          } else {
            os << e.letters();
          }
          return;
        case WordExpr::Kind::concat:
          if (nested) {
            os << '(';
          }
          for (auto const& item : e.items()) {
            write(os, item, true);
          }
          if (nested) {
            os << ')';
          }
          return;
        case WordExpr::Kind::power:
          os << '(';
          write(os, e.base(), false);
          os << ")^" << e.exponent();
          return;
        case WordExpr::Kind::subst:
          write(os, e.target(), true);
          os << '[';
          write(os, e.image_a(), false);
          os << ", ";
          write(os, e.image_b(), false);
          os << ']';
          return;
      }
    }
  }  // namespace

  std::string to_string(WordExpr const& e) {
    std::ostringstream os;
    write(os, e, false);
    return os.str();
  }

  ////////////////////////////////////////////////////////////////////////
  // Identity
  ////////////////////////////////////////////////////////////////////////

  Identity::Identity(WordExpr lhs, WordExpr rhs)
      : lhs_(std::move(lhs)), rhs_(std::move(rhs)) {
    auto diff = tropid::first_difference(lhs_, rhs_);
    if (!diff) {
      throw NotAnIdentity("both sides are the same word: " + to_string(lhs_));
    }
    difference_ = std::move(*diff);
  }

  bool Identity::is_balanced() const {
    return lhs_.count('a') == rhs_.count('a') && lhs_.count('b') == rhs_.count('b');
  }

}  // namespace tropid
