#pragma once

// Exact max-plus arithmetic. Scalars are arbitrary-precision integers
// extended by a distinguished negative infinity; matrices are dense and
// square. All indices in this header are 0-based.

#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tropid {

  using Integer = boost::multiprecision::cpp_int;

  struct NegInf {
    friend constexpr bool operator==(NegInf, NegInf) noexcept = default;
  };
  inline constexpr NegInf neg_inf{};

  // An element of the tropical semiring: an exact integer or -inf.
  class TropValue {
   public:
    TropValue() noexcept = default;
    TropValue(NegInf) noexcept {}  // NOLINT(runtime/explicit)
    TropValue(Integer v) : finite_(true), value_(std::move(v)) {}  // NOLINT
    template <std::integral T>
    TropValue(T v) : finite_(true), value_(v) {}  // NOLINT

    bool is_finite() const noexcept {
      return finite_;
    }
    bool is_neg_inf() const noexcept {
      return !finite_;
    }

    // Throws PreconditionFailed on -inf.
    Integer const& value() const;

    // "-inf" or the decimal expansion.
    std::string str() const;

    friend bool operator==(TropValue const& x, TropValue const& y) {
      return x.finite_ == y.finite_ && (!x.finite_ || x.value_ == y.value_);
    }
    // -inf is the least element.
    friend std::strong_ordering operator<=>(TropValue const& x,
                                            TropValue const& y);

   private:
    bool    finite_ = false;
    Integer value_;
  };

  // Tropical addition (maximum).
  TropValue oplus(TropValue const& x, TropValue const& y);
  // Tropical multiplication (integer addition, -inf absorbing).
  TropValue otimes(TropValue const& x, TropValue const& y);

  std::ostream& operator<<(std::ostream& os, TropValue const& x);

  class Permutation {
   public:
    // images[i] is the image of i; must be a bijection on {0, ..., n-1}.
    explicit Permutation(std::vector<std::size_t> images);

    static Permutation identity(std::size_t n);
    // The cycle i -> i + 1 (mod n).
    static Permutation rotation(std::size_t n);

    std::size_t size() const noexcept {
      return images_.size();
    }
    std::size_t operator()(std::size_t i) const {
      return images_.at(i);
    }
    std::span<std::size_t const> images() const noexcept {
      return images_;
    }

    // The permutation i -> next(this(i)).
    Permutation then(Permutation const& next) const;
    Permutation inverse() const;
    Permutation pow(std::uint64_t k) const;

    // Cycle lengths, sorted in decreasing order.
    std::vector<std::size_t> cycle_type() const;
    bool                     is_full_cycle() const;

    friend bool operator==(Permutation const&, Permutation const&) = default;

   private:
    std::vector<std::size_t> images_;
  };

  class TropMatrix {
   public:
    TropMatrix() = default;
    // The dim x dim matrix with every entry -inf.
    explicit TropMatrix(std::size_t dim);
    // Square matrix from rows; throws DimensionMismatch if not square.
    TropMatrix(std::initializer_list<std::initializer_list<TropValue>> rows);

    static TropMatrix from_rows(std::vector<std::vector<TropValue>> const& rows);
    // 0 on the diagonal, -inf elsewhere.
    static TropMatrix identity(std::size_t dim);
    static TropMatrix diagonal(std::vector<TropValue> const& entries);
    // Entry weights[i] at (i, sigma(i)), -inf elsewhere.
    static TropMatrix permutation(Permutation const&          sigma,
                                  std::vector<TropValue> const& weights);

    std::size_t dim() const noexcept {
      return dim_;
    }

    TropValue const& operator()(std::size_t i, std::size_t j) const noexcept {
      return entries_[i * dim_ + j];
    }
    TropValue& operator()(std::size_t i, std::size_t j) noexcept {
      return entries_[i * dim_ + j];
    }
    // Bounds-checked access; throws IndexOutOfRange.
    TropValue const& at(std::size_t i, std::size_t j) const;

    std::span<TropValue const> entries() const noexcept {
      return entries_;
    }

    friend bool operator==(TropMatrix const&, TropMatrix const&) = default;
    // Lexicographic on (dim, row-major entries); for ordered containers.
    friend bool operator<(TropMatrix const& x, TropMatrix const& y);

   private:
    std::size_t            dim_ = 0;
    std::vector<TropValue> entries_;
  };

  // Max-plus product; throws DimensionMismatch.
  TropMatrix operator*(TropMatrix const& a, TropMatrix const& b);

  // k-fold product by repeated squaring; k = 0 is rejected.
  TropMatrix power(TropMatrix const& a, std::uint64_t k);

  std::ostream& operator<<(std::ostream& os, TropMatrix const& m);

  // sigma with a(i, j) finite iff j = sigma(i), if such a bijection exists.
  std::optional<Permutation> underlying_permutation(TropMatrix const& a);

  // Tropical invertibility is exactly having an underlying permutation.
  inline bool is_invertible(TropMatrix const& a) {
    return underlying_permutation(a).has_value();
  }

  bool                   is_upper_triangular(TropMatrix const& a);
  bool                   is_diagonal(TropMatrix const& a);
  bool                   is_scaled_identity(TropMatrix const& a);
  std::vector<TropValue> diagonal(TropMatrix const& a);

  struct PrincipalSubmatrix {
    TropMatrix matrix;
    // labels[r] is the index in the original matrix of row/column r.
    std::vector<std::size_t> labels;
  };

  // Rows and columns indexed by `nodes`, which must be nonempty, strictly
  // increasing and in range.
  PrincipalSubmatrix principal_submatrix(TropMatrix const&            a,
                                         std::span<std::size_t const> nodes);

  struct LabeledEdge {
    std::size_t source;
    std::size_t target;
    char        label;  // 'a' for the first matrix, 'b' for the second
    Integer     weight;
  };

  struct LabeledPath {
    // nodes.size() == word length + 1
    std::vector<std::size_t> nodes;
    Integer                  weight;
  };

  // The labelled-weighted digraph of a pair of matrices: an edge (i, j)
  // labelled 'a' of weight a(i, j) for every finite entry of a, and
  // likewise for b.
  class CompoundDigraph {
   public:
    CompoundDigraph(TropMatrix const& a, TropMatrix const& b);

    std::size_t size() const noexcept {
      return size_;
    }
    std::span<LabeledEdge const> edges() const noexcept {
      return edges_;
    }

    // Maximum weight of a path from `from` to `to` whose r-th edge has
    // label word[r]; -inf if there is none. Dynamic programming over word
    // positions.
    TropValue max_weight_labeled_path(std::string_view word,
                                      std::size_t      from,
                                      std::size_t      to) const;

    // A path attaining the maximum above, if any.
    std::optional<LabeledPath> best_labeled_path(std::string_view word,
                                                 std::size_t      from,
                                                 std::size_t      to) const;

   private:
    std::size_t              size_;
    std::vector<LabeledEdge> edges_;
  };

  // Number of non-loop edges in the node sequence of a path.
  std::size_t simple_length(std::span<std::size_t const> nodes);

}  // namespace tropid
