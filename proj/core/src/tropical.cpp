#include "tropid/tropical.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "tropid/errors.hpp"

namespace tropid {

  ////////////////////////////////////////////////////////////////////////
  // TropValue
  ////////////////////////////////////////////////////////////////////////

  Integer const& TropValue::value() const {
    if (!finite_) {
      throw PreconditionFailed("value() called on -inf");
    }
    return value_;
  }

  std::string TropValue::str() const {
    return finite_ ? value_.str() : std::string("-inf");
  }

  std::strong_ordering operator<=>(TropValue const& x, TropValue const& y) {
    if (!x.finite_ || !y.finite_) {
      return x.finite_ <=> y.finite_;
    }
    int c = x.value_.compare(y.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

  TropValue oplus(TropValue const& x, TropValue const& y) {
    return x < y ? y : x;
  }

  TropValue otimes(TropValue const& x, TropValue const& y) {
    if (x.is_neg_inf() || y.is_neg_inf()) {
      return neg_inf;
    }
    return Integer(x.value() + y.value());
  }

  std::ostream& operator<<(std::ostream& os, TropValue const& x) {
    return os << x.str();
  }

  ////////////////////////////////////////////////////////////////////////
  // Permutation
  ////////////////////////////////////////////////////////////////////////

  Permutation::Permutation(std::vector<std::size_t> images)
      : images_(std::move(images)) {
    std::vector<bool> hit(images_.size(), false);
    for (auto j : images_) {
      if (j >= images_.size() || hit[j]) {
        throw PreconditionFailed("permutation images are not a bijection");
      }
      hit[j] = true;
    }
  }

  Permutation Permutation::identity(std::size_t n) {
    std::vector<std::size_t> im(n);
    for (std::size_t i = 0; i < n; ++i) {
      im[i] = i;
    }
    return Permutation(std::move(im));
  }

  Permutation Permutation::rotation(std::size_t n) {
    std::vector<std::size_t> im(n);
    for (std::size_t i = 0; i < n; ++i) {
      im[i] = (i + 1) % n;
    }
    return Permutation(std::move(im));
  }

  Permutation Permutation::then(Permutation const& next) const {
    if (next.size() != size()) {
      throw DimensionMismatch("composing permutations of different degree");
    }
    std::vector<std::size_t> im(size());
    for (std::size_t i = 0; i < size(); ++i) {
      im[i] = next.images_[images_[i]];
    }
    return Permutation(std::move(im));
  }

  Permutation Permutation::inverse() const {
    std::vector<std::size_t> im(size());
    for (std::size_t i = 0; i < size(); ++i) {
      im[images_[i]] = i;
    }
    return Permutation(std::move(im));
  }

  Permutation Permutation::pow(std::uint64_t k) const {
    auto result = identity(size());
    auto base   = *this;
    while (k > 0) {
      if (k & 1) {
        result = result.then(base);
      }
      base = base.then(base);
      k >>= 1;
    }
    return result;
  }

  std::vector<std::size_t> Permutation::cycle_type() const {
    std::vector<std::size_t> lengths;
    std::vector<bool>        seen(size(), false);
    for (std::size_t i = 0; i < size(); ++i) {
      if (seen[i]) {
        continue;
      }
      std::size_t len = 0;
      for (std::size_t j = i; !seen[j]; j = images_[j]) {
        seen[j] = true;
        ++len;
      }
      lengths.push_back(len);
    }
    std::sort(lengths.rbegin(), lengths.rend());
    return lengths;
  }

  bool Permutation::is_full_cycle() const {
    auto ct = cycle_type();
    return ct.size() == 1;
  }

  ////////////////////////////////////////////////////////////////////////
  // TropMatrix
  ////////////////////////////////////////////////////////////////////////

  TropMatrix::TropMatrix(std::size_t dim)
      : dim_(dim), entries_(dim * dim) {}

  TropMatrix::TropMatrix(
      std::initializer_list<std::initializer_list<TropValue>> rows)
      : dim_(rows.size()) {
    entries_.reserve(dim_ * dim_);
    for (auto const& row : rows) {
      if (row.size() != dim_) {
        throw DimensionMismatch("matrix rows must form a square array");
      }
      entries_.insert(entries_.end(), row.begin(), row.end());
    }
  }

  TropMatrix
  TropMatrix::from_rows(std::vector<std::vector<TropValue>> const& rows) {
    TropMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) {
        throw DimensionMismatch("matrix rows must form a square array");
      }
      for (std::size_t j = 0; j < rows.size(); ++j) {
        m(i, j) = rows[i][j];
      }
    }
    return m;
  }

  TropMatrix TropMatrix::identity(std::size_t dim) {
    TropMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      m(i, i) = 0;
    }
    return m;
  }

  TropMatrix TropMatrix::diagonal(std::vector<TropValue> const& entries) {
    TropMatrix m(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
      m(i, i) = entries[i];
    }
    return m;
  }

  TropMatrix TropMatrix::permutation(Permutation const&            sigma,
                                     std::vector<TropValue> const& weights) {
    if (weights.size() != sigma.size()) {
      throw DimensionMismatch("one weight per row is required");
    }
    TropMatrix m(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      m(i, sigma(i)) = weights[i];
    }
    return m;
  }

  TropValue const& TropMatrix::at(std::size_t i, std::size_t j) const {
    if (i >= dim_ || j >= dim_) {
      throw IndexOutOfRange("matrix index (" + std::to_string(i) + ", "
                            + std::to_string(j) + ") out of range for dim "
                            + std::to_string(dim_));
    }
    return (*this)(i, j);
  }

  bool operator<(TropMatrix const& x, TropMatrix const& y) {
    if (x.dim_ != y.dim_) {
      return x.dim_ < y.dim_;
    }
    return std::lexicographical_compare(
        x.entries_.begin(), x.entries_.end(), y.entries_.begin(),
        y.entries_.end());
  }

  TropMatrix operator*(TropMatrix const& a, TropMatrix const& b) {
    if (a.dim() != b.dim()) {
      throw DimensionMismatch("cannot multiply matrices of dim "
                              + std::to_string(a.dim()) + " and "
                              + std::to_string(b.dim()));
    }
    std::size_t const n = a.dim();
    TropMatrix        c(n);
    Integer           best, sum;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        bool found = false;
        for (std::size_t k = 0; k < n; ++k) {
          auto const& x = a(i, k);
          auto const& y = b(k, j);
          if (x.is_neg_inf() || y.is_neg_inf()) {
            continue;
          }
          sum = x.value();
          sum += y.value();
          if (!found || sum > best) {
            best.swap(sum);
            found = true;
          }
        }
        if (found) {
          c(i, j) = best;
        }
      }
    }
    return c;
  }

  TropMatrix power(TropMatrix const& a, std::uint64_t k) {
    if (k == 0) {
      throw PreconditionFailed("matrix power exponent must be positive");
    }
    std::optional<TropMatrix> result;
    TropMatrix                base = a;
    while (true) {
      if (k & 1) {
        result = result ? *result * base : base;
      }
      k >>= 1;
      if (k == 0) {
        break;
      }
      base = base * base;
    }
    return *result;
  }

  std::ostream& operator<<(std::ostream& os, TropMatrix const& m) {
    os << '[';
    for (std::size_t i = 0; i < m.dim(); ++i) {
      os << (i == 0 ? "[" : ", [");
      for (std::size_t j = 0; j < m.dim(); ++j) {
        os << (j == 0 ? "" : ", ") << m(i, j);
      }
      os << ']';
    }
    return os << ']';
  }

  std::optional<Permutation> underlying_permutation(TropMatrix const& a) {
    std::size_t const        n = a.dim();
    std::vector<std::size_t> images(n);
    std::vector<bool>        hit(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t finite = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (a(i, j).is_finite()) {
          ++finite;
          images[i] = j;
        }
      }
      if (finite != 1 || hit[images[i]]) {
        return std::nullopt;
      }
      hit[images[i]] = true;
    }
    return Permutation(std::move(images));
  }

  bool is_upper_triangular(TropMatrix const& a) {
    for (std::size_t i = 0; i < a.dim(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (a(i, j).is_finite()) {
          return false;
        }
      }
    }
    return true;
  }

  bool is_diagonal(TropMatrix const& a) {
    for (std::size_t i = 0; i < a.dim(); ++i) {
      for (std::size_t j = 0; j < a.dim(); ++j) {
        if (i != j && a(i, j).is_finite()) {
          return false;
        }
      }
    }
    return true;
  }

  bool is_scaled_identity(TropMatrix const& a) {
    if (!is_diagonal(a) || a.dim() == 0) {
      return false;
    }
    for (std::size_t i = 0; i < a.dim(); ++i) {
      if (a(i, i).is_neg_inf() || a(i, i) != a(0, 0)) {
        return false;
      }
    }
    return true;
  }

  std::vector<TropValue> diagonal(TropMatrix const& a) {
    std::vector<TropValue> d;
    d.reserve(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
      d.push_back(a(i, i));
    }
    return d;
  }

  PrincipalSubmatrix principal_submatrix(TropMatrix const&            a,
                                         std::span<std::size_t const> nodes) {
    if (nodes.empty()) {
      throw PreconditionFailed("principal submatrix needs a nonempty index set");
    }
    for (std::size_t r = 0; r < nodes.size(); ++r) {
      if (nodes[r] >= a.dim()) {
        throw IndexOutOfRange("node " + std::to_string(nodes[r])
                              + " out of range");
      }
      if (r > 0 && nodes[r - 1] >= nodes[r]) {
        throw PreconditionFailed("index set must be strictly increasing");
      }
    }
    PrincipalSubmatrix out{TropMatrix(nodes.size()),
                           {nodes.begin(), nodes.end()}};
    for (std::size_t r = 0; r < nodes.size(); ++r) {
      for (std::size_t s = 0; s < nodes.size(); ++s) {
        out.matrix(r, s) = a(nodes[r], nodes[s]);
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // CompoundDigraph
  ////////////////////////////////////////////////////////////////////////

  CompoundDigraph::CompoundDigraph(TropMatrix const& a, TropMatrix const& b)
      : size_(a.dim()) {
    if (a.dim() != b.dim()) {
      throw DimensionMismatch("compound digraph needs matrices of equal dim");
    }
    for (auto const& [m, label] : {std::pair{&a, 'a'}, std::pair{&b, 'b'}}) {
      for (std::size_t i = 0; i < size_; ++i) {
        for (std::size_t j = 0; j < size_; ++j) {
          if ((*m)(i, j).is_finite()) {
            edges_.push_back({i, j, label, (*m)(i, j).value()});
          }
        }
      }
    }
  }

  namespace {
    void check_word_and_nodes(std::string_view word,
                              std::size_t      from,
                              std::size_t      to,
                              std::size_t      size) {
      if (word.empty()) {
        throw PreconditionFailed("labelled path query needs a nonempty word");
      }
      if (from >= size || to >= size) {
        throw IndexOutOfRange("node out of range for compound digraph");
      }
      for (char c : word) {
        if (c != 'a' && c != 'b') {
          throw PreconditionFailed(std::string("edge label '") + c
                                   + "' is not one of a, b");
        }
      }
    }
  }  // namespace

  std::optional<LabeledPath>
  CompoundDigraph::best_labeled_path(std::string_view word,
                                     std::size_t      from,
                                     std::size_t      to) const {
    check_word_and_nodes(word, from, to, size_);
    // best[r][v]: max weight of a path from `from` to v labelled by the
    // first r letters; pred[r][v] the previous node on one such path.
    std::vector<std::vector<TropValue>>   best(word.size() + 1,
                                             std::vector<TropValue>(size_));
    std::vector<std::vector<std::size_t>> pred(
        word.size() + 1, std::vector<std::size_t>(size_, 0));
    best[0][from] = 0;
    for (std::size_t r = 0; r < word.size(); ++r) {
      for (auto const& e : edges_) {
        if (e.label != word[r] || best[r][e.source].is_neg_inf()) {
          continue;
        }
        Integer w = best[r][e.source].value() + e.weight;
        if (best[r + 1][e.target] < TropValue(w)) {
          best[r + 1][e.target] = std::move(w);
          pred[r + 1][e.target] = e.source;
        }
      }
    }
    if (best[word.size()][to].is_neg_inf()) {
      return std::nullopt;
    }
    LabeledPath path;
    path.weight = best[word.size()][to].value();
    path.nodes.resize(word.size() + 1);
    std::size_t v = to;
    for (std::size_t r = word.size(); r > 0; --r) {
      path.nodes[r] = v;
      v             = pred[r][v];
    }
    path.nodes[0] = from;
    return path;
  }

  TropValue CompoundDigraph::max_weight_labeled_path(std::string_view word,
                                                     std::size_t      from,
                                                     std::size_t      to) const {
    auto path = best_labeled_path(word, from, to);
    return path ? TropValue(path->weight) : TropValue(neg_inf);
  }

  std::size_t simple_length(std::span<std::size_t const> nodes) {
    std::size_t len = 0;
    for (std::size_t r = 1; r < nodes.size(); ++r) {
      len += nodes[r] != nodes[r - 1];
    }
    return len;
  }

}  // namespace tropid
