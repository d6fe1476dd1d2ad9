#include "tropid/plactic.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <mutex>

namespace tropid {

  ////////////////////////////////////////////////////////////////////////
  // Tableau
  ////////////////////////////////////////////////////////////////////////

  Tableau::Tableau(std::vector<std::vector<int>> rows) : rows_(std::move(rows)) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      auto const& row = rows_[r];
      if (row.empty() || !std::is_sorted(row.begin(), row.end())) {
        throw PreconditionFailed("tableau rows must be nonempty and weakly increasing");
      }
      if (r > 0) {
        auto const& above = rows_[r - 1];
        if (row.size() > above.size()) {
          throw PreconditionFailed("tableau row lengths must weakly decrease");
        }
        for (std::size_t c = 0; c < row.size(); ++c) {
          if (row[c] <= above[c]) {
            throw PreconditionFailed("tableau columns must strictly increase");
          }
        }
      }
    }
  }

  Tableau Tableau::from_word(std::string_view w, int n) {
    Tableau t;
    for (char ch : w) {
      int x = ch - '0';
      if (x < 1 || x > n) {
        throw PreconditionFailed(std::string("letter '") + ch
                                 + "' out of range 1.." + std::to_string(n));
      }
      t.insert(x);
    }
    return t;
  }

  void Tableau::insert(int x) {
    for (auto& row : rows_) {
      auto it = std::upper_bound(row.begin(), row.end(), x);
      if (it == row.end()) {
        row.push_back(x);
        return;
      }
      std::swap(*it, x);
    }
    rows_.push_back({x});
  }

  std::size_t Tableau::size() const noexcept {
    std::size_t s = 0;
    for (auto const& row : rows_) {
      s += row.size();
    }
    return s;
  }

  Word Tableau::reading_word() const {
    Word w;
    for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
      for (int x : *it) {
        w += static_cast<char>('0' + x);
      }
    }
    return w;
  }

  Tableau schensted_insert(Tableau t, int x) {
    t.insert(x);
    return t;
  }

  Tableau plactic_mul(Tableau const& s, Tableau const& t) {
    Tableau out = s;
    for (auto it = t.rows().rbegin(); it != t.rows().rend(); ++it) {
      for (int x : *it) {
        out.insert(x);
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Knuth closure
  ////////////////////////////////////////////////////////////////////////

  std::set<Word> knuth_closure(std::string_view w, std::size_t cap) {
    if (w.size() > cap) {
      throw PreconditionFailed("knuth closure of a word of length "
                               + std::to_string(w.size()) + " exceeds cap "
                               + std::to_string(cap));
    }
    std::set<Word>   seen{Word(w)};
    std::deque<Word> todo{Word(w)};
    auto             visit = [&](Word next) {
      if (seen.insert(next).second) {
        todo.push_back(std::move(next));
      }
    };
    while (!todo.empty()) {
      Word cur = std::move(todo.front());
      todo.pop_front();
      for (std::size_t i = 0; i + 3 <= cur.size(); ++i) {
        char const x = cur[i], y = cur[i + 1], z = cur[i + 2];
        // Factor xyz read as bca (a < b <= c) -> bac, or as bac -> bca.
        if (z < x && x <= y) {
          Word next = cur;
          std::swap(next[i + 1], next[i + 2]);
          visit(std::move(next));
        }
        if (y < x && x <= z) {
          Word next = cur;
          std::swap(next[i + 1], next[i + 2]);
          visit(std::move(next));
        }
        // Factor xyz read as cab (a <= b < c) -> acb, or as acb -> cab.
        if (y <= z && z < x) {
          Word next = cur;
          std::swap(next[i], next[i + 1]);
          visit(std::move(next));
        }
        if (x <= z && z < y) {
          Word next = cur;
          std::swap(next[i], next[i + 1]);
          visit(std::move(next));
        }
      }
    }
    return seen;
  }

  ////////////////////////////////////////////////////////////////////////
  // Subsets
  ////////////////////////////////////////////////////////////////////////

  std::vector<int> elements(Subset s) {
    std::vector<int> out;
    for (int i = 1; s != 0; ++i, s >>= 1) {
      if (s & 1) {
        out.push_back(i);
      }
    }
    return out;
  }

  Subset make_subset(std::initializer_list<int> elems) {
    Subset s = 0;
    for (int e : elems) {
      if (e < 1 || e > 32) {
        throw PreconditionFailed("subset element out of range");
      }
      s |= Subset(1) << (e - 1);
    }
    return s;
  }

  std::string subset_to_string(Subset s) {
    std::string out = "{";
    bool        first = true;
    for (int e : elements(s)) {
      out += (first ? "" : ",") + std::to_string(e);
      first = false;
    }
    return out + "}";
  }

  bool subset_leq(Subset s, Subset t) {
    auto const se = elements(s), te = elements(t);
    if (se.size() < te.size()) {
      return false;
    }
    for (std::size_t i = 0; i < te.size(); ++i) {
      if (se[i] > te[i]) {
        return false;
      }
    }
    return true;
  }

  SubsetIndex::SubsetIndex(int n) : n_(n) {
    if (n < 1 || n > 16) {
      throw PreconditionFailed("subset index supports 1 <= n <= 16");
    }
    Subset const count = Subset(1) << n;
    order_.resize(count);
    for (Subset s = 0; s < count; ++s) {
      order_[s] = s;
    }
    std::sort(order_.begin(), order_.end(), [](Subset x, Subset y) {
      auto cx = std::popcount(x), cy = std::popcount(y);
      if (cx != cy) {
        return cx > cy;
      }
      return elements(x) < elements(y);
    });
    position_.resize(count);
    for (std::size_t i = 0; i < order_.size(); ++i) {
      position_[order_[i]] = i;
    }
  }

  std::size_t SubsetIndex::index_of(Subset s) const {
    if (s >= position_.size()) {
      throw IndexOutOfRange("subset " + subset_to_string(s) + " not in index");
    }
    return position_[s];
  }

  std::vector<Subset> order_interval(int n, Subset p, Subset q) {
    SubsetIndex const   index(n);
    std::vector<Subset> out;
    for (Subset s : index.subsets()) {
      if (subset_leq(p, s) && subset_leq(s, q)) {
        out.push_back(s);
      }
    }
    return out;
  }

  Subset interval_union(int n, Subset p, Subset q) {
    Subset u = 0;
    for (Subset s : order_interval(n, p, q)) {
      u |= s;
    }
    return u;
  }

  ////////////////////////////////////////////////////////////////////////
  // Representation
  ////////////////////////////////////////////////////////////////////////

  TropMatrix rho_generator(int x, int n) {
    if (x < 1 || x > n) {
      throw PreconditionFailed("generator " + std::to_string(x) + " out of range 1.."
                               + std::to_string(n));
    }
    SubsetIndex const index(n);
    TropMatrix        m(index.size());
    for (std::size_t i = 0; i < index.size(); ++i) {
      for (std::size_t j = 0; j < index.size(); ++j) {
        Subset const p = index[i], q = index[j];
        if (std::popcount(p) != std::popcount(q) || !subset_leq(p, q)) {
          continue;
        }
        m(i, j) = (interval_union(n, p, q) >> (x - 1)) & 1 ? 1 : 0;
      }
    }
    return m;
  }

  namespace {
    std::vector<TropMatrix> const& generator_images(int n) {
      static std::mutex                                  mutex;
      static std::map<int, std::vector<TropMatrix>> cache;
      std::lock_guard                                    lock(mutex);
      auto&                                              gens = cache[n];
      if (gens.empty()) {
        for (int x = 1; x <= n; ++x) {
          gens.push_back(rho_generator(x, n));
        }
      }
      return gens;
    }
  }  // namespace

  TropMatrix rho(std::string_view w, int n) {
    if (w.empty()) {
      throw PreconditionFailed("rho needs a nonempty word");
    }
    auto const& gens = generator_images(n);
    std::optional<TropMatrix> acc;
    for (char ch : w) {
      int x = ch - '0';
      if (x < 1 || x > n) {
        throw PreconditionFailed(std::string("letter '") + ch + "' out of range");
      }
      acc = acc ? *acc * gens[x - 1] : gens[x - 1];
    }
    return *acc;
  }

  TropMatrix rho_identity_element(int n) {
    SubsetIndex const index(n);
    TropMatrix        m(index.size());
    for (std::size_t i = 0; i < index.size(); ++i) {
      for (std::size_t j = 0; j < index.size(); ++j) {
        Subset const p = index[i], q = index[j];
        if (std::popcount(p) == std::popcount(q) && subset_leq(p, q)) {
          m(i, j) = 0;
        }
      }
    }
    return m;
  }

  ////////////////////////////////////////////////////////////////////////
  // Identities
  ////////////////////////////////////////////////////////////////////////

  Identity plactic_identity_lift(std::string_view u, std::string_view v) {
    if (u == v) {
      throw NotAnIdentity("plactic lift needs u != v");
    }
    auto side = [](std::string_view w) {
      return WordExpr::subst(WordExpr::word("ab" + Word(w) + "ab"),
                             WordExpr::word("ab"), WordExpr::word("ba"));
    };
    return Identity(side(u), side(v));
  }

  SeparatingPair p4_ut5_separation() {
    Word const w = "baaabbbaba";
    Word const u = w + 'b' + w;
    Word const v = w + 'a' + w;
    return SeparatingPair{5, plactic_identity_lift(u, v),
                          factor_witness("abab").assignment(), "abab",
                          "ab" + u + "ab", "ab" + v + "ab"};
  }

  Tableau evaluate_plactic(WordExpr const& e, Assignment<Tableau> const& assign) {
    return evaluate(e, assign, plactic_mul);
  }

}  // namespace tropid
