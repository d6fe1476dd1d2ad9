#pragma once

// Reference implementations used as oracles. They share no code with the
// library: plain int64 entries with std::nullopt for -inf, naive loops,
// exhaustive enumeration.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <tropid/tropical.hpp>

namespace oracle {

  using Val = std::optional<long long>;
  using Mat = std::vector<std::vector<Val>>;

  inline Mat from(tropid::TropMatrix const& m) {
    Mat out(m.dim(), std::vector<Val>(m.dim()));
    for (std::size_t i = 0; i < m.dim(); ++i) {
      for (std::size_t j = 0; j < m.dim(); ++j) {
        if (m(i, j).is_finite()) {
          out[i][j] = static_cast<long long>(m(i, j).value());
        }
      }
    }
    return out;
  }

  inline tropid::TropMatrix to(Mat const& m) {
    tropid::TropMatrix out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = 0; j < m.size(); ++j) {
        if (m[i][j]) {
          out(i, j) = *m[i][j];
        }
      }
    }
    return out;
  }

  inline Mat mul(Mat const& x, Mat const& y) {
    std::size_t const n = x.size();
    Mat               out(n, std::vector<Val>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          if (x[i][k] && y[k][j]) {
            long long s = *x[i][k] + *y[k][j];
            if (!out[i][j] || s > *out[i][j]) {
              out[i][j] = s;
            }
          }
        }
      }
    }
    return out;
  }

  // w(a, b) for an explicit word, folded left to right.
  inline Mat eval(std::string const& w, Mat const& a, Mat const& b) {
    Mat acc = w[0] == 'a' ? a : b;
    for (std::size_t i = 1; i < w.size(); ++i) {
      acc = mul(acc, w[i] == 'a' ? a : b);
    }
    return acc;
  }

  // Maximum over all node sequences i = v0, v1, ..., vL = j of the summed
  // weights of the labelled edges, by exhaustive enumeration.
  inline Val path_max(std::string const& w, Mat const& a, Mat const& b, std::size_t i,
                      std::size_t j) {
    std::size_t const n = a.size();
    Val               best;
    std::vector<std::size_t> nodes(w.size() + 1, 0);
    nodes[0] = i;
    auto rec = [&](auto&& self, std::size_t pos, long long acc) -> void {
      if (pos == w.size()) {
        if (nodes[pos] == j && (!best || acc > *best)) {
          best = acc;
        }
        return;
      }
      Mat const& m = w[pos] == 'a' ? a : b;
      for (std::size_t k = 0; k < n; ++k) {
        if (auto e = m[nodes[pos]][k]) {
          nodes[pos + 1] = k;
          self(self, pos + 1, acc + *e);
        }
      }
    };
    rec(rec, 0, 0);
    return best;
  }

  inline std::string subst(std::string const& w, std::string const& x, std::string const& y) {
    std::string out;
    for (char c : w) {
      out += c == 'a' ? x : y;
    }
    return out;
  }

  inline Mat random_matrix(std::mt19937_64& rng, std::size_t n, bool upper, int lo = -8,
                           int hi = 8, int neginf_percent = 10) {
    std::uniform_int_distribution<int> val(lo, hi), pct(0, 99);
    Mat                                out(n, std::vector<Val>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if ((upper && j < i) || pct(rng) < neginf_percent) {
          continue;
        }
        out[i][j] = val(rng);
      }
    }
    return out;
  }

  inline std::filesystem::path temp_dir(std::string const& name) {
    auto dir = std::filesystem::temp_directory_path() / ("tropid-test-" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
  }

}  // namespace oracle
