#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace modlift {

// Bit vector over F_2, packed 64 per word.
class F2Vec {
 public:
  F2Vec() = default;
  explicit F2Vec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}
  static F2Vec from_string(const std::string& bits);  // "0110"
  static F2Vec unit(std::size_t n, std::size_t i);

  std::size_t size() const { return n_; }
  bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool v = true) {
    if (v) w_[i >> 6] |= std::uint64_t(1) << (i & 63);
    else w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63));
  }
  void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

  F2Vec& operator^=(const F2Vec& o);
  F2Vec operator^(const F2Vec& o) const { F2Vec r = *this; r ^= o; return r; }
  bool operator==(const F2Vec& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator!=(const F2Vec& o) const { return !(*this == o); }
  bool operator<(const F2Vec& o) const;  // by bit string

  bool dot(const F2Vec& o) const;
  bool is_zero() const;
  std::size_t popcount() const;
  // index of the lowest set bit, or size() when zero
  std::size_t lead() const;
  std::string str() const;  // bit i at position i

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

using F2Mat = std::vector<F2Vec>;

struct F2Solution {
  std::optional<F2Vec> particular;
  std::vector<F2Vec> kernel;
};

// All x in F_2^ncols with rows[i] . x = rhs[i].
F2Solution f2_solution_space(const F2Mat& rows, const F2Vec& rhs, std::size_t ncols);

// Reduced row echelon basis of the span, rows ordered by pivot.
std::vector<F2Vec> f2_span_basis(const std::vector<F2Vec>& vectors);

std::size_t f2_rank(const std::vector<F2Vec>& vectors);

// Every element of the affine set particular + span(kernel), sorted.
std::vector<F2Vec> f2_enumerate(const F2Solution& sol);

// Equations v . x = e folded in one at a time, kept fully reduced.
class F2AffineSpan {
 public:
  explicit F2AffineSpan(std::size_t n) : n_(n) {}

  void add(const F2Vec& v, bool rhs);
  std::size_t ncols() const { return n_; }
  bool consistent() const { return consistent_; }
  std::size_t rank() const { return rows_.size(); }
  bool satisfied_by(const F2Vec& x) const;
  std::vector<F2Vec> basis() const;  // span of the v parts
  const std::vector<std::pair<F2Vec, bool>>& rows() const { return rows_; }

 private:
  std::size_t n_;
  bool consistent_ = true;
  std::vector<std::pair<F2Vec, bool>> rows_;  // sorted by lead
};

}  // namespace modlift
