#include "modlift/f2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace modlift {

F2Vec F2Vec::from_string(const std::string& bits) {
  F2Vec v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') v.set(i);
    else if (bits[i] != '0') throw std::invalid_argument("bit string may only hold 0 and 1");
  }
  return v;
}

F2Vec F2Vec::unit(std::size_t n, std::size_t i) {
  F2Vec v(n);
  v.set(i);
  return v;
}

F2Vec& F2Vec::operator^=(const F2Vec& o) {
  if (o.n_ != n_) throw std::invalid_argument("F2Vec length mismatch");
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
  return *this;
}

bool F2Vec::operator<(const F2Vec& o) const {
  if (n_ != o.n_) return n_ < o.n_;
  return str() < o.str();
}

bool F2Vec::dot(const F2Vec& o) const {
  if (o.n_ != n_) throw std::invalid_argument("F2Vec length mismatch");
  unsigned acc = 0;
  for (std::size_t i = 0; i < w_.size(); ++i) acc ^= std::popcount(w_[i] & o.w_[i]) & 1u;
  return acc;
}

bool F2Vec::is_zero() const {
  return std::all_of(w_.begin(), w_.end(), [](std::uint64_t x) { return x == 0; });
}

std::size_t F2Vec::popcount() const {
  std::size_t n = 0;
  for (auto x : w_) n += std::popcount(x);
  return n;
}

std::size_t F2Vec::lead() const {
  for (std::size_t i = 0; i < w_.size(); ++i)
    if (w_[i]) return i * 64 + std::countr_zero(w_[i]);
  return n_;
}

std::string F2Vec::str() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

F2Solution f2_solution_space(const F2Mat& rows, const F2Vec& rhs, std::size_t ncols) {
  if (rhs.size() != rows.size()) throw std::invalid_argument("rhs length differs from row count");
  std::vector<F2Vec> aug;
  aug.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != ncols) throw std::invalid_argument("row length differs from column count");
    F2Vec a(ncols + 1);
    for (std::size_t j = 0; j < ncols; ++j)
      if (rows[i].get(j)) a.set(j);
    if (rhs.get(i)) a.set(ncols);
    aug.push_back(std::move(a));
  }
  // full elimination, then look for 0 = 1
  std::vector<std::size_t> piv;
  {
    std::size_t r = 0;
    for (std::size_t col = 0; col < ncols && r < aug.size(); ++col) {
      std::size_t k = r;
      while (k < aug.size() && !aug[k].get(col)) ++k;
      if (k == aug.size()) continue;
      std::swap(aug[r], aug[k]);
      for (std::size_t i = 0; i < aug.size(); ++i)
        if (i != r && aug[i].get(col)) aug[i] ^= aug[r];
      piv.push_back(col);
      ++r;
    }
    for (std::size_t i = r; i < aug.size(); ++i)
      if (aug[i].get(ncols)) return {};
  }
  F2Solution sol;
  F2Vec x(ncols);
  for (std::size_t i = 0; i < piv.size(); ++i)
    if (aug[i].get(ncols)) x.set(piv[i]);
  sol.particular = x;
  std::vector<bool> is_piv(ncols, false);
  for (auto p : piv) is_piv[p] = true;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_piv[f]) continue;
    F2Vec k(ncols);
    k.set(f);
    for (std::size_t i = 0; i < piv.size(); ++i)
      if (aug[i].get(f)) k.set(piv[i]);
    sol.kernel.push_back(std::move(k));
  }
  return sol;
}

std::vector<F2Vec> f2_span_basis(const std::vector<F2Vec>& vectors) {
  if (vectors.empty()) return {};
  std::size_t n = vectors[0].size();
  for (const auto& v : vectors)
    if (v.size() != n) throw std::invalid_argument("F2Vec length mismatch");
  std::vector<F2Vec> m = vectors;
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < m.size(); ++col) {
    std::size_t k = r;
    while (k < m.size() && !m[k].get(col)) ++k;
    if (k == m.size()) continue;
    std::swap(m[r], m[k]);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (i != r && m[i].get(col)) m[i] ^= m[r];
    ++r;
  }
  m.resize(r);
  return m;
}

std::size_t f2_rank(const std::vector<F2Vec>& vectors) { return f2_span_basis(vectors).size(); }

std::vector<F2Vec> f2_enumerate(const F2Solution& sol) {
  std::vector<F2Vec> out;
  if (!sol.particular) return out;
  std::size_t k = sol.kernel.size();
  if (k > 24) throw std::length_error("solution set too large to enumerate");
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << k); ++mask) {
    F2Vec x = *sol.particular;
    for (std::size_t i = 0; i < k; ++i)
      if ((mask >> i) & 1u) x ^= sol.kernel[i];
    out.push_back(std::move(x));
  }
  std::sort(out.begin(), out.end());
  return out;
}

void F2AffineSpan::add(const F2Vec& v0, bool rhs) {
  if (v0.size() != n_) throw std::invalid_argument("F2Vec length mismatch");
  F2Vec v = v0;
  for (const auto& [r, e] : rows_) {
    if (v.get(r.lead())) {
      v ^= r;
      rhs ^= e;
    }
  }
  if (v.is_zero()) {
    if (rhs) consistent_ = false;
    return;
  }
  std::size_t p = v.lead();
  for (auto& [r, e] : rows_) {
    if (r.get(p)) {
      r ^= v;
      e ^= rhs;
    }
  }
  auto it = std::lower_bound(rows_.begin(), rows_.end(), p,
                             [](const std::pair<F2Vec, bool>& a, std::size_t q) { return a.first.lead() < q; });
  rows_.insert(it, {std::move(v), rhs});
}

bool F2AffineSpan::satisfied_by(const F2Vec& x) const {
  if (!consistent_) return false;
  for (const auto& [r, e] : rows_)
    if (r.dot(x) != e) return false;
  return true;
}

std::vector<F2Vec> F2AffineSpan::basis() const {
  std::vector<F2Vec> b;
  for (const auto& [r, e] : rows_) b.push_back(r);
  return b;
}

}  // namespace modlift
