#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace bcrepair {

using Symbol = std::uint16_t;

// GF(2^w) for w in {4, 8, 16} via log/antilog tables. Fixed primitive
// polynomials:
//   w = 4:  x^4 + x + 1                   (0x13)
//   w = 8:  x^8 + x^4 + x^3 + x^2 + 1     (0x11D)
//   w = 16: x^16 + x^12 + x^3 + x + 1     (0x1100B)
class GaloisField {
 public:
  explicit GaloisField(int w) : w_(w) {
    switch (w) {
      case 4: poly_ = 0x13; break;
      case 8: poly_ = 0x11D; break;
      case 16: poly_ = 0x1100B; break;
      default: throw std::invalid_argument("field width must be 4, 8 or 16");
    }
    size_ = 1u << w;
    exp_.resize(2 * size_);
    log_.assign(size_, 0);
    std::uint32_t x = 1;
    for (std::uint32_t i = 0; i < size_ - 1; ++i) {
      exp_[i] = static_cast<Symbol>(x);
      log_[x] = static_cast<Symbol>(i);
      x <<= 1;
      if (x & size_) x ^= poly_;
    }
    if (x != 1) throw std::logic_error("polynomial is not primitive");
    for (std::uint32_t i = size_ - 1; i < 2 * size_; ++i) exp_[i] = exp_[i - (size_ - 1)];
  }

  int width() const { return w_; }
  std::uint32_t size() const { return size_; }
  std::uint32_t polynomial() const { return poly_; }

  static Symbol add(Symbol a, Symbol b) { return a ^ b; }

  Symbol mul(Symbol a, Symbol b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }

  Symbol inv(Symbol a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return exp_[(size_ - 1) - log_[a]];
  }

  Symbol div(Symbol a, Symbol b) const { return mul(a, inv(b)); }

 private:
  int w_;
  std::uint32_t poly_ = 0;
  std::uint32_t size_ = 0;
  std::vector<Symbol> exp_;
  std::vector<Symbol> log_;
};

// Rank by Gaussian elimination; rows are copied.
inline int matrix_rank(const GaloisField& f, std::vector<std::vector<Symbol>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  int rank = 0;
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const Symbol inv = f.inv(rows[rank][c]);
    for (auto& v : rows[rank]) v = f.mul(v, inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == static_cast<std::size_t>(rank) || rows[i][c] == 0) continue;
      const Symbol factor = rows[i][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] ^= f.mul(factor, rows[rank][j]);
    }
    ++rank;
  }
  return rank;
}

}  // namespace bcrepair
