#include "qdec/bitmat.hpp"

#include <algorithm>
#include <stdexcept>

namespace qdec {

BitVector BitVector::from_string(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      v.set(i, true);
    else if (bits[i] != '0')
      throw std::invalid_argument("bit string may contain only '0' and '1'");
  }
  return v;
}

void BitVector::xor_with(const BitVector& other) {
  if (other.size_ != size_) throw std::invalid_argument("BitVector xor: length mismatch");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
}

void BitVector::xor_words(std::span<const uint64_t> w) {
  for (std::size_t i = 0; i < w.size(); ++i) words_[i] ^= w[i];
}

std::size_t BitVector::weight() const {
  std::size_t n = 0;
  for (uint64_t w : words_) n += std::popcount(w);
  return n;
}

bool BitVector::any() const {
  for (uint64_t w : words_)
    if (w) return true;
  return false;
}

bool BitVector::dot(const BitVector& other) const {
  if (other.size_ != size_) throw std::invalid_argument("BitVector dot: length mismatch");
  uint64_t acc = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
  return std::popcount(acc) & 1u;
}

std::vector<std::size_t> BitVector::support() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    uint64_t x = words_[w];
    while (x) {
      out.push_back(w * 64 + std::countr_zero(x));
      x &= x - 1;
    }
  }
  return out;
}

int BitVector::lex_compare(const BitVector& other) const {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  for (std::size_t w = 0; w < n; ++w) {
    const uint64_t diff = words_[w] ^ other.words_[w];
    if (diff) {
      // Lowest differing bit decides; the vector with 0 there is smaller.
      const int bit = std::countr_zero(diff);
      return ((words_[w] >> bit) & 1u) ? 1 : -1;
    }
  }
  if (size_ != other.size_) return size_ < other.size_ ? -1 : 1;
  return 0;
}

std::string BitVector::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

BitMatrix BitMatrix::from_rows(const std::vector<std::string>& rows) {
  if (rows.empty()) return {};
  BitMatrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw std::invalid_argument("ragged rows in matrix literal");
    for (std::size_t c = 0; c < m.cols_; ++c) {
      if (rows[r][c] == '1')
        m.set(r, c, true);
      else if (rows[r][c] != '0')
        throw std::invalid_argument("matrix literal may contain only '0' and '1'");
    }
  }
  return m;
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

void BitMatrix::row_xor(std::size_t dst, std::size_t src) {
  uint64_t* d = &words_[dst * stride_];
  const uint64_t* s = &words_[src * stride_];
  for (std::size_t w = 0; w < stride_; ++w) d[w] ^= s[w];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(&words_[a * stride_], &words_[a * stride_] + stride_, &words_[b * stride_]);
}

BitVector BitMatrix::row_vector(std::size_t r) const {
  BitVector v(cols_);
  std::copy_n(&words_[r * stride_], stride_, v.words().data());
  return v;
}

BitVector BitMatrix::column(std::size_t c) const {
  BitVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    if (get(r, c)) v.set(r, true);
  return v;
}

void BitMatrix::set_row(std::size_t r, const BitVector& v) {
  if (v.size() != cols_) throw std::invalid_argument("set_row: length mismatch");
  std::copy_n(v.words().data(), stride_, &words_[r * stride_]);
}

BitVector BitMatrix::multiply(const BitVector& x) const {
  if (x.size() != cols_) throw std::invalid_argument("matrix multiply: length mismatch");
  BitVector y(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    if (row_dot(r, x)) y.set(r, true);
  return y;
}

bool BitMatrix::row_dot(std::size_t r, const BitVector& x) const {
  const uint64_t* row_words = &words_[r * stride_];
  const auto xw = x.words();
  uint64_t acc = 0;
  for (std::size_t w = 0; w < stride_; ++w) acc ^= row_words[w] & xw[w];
  return std::popcount(acc) & 1u;
}

BitMatrix BitMatrix::transposed() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    const uint64_t* row_words = &words_[r * stride_];
    for (std::size_t w = 0; w < stride_; ++w) {
      uint64_t x = row_words[w];
      while (x) {
        const std::size_t c = w * 64 + std::countr_zero(x);
        t.set(c, r, true);
        x &= x - 1;
      }
    }
  }
  return t;
}

std::size_t BitMatrix::weight() const {
  std::size_t n = 0;
  for (uint64_t w : words_) n += std::popcount(w);
  return n;
}

std::vector<std::string> BitMatrix::to_strings() const {
  std::vector<std::string> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row_vector(r).to_string());
  return out;
}

}  // namespace qdec
