#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qdec {

/// Dense bit vector over GF(2), packed 64 bits per word (bit i lives in
/// word i/64 at position i%64). Unused tail bits are kept zero so that
/// word-level operations (xor, popcount, comparisons) need no masking.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_(word_count(size), 0) {}

  static BitVector from_string(std::string_view bits);
  static std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool v) {
    const uint64_t mask = uint64_t{1} << (i & 63);
    if (v)
      words_[i >> 6] |= mask;
    else
      words_[i >> 6] &= ~mask;
  }
  void flip(std::size_t i) { words_[i >> 6] ^= uint64_t{1} << (i & 63); }

  void clear() { std::fill(words_.begin(), words_.end(), 0); }

  void xor_with(const BitVector& other);
  void xor_words(std::span<const uint64_t> w);

  std::size_t weight() const;
  bool any() const;

  /// Parity of the AND with another vector of the same length.
  bool dot(const BitVector& other) const;

  /// Indices of set bits, ascending.
  std::vector<std::size_t> support() const;

  /// Lexicographic comparison by bit index (bit 0 first); returns
  /// negative/zero/positive like memcmp.
  int lex_compare(const BitVector& other) const;

  std::span<const uint64_t> words() const { return words_; }
  std::span<uint64_t> words() { return words_; }

  std::string to_string() const;

  bool operator==(const BitVector& other) const = default;

 private:
  std::size_t size_ = 0;
  std::vector<uint64_t> words_;
};

/// Dense bit-packed GF(2) matrix, row-major with a fixed word stride per
/// row. All row operations are word-wide xors.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_(BitVector::word_count(cols)), words_(rows * stride_, 0) {}

  /// Build from one '0'/'1' string per row.
  static BitMatrix from_rows(const std::vector<std::string>& rows);
  static BitMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t stride() const { return stride_; }

  bool get(std::size_t r, std::size_t c) const {
    return (words_[r * stride_ + (c >> 6)] >> (c & 63)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool v) {
    const uint64_t mask = uint64_t{1} << (c & 63);
    if (v)
      words_[r * stride_ + (c >> 6)] |= mask;
    else
      words_[r * stride_ + (c >> 6)] &= ~mask;
  }

  std::span<const uint64_t> row(std::size_t r) const { return {&words_[r * stride_], stride_}; }
  std::span<uint64_t> row(std::size_t r) { return {&words_[r * stride_], stride_}; }

  void row_xor(std::size_t dst, std::size_t src);
  void swap_rows(std::size_t a, std::size_t b);

  BitVector row_vector(std::size_t r) const;
  BitVector column(std::size_t c) const;
  void set_row(std::size_t r, const BitVector& v);

  /// y = M * x over GF(2); x.size() must equal cols().
  BitVector multiply(const BitVector& x) const;

  /// Parity of row r AND x; the single-row multiply.
  bool row_dot(std::size_t r, const BitVector& x) const;

  BitMatrix transposed() const;

  /// Number of ones.
  std::size_t weight() const;

  std::vector<std::string> to_strings() const;

  bool operator==(const BitMatrix& other) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
  std::vector<uint64_t> words_;
};

}  // namespace qdec
