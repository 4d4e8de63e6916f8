#pragma once

// Dense linear algebra over the two-element field, one machine word per row.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tinv::gf2 {

using Word = std::uint64_t;

inline constexpr std::size_t kMaxDim = 64;

/// Mask with the low `n` bits set (n <= 64).
constexpr Word low_mask(std::size_t n) noexcept {
  return n >= 64 ? ~Word{0} : (Word{1} << n) - 1;
}

/// A dense 0/1 matrix with at most 64 columns. Bit j of row i is entry (i, j).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t nrows, std::size_t ncols);

  static Matrix zero(std::size_t nrows, std::size_t ncols) { return Matrix(nrows, ncols); }
  static Matrix identity(std::size_t n);
  /// Throws std::invalid_argument if a row has bits beyond `ncols`.
  static Matrix from_rows(std::size_t nrows, std::size_t ncols, std::vector<Word> rows);
  /// Parses rows such as {"011", "100"}; character j is column j.
  static Matrix from_strings(const std::vector<std::string>& rows);
  /// Parses the fixture format: "m <nrows> <ncols>" then one 0/1 line per row.
  static Matrix parse(std::string_view text);

  std::size_t rows() const noexcept { return nrows_; }
  std::size_t cols() const noexcept { return ncols_; }
  bool empty() const noexcept { return nrows_ == 0 || ncols_ == 0; }

  bool get(std::size_t i, std::size_t j) const { return (data_[i] >> j) & 1U; }
  void set(std::size_t i, std::size_t j, bool value);
  void flip(std::size_t i, std::size_t j) { data_[i] ^= Word{1} << j; }

  Word row(std::size_t i) const { return data_[i]; }
  void set_row(std::size_t i, Word bits);
  std::span<const Word> row_words() const noexcept { return data_; }

  Word column(std::size_t j) const;
  /// Diagonal as a bit-vector (bit i is entry (i, i)); requires a square matrix.
  Word diagonal() const;

  bool is_square() const noexcept { return nrows_ == ncols_; }
  bool is_symmetric() const;
  bool is_zero() const;

  Matrix transpose() const;
  /// Rows and columns listed in `order`: result(i, j) = this(order[i], order[j]).
  Matrix permuted(std::span<const std::size_t> order) const;
  Matrix submatrix(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const;

  std::string to_string() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t nrows_ = 0;
  std::size_t ncols_ = 0;
  std::vector<Word> data_;
};

/// Rank of the row set. Works on a private copy.
std::size_t rank(std::span<const Word> rows);
std::size_t rank(const Matrix& m);

/// Exact rank when it is at most `bound`, std::nullopt once the running rank exceeds it.
std::optional<std::size_t> rank_bounded(const Matrix& m, std::size_t bound);

/// Inverse of a square matrix, std::nullopt when singular.
std::optional<Matrix> inverse(const Matrix& m);

/// The symmetric matrix [[A, C], [C^T, B]].
Matrix block_compose(const Matrix& a, const Matrix& b, const Matrix& c);

/// Columns non-decreasing downward and rows non-increasing rightward.
bool is_staircase(const Matrix& c);

/// Disjuncts of the staircase block lemma, reported as a bit set.
enum class Conclusion : unsigned {
  RankUp = 1U,
  TwinColumns = 2U,
  ZeroLastColumn = 4U,
};

struct ConclusionSet {
  unsigned bits = 0;

  bool has(Conclusion c) const noexcept { return (bits & static_cast<unsigned>(c)) != 0; }
  void add(Conclusion c) noexcept { bits |= static_cast<unsigned>(c); }
  bool empty() const noexcept { return bits == 0; }
  std::vector<std::string> names() const;
};

/// For symmetric M = [[A, C], [C^T, B]] with A of order n, B of order m, C staircase and
/// m >= rank(A) + 1, reports which of: rank(M) >= rank(A) + 1; two adjacent equal columns
/// in B; an all-zero last column of B. Throws std::invalid_argument on a bad instance and
/// VerificationFailure if none of the three holds.
ConclusionSet staircase_conclusion(const Matrix& m, std::size_t n, std::size_t mm);

struct CongruenceResult {
  Matrix transform;  // invertible P
  std::size_t rank = 0;
  bool alternating = false;
};

/// Symmetric congruence to I_r (+) 0. For a non-zero matrix with all-zero diagonal no
/// such form exists; the result is then flagged alternating and `transform` is I.
CongruenceResult congruence_diagonalize(const Matrix& m);

/// n x d factor F with F F^T = M and d = rank(M) for non-alternating M. For alternating
/// M the factor reproduces M + e_i e_i^T, i the first non-zero row, so only the
/// off-diagonal part of M is matched.
Matrix gram_factorize(const Matrix& m);

/// Index of the first non-zero row, or rows() when the matrix is zero.
std::size_t first_nonzero_row(const Matrix& m);

}  // namespace tinv::gf2
