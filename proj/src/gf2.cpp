#include "tinv/gf2.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <sstream>
#include <stdexcept>

#include "tinv/error.hpp"

namespace tinv::gf2 {

namespace {

void require_dim(std::size_t n, const char* what) {
  if (n > kMaxDim) {
    throw std::invalid_argument(std::string(what) + " exceeds 64");
  }
}

bool bit(Word w, std::size_t i) { return (w >> i) & 1U; }

}  // namespace

Matrix::Matrix(std::size_t nrows, std::size_t ncols) : nrows_(nrows), ncols_(ncols) {
  require_dim(ncols, "column count");
  data_.assign(nrows, 0);
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i] = Word{1} << i;
  return m;
}

Matrix Matrix::from_rows(std::size_t nrows, std::size_t ncols, std::vector<Word> rows) {
  require_dim(ncols, "column count");
  if (rows.size() != nrows) throw std::invalid_argument("row count mismatch");
  for (Word r : rows) {
    if ((r & ~low_mask(ncols)) != 0) throw std::invalid_argument("bits beyond last column");
  }
  Matrix m;
  m.nrows_ = nrows;
  m.ncols_ = ncols;
  m.data_ = std::move(rows);
  return m;
}

Matrix Matrix::from_strings(const std::vector<std::string>& rows) {
  const std::size_t ncols = rows.empty() ? 0 : rows.front().size();
  Matrix m(rows.size(), ncols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != ncols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < ncols; ++j) {
      const char c = rows[i][j];
      if (c != '0' && c != '1') throw std::invalid_argument("matrix entries must be 0 or 1");
      m.set(i, j, c == '1');
    }
  }
  return m;
}

Matrix Matrix::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError("empty matrix text");
  std::istringstream header(line);
  std::string tag;
  long long r = -1;
  long long c = -1;
  if (!(header >> tag >> r >> c) || tag != "m" || r < 0 || c < 0) {
    throw ParseError("expected header 'm <nrows> <ncols>'", lineno);
  }
  if (c > static_cast<long long>(kMaxDim)) throw ParseError("more than 64 columns", lineno);
  Matrix m(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (!next_line()) throw ParseError("missing matrix row", lineno + 1);
    if (line.size() != m.cols()) throw ParseError("row has wrong length", lineno);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (line[j] != '0' && line[j] != '1') throw ParseError("entries must be 0 or 1", lineno);
      m.set(i, j, line[j] == '1');
    }
  }
  if (next_line()) throw ParseError("trailing content after matrix", lineno);
  return m;
}

void Matrix::set(std::size_t i, std::size_t j, bool value) {
  if (value) {
    data_[i] |= Word{1} << j;
  } else {
    data_[i] &= ~(Word{1} << j);
  }
}

void Matrix::set_row(std::size_t i, Word bits) {
  if ((bits & ~low_mask(ncols_)) != 0) throw std::invalid_argument("bits beyond last column");
  data_[i] = bits;
}

Word Matrix::column(std::size_t j) const {
  require_dim(nrows_, "row count");
  Word out = 0;
  for (std::size_t i = 0; i < nrows_; ++i) out |= Word{bit(data_[i], j)} << i;
  return out;
}

Word Matrix::diagonal() const {
  if (!is_square()) throw std::invalid_argument("diagonal of a non-square matrix");
  Word out = 0;
  for (std::size_t i = 0; i < nrows_; ++i) out |= Word{bit(data_[i], i)} << i;
  return out;
}

bool Matrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t j = 0; j < ncols_; ++j) {
    if (column(j) != data_[j]) return false;
  }
  return true;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Word w) { return w == 0; });
}

Matrix Matrix::transpose() const {
  require_dim(nrows_, "row count");
  Matrix t(ncols_, nrows_);
  for (std::size_t j = 0; j < ncols_; ++j) t.data_[j] = column(j);
  return t;
}

Matrix Matrix::permuted(std::span<const std::size_t> order) const {
  if (!is_square() || order.size() != nrows_) throw std::invalid_argument("bad permutation size");
  Matrix out(nrows_, ncols_);
  for (std::size_t i = 0; i < nrows_; ++i) {
    for (std::size_t j = 0; j < ncols_; ++j) out.set(i, j, get(order[i], order[j]));
  }
  return out;
}

Matrix Matrix::submatrix(std::size_t row0, std::size_t col0, std::size_t nrows,
                         std::size_t ncols) const {
  if (row0 + nrows > nrows_ || col0 + ncols > ncols_) {
    throw std::invalid_argument("submatrix out of range");
  }
  Matrix out(nrows, ncols);
  for (std::size_t i = 0; i < nrows; ++i) {
    out.data_[i] = (col0 >= 64 ? 0 : data_[row0 + i] >> col0) & low_mask(ncols);
  }
  return out;
}

std::string Matrix::to_string() const {
  std::string s = "m " + std::to_string(nrows_) + " " + std::to_string(ncols_) + "\n";
  for (Word r : data_) {
    for (std::size_t j = 0; j < ncols_; ++j) s.push_back(bit(r, j) ? '1' : '0');
    s.push_back('\n');
  }
  return s;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("product dimension mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Word acc = 0;
    for (Word r = a.data_[i]; r != 0; r &= r - 1) {
      acc ^= b.data_[static_cast<std::size_t>(std::countr_zero(r))];
    }
    out.data_[i] = acc;
  }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("sum dimension mismatch");
  }
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) out.data_[i] ^= b.data_[i];
  return out;
}

namespace {

// Forward elimination with the pivot at the lowest set bit. Stops once the rank exceeds
// `bound`, returning bound + 1.
std::size_t eliminate(std::span<const Word> rows, std::size_t bound) {
  std::vector<Word> work(rows.begin(), rows.end());
  std::size_t r = 0;
  for (std::size_t i = 0; i < work.size(); ++i) {
    const Word pivot_row = work[i];
    if (pivot_row == 0) continue;
    const Word pivot = pivot_row & (~pivot_row + 1);
    for (std::size_t k = i + 1; k < work.size(); ++k) {
      if (work[k] & pivot) work[k] ^= pivot_row;
    }
    if (++r > bound) return r;
  }
  return r;
}

}  // namespace

std::size_t rank(std::span<const Word> rows) { return eliminate(rows, rows.size()); }

std::size_t rank(const Matrix& m) { return rank(m.row_words()); }

std::optional<std::size_t> rank_bounded(const Matrix& m, std::size_t bound) {
  const std::size_t r = eliminate(m.row_words(), bound);
  if (r > bound) return std::nullopt;
  return r;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (!m.is_square()) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  std::vector<Word> a(m.row_words().begin(), m.row_words().end());
  std::vector<Word> inv(n);
  for (std::size_t i = 0; i < n; ++i) inv[i] = Word{1} << i;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && !bit(a[p], col)) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[col]);
    std::swap(inv[p], inv[col]);
    for (std::size_t k = 0; k < n; ++k) {
      if (k != col && bit(a[k], col)) {
        a[k] ^= a[col];
        inv[k] ^= inv[col];
      }
    }
  }
  return Matrix::from_rows(n, n, std::move(inv));
}

Matrix block_compose(const Matrix& a, const Matrix& b, const Matrix& c) {
  if (!a.is_square() || !b.is_square()) throw std::invalid_argument("diagonal blocks must be square");
  if (!a.is_symmetric() || !b.is_symmetric()) {
    throw std::invalid_argument("diagonal blocks must be symmetric");
  }
  if (c.rows() != a.rows() || c.cols() != b.rows()) {
    throw std::invalid_argument("off-diagonal block has the wrong shape");
  }
  const std::size_t n = a.rows();
  const std::size_t m = b.rows();
  require_dim(n + m, "composed order");
  Matrix out(n + m, n + m);
  const Matrix ct = c.transpose();
  for (std::size_t i = 0; i < n; ++i) out.set_row(i, a.row(i) | (m == 0 ? 0 : c.row(i) << n));
  for (std::size_t i = 0; i < m; ++i) out.set_row(n + i, ct.row(i) | (b.row(i) << n));
  return out;
}

bool is_staircase(const Matrix& c) {
  for (std::size_t i = 0; i < c.rows(); ++i) {
    for (std::size_t j = 0; j < c.cols(); ++j) {
      if (i + 1 < c.rows() && c.get(i, j) && !c.get(i + 1, j)) return false;
      if (j + 1 < c.cols() && !c.get(i, j) && c.get(i, j + 1)) return false;
    }
  }
  return true;
}

std::vector<std::string> ConclusionSet::names() const {
  std::vector<std::string> out;
  if (has(Conclusion::RankUp)) out.emplace_back("RANK_UP");
  if (has(Conclusion::TwinColumns)) out.emplace_back("TWIN_COLS");
  if (has(Conclusion::ZeroLastColumn)) out.emplace_back("ZERO_LAST_COL");
  return out;
}

ConclusionSet staircase_conclusion(const Matrix& m, std::size_t n, std::size_t mm) {
  if (!m.is_square() || m.rows() != n + mm) throw std::invalid_argument("block sizes do not match");
  if (!m.is_symmetric()) throw std::invalid_argument("matrix is not symmetric");
  const Matrix a = m.submatrix(0, 0, n, n);
  const Matrix b = m.submatrix(n, n, mm, mm);
  const Matrix c = m.submatrix(0, n, n, mm);
  if (!is_staircase(c)) throw std::invalid_argument("upper-right block is not a staircase");
  const std::size_t rank_a = rank(a);
  if (mm < rank_a + 1) throw std::invalid_argument("requires m >= rank(A) + 1");

  ConclusionSet out;
  if (rank(m) >= rank_a + 1) out.add(Conclusion::RankUp);
  for (std::size_t j = 0; j + 1 < mm; ++j) {
    if (b.column(j) == b.column(j + 1)) {
      out.add(Conclusion::TwinColumns);
      break;
    }
  }
  if (b.column(mm - 1) == 0) out.add(Conclusion::ZeroLastColumn);
  if (out.empty()) {
    throw VerificationFailure("staircase block lemma violated by:\n" + m.to_string());
  }
  return out;
}

namespace {

// x^T M y over F2.
bool form(const Matrix& m, Word x, Word y) {
  Word my = 0;
  for (Word r = x; r != 0; r &= r - 1) my ^= m.row(static_cast<std::size_t>(std::countr_zero(r)));
  return (std::popcount(my & y) & 1) != 0;
}

}  // namespace

CongruenceResult congruence_diagonalize(const Matrix& m) {
  if (!m.is_symmetric()) throw std::invalid_argument("congruence of a non-symmetric matrix");
  const std::size_t n = m.rows();
  // Rows of P. Invariant: p[0..k) are pairwise orthogonal with p_i^T M p_i = 1, and every
  // residual vector p[k..n) is orthogonal to all of them.
  std::vector<Word> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = Word{1} << i;

  auto pivot_at = [&](std::size_t k) {
    for (std::size_t j = k + 1; j < n; ++j) {
      if (form(m, p[j], p[k])) p[j] ^= p[k];
    }
  };

  std::size_t k = 0;
  while (k < n) {
    std::size_t t = k;
    while (t < n && !form(m, p[t], p[t])) ++t;
    if (t < n) {
      std::swap(p[t], p[k]);
      pivot_at(k);
      ++k;
      continue;
    }
    std::size_t a = n;
    std::size_t b = n;
    for (std::size_t i = k; i < n && a == n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (form(m, p[i], p[j])) {
          a = i;
          b = j;
          break;
        }
      }
    }
    if (a == n) break;  // residual form is zero
    if (k == 0) {
      return {Matrix::identity(n), rank(m), true};
    }
    // <1> (+) hyperbolic plane is congruent to <1> (+) <1> (+) <1>.
    const std::size_t u = k - 1;
    const Word pu = p[u];
    const Word pa = p[a];
    const Word pb = p[b];
    p[u] = pu ^ pa;
    p[a] = pu ^ pb;
    p[b] = pu ^ pa ^ pb;
    for (std::size_t j = k; j < n; ++j) {
      if (j != a && j != b && form(m, p[j], p[u])) p[j] ^= p[u];
    }
  }
  return {Matrix::from_rows(n, n, std::move(p)), k, false};
}

std::size_t first_nonzero_row(const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (m.row(i) != 0) return i;
  }
  return m.rows();
}

Matrix gram_factorize(const Matrix& m) {
  if (!m.is_symmetric()) throw std::invalid_argument("Gram factor of a non-symmetric matrix");
  const std::size_t n = m.rows();
  CongruenceResult cr = congruence_diagonalize(m);
  if (cr.alternating) {
    Matrix adjusted = m;
    const std::size_t i = first_nonzero_row(m);
    adjusted.flip(i, i);
    cr = congruence_diagonalize(adjusted);
    if (cr.alternating) throw VerificationFailure("diagonal adjustment left an alternating matrix");
  }
  // P M' P^T = I_r (+) 0, so M' = Q (I_r (+) 0) Q^T with Q = P^{-1}.
  const auto q = inverse(cr.transform);
  if (!q) throw VerificationFailure("congruence transform is singular");
  return q->submatrix(0, 0, n, cr.rank);
}

}  // namespace tinv::gf2
