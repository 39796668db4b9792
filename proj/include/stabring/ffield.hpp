#pragma once

// Exact arithmetic in GF(p^m) and dense linear algebra over it.
// Elements are stored as integer codes c0 + c1*p + ... + c_{m-1}*p^{m-1}
// (little-endian digits in the modulus basis); all operations are exact.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stabring {

/// Failure kinds raised by the library, carried by stabring::error.
enum class errc {
  not_prime,
  reducible_modulus,
  degree_mismatch,
  dimension_mismatch,
  shape_mismatch,
  field_mismatch,
  order_mismatch,
  out_of_range,
  not_nilpotent,
  singular,
  mode_mismatch,
  invalid_algebra,
  precheck_failed,
  budget_exceeded,
  not_projective_free,
  criteria_disagree,
  parse_error,
  unknown_command,
};

class error : public std::runtime_error {
public:
  error(errc kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  errc kind() const noexcept { return kind_; }

private:
  errc kind_;
};

[[noreturn]] inline void fail(errc kind, const std::string& what) { throw error(kind, what); }

namespace detail {

inline bool is_prime(unsigned long long v) {
  if (v < 2) return false;
  for (unsigned long long d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

// Little-endian polynomial helpers over GF(p), used only for modulus validation.
inline void poly_trim(std::vector<unsigned>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a mod b over GF(p); b must be nonzero.
inline std::vector<unsigned> poly_mod(std::vector<unsigned> a, const std::vector<unsigned>& b,
                                      unsigned p) {
  poly_trim(a);
  const std::size_t db = b.size() - 1;
  // inverse of the leading coefficient of b
  unsigned lead_inv = 1;
  for (unsigned c = 1; c < p; ++c)
    if (c * b[db] % p == 1) { lead_inv = c; break; }
  while (a.size() > db) {
    const std::size_t da = a.size() - 1;
    const unsigned f = a[da] * lead_inv % p;
    for (std::size_t k = 0; k <= db; ++k) {
      unsigned sub = f * b[k] % p;
      a[da - db + k] = (a[da - db + k] + p - sub) % p;
    }
    poly_trim(a);
    if (a.empty()) break;
  }
  return a;
}

struct field_data {
  unsigned p = 0;
  unsigned m = 1;
  std::uint32_t q = 0;                 // p^m
  std::vector<unsigned> modulus;       // little-endian, length m+1 when m > 1, empty otherwise
  std::vector<std::uint32_t> mul_tab;  // q*q entries when q <= kTableCap
  std::vector<std::uint32_t> inv_tab;  // q entries, inv_tab[0] unused
  std::vector<std::uint32_t> red_pow;  // codes of t^(m+k) mod modulus, k = 0..m-2

  static constexpr std::uint32_t kTableCap = 1024;

  std::uint32_t add_slow(std::uint32_t a, std::uint32_t b) const {
    if (p == 2) return a ^ b;
    if (m == 1) return (a + b) % p;
    std::uint32_t r = 0, w = 1;
    for (unsigned k = 0; k < m; ++k) {
      r += (a % p + b % p) % p * w;
      a /= p; b /= p; w *= p;
    }
    return r;
  }

  std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const {
    if (m == 1) return std::uint32_t(std::uint64_t(a) * b % p);
    unsigned da[8], db[8];
    for (unsigned k = 0; k < m; ++k) { da[k] = a % p; a /= p; db[k] = b % p; b /= p; }
    unsigned conv[16] = {0};
    for (unsigned i = 0; i < m; ++i)
      for (unsigned j = 0; j < m; ++j) conv[i + j] = (conv[i + j] + da[i] * db[j]) % p;
    // fold t^(m+k) back using the precomputed reductions
    for (unsigned k = 2 * m - 2; k >= m && k < 16; --k) {
      const unsigned c = conv[k];
      if (c) {
        std::uint32_t red = red_pow[k - m];
        for (unsigned i = 0; i < m; ++i) {
          conv[i] = (conv[i] + c * (red % p)) % p;
          red /= p;
        }
        conv[k] = 0;
      }
      if (k == m) break;
    }
    std::uint32_t r = 0, w = 1;
    for (unsigned k = 0; k < m; ++k) { r += conv[k] * w; w *= p; }
    return r;
  }
};

}  // namespace detail

/// A finite field GF(p^m). Cheap to copy (shared immutable data); all
/// element operations take and return integer codes below size().
class FieldSpec {
public:
  FieldSpec() = default;

  unsigned p() const { return d_->p; }
  unsigned m() const { return d_->m; }
  std::uint32_t size() const { return d_->q; }
  const std::vector<unsigned>& modulus() const { return d_->modulus; }
  bool valid() const { return d_ != nullptr; }

  std::uint32_t zero() const { return 0; }
  std::uint32_t one() const { return 1; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return d_->add_slow(a, b); }

  std::uint32_t neg(std::uint32_t a) const {
    if (d_->p == 2) return a;
    if (d_->m == 1) return a == 0 ? 0 : d_->p - a;
    std::uint32_t r = 0, w = 1;
    unsigned p = d_->p;
    for (unsigned k = 0; k < d_->m; ++k) {
      unsigned dk = a % p;
      r += (dk == 0 ? 0 : p - dk) * w;
      a /= p; w *= p;
    }
    return r;
  }

  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (!d_->mul_tab.empty()) return d_->mul_tab[std::size_t(a) * d_->q + b];
    return d_->mul_slow(a, b);
  }

  std::uint32_t inv(std::uint32_t a) const {
    if (a == 0) fail(errc::singular, "inverse of zero");
    return d_->inv_tab[a];
  }

  std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }

  std::uint32_t pow(std::uint32_t a, unsigned long long e) const {
    std::uint32_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  /// Embed an integer via reduction mod p (constant polynomial).
  std::uint32_t from_int(long long v) const {
    long long r = v % static_cast<long long>(d_->p);
    if (r < 0) r += d_->p;
    return static_cast<std::uint32_t>(r);
  }

  /// Little-endian coefficient view of an element (length m), for serialization.
  std::vector<unsigned> coeffs(std::uint32_t a) const {
    std::vector<unsigned> c(d_->m);
    for (unsigned k = 0; k < d_->m; ++k) { c[k] = a % d_->p; a /= d_->p; }
    return c;
  }

  /// Inverse of coeffs(): accepts up to m little-endian digits mod p.
  std::uint32_t from_coeffs(const std::vector<long long>& c) const {
    if (c.size() > d_->m) fail(errc::degree_mismatch, "too many scalar coefficients");
    std::uint32_t r = 0, w = 1;
    for (unsigned k = 0; k < d_->m; ++k) {
      long long v = k < c.size() ? c[k] % static_cast<long long>(d_->p) : 0;
      if (v < 0) v += d_->p;
      r += static_cast<std::uint32_t>(v) * w;
      w *= d_->p;
    }
    return r;
  }

  bool operator==(const FieldSpec& o) const {
    if (d_ == o.d_) return true;
    if (!d_ || !o.d_) return false;
    return d_->p == o.d_->p && d_->m == o.d_->m && d_->modulus == o.d_->modulus;
  }
  bool operator!=(const FieldSpec& o) const { return !(*this == o); }

  friend FieldSpec ff_make(unsigned p, unsigned m, const std::vector<unsigned>& modulus);

private:
  explicit FieldSpec(std::shared_ptr<const detail::field_data> d) : d_(std::move(d)) {}
  std::shared_ptr<const detail::field_data> d_;
};

/// Construct GF(p^m). For m > 1 the caller supplies a monic irreducible
/// modulus of degree m (little-endian coefficients); irreducibility is
/// validated by exhaustive trial division over all monic factors of
/// degree <= m/2 (which includes the root check at degree 1).
inline FieldSpec ff_make(unsigned p, unsigned m, const std::vector<unsigned>& modulus) {
  if (!detail::is_prime(p)) fail(errc::not_prime, "characteristic " + std::to_string(p) + " is not prime");
  if (m < 1) fail(errc::degree_mismatch, "extension degree must be at least 1");
  auto d = std::make_shared<detail::field_data>();
  d->p = p;
  d->m = m;
  std::uint64_t q = 1;
  for (unsigned k = 0; k < m; ++k) {
    q *= p;
    if (q > (std::uint64_t(1) << 31)) fail(errc::out_of_range, "field size too large");
  }
  d->q = static_cast<std::uint32_t>(q);
  if (m == 1) {
    if (!modulus.empty()) fail(errc::degree_mismatch, "prime field takes an empty modulus");
  } else {
    if (modulus.size() != m + 1) fail(errc::degree_mismatch, "modulus must have degree m");
    d->modulus.resize(m + 1);
    for (std::size_t k = 0; k <= m; ++k) d->modulus[k] = modulus[k] % p;
    if (d->modulus[m] != 1) fail(errc::degree_mismatch, "modulus must be monic");
    // exhaustive factor check: any factorization has a monic factor of degree <= m/2
    for (unsigned deg = 1; 2 * deg <= m; ++deg) {
      std::uint64_t count = 1;
      for (unsigned k = 0; k < deg; ++k) count *= p;
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::vector<unsigned> g(deg + 1, 0);
        std::uint64_t v = idx;
        for (unsigned k = 0; k < deg; ++k) { g[k] = v % p; v /= p; }
        g[deg] = 1;
        if (detail::poly_mod(d->modulus, g, p).empty())
          fail(errc::reducible_modulus, "modulus has a factor of degree " + std::to_string(deg));
      }
    }
    // reductions of t^(m+k) for the multiplication fold
    d->red_pow.resize(m - 1);
    for (unsigned k = 0; k + 1 < m; ++k) {
      std::vector<unsigned> t_pow(m + k + 1, 0);
      t_pow[m + k] = 1;
      auto r = detail::poly_mod(t_pow, d->modulus, p);
      std::uint32_t code = 0, w = 1;
      for (unsigned i = 0; i < m; ++i) {
        code += (i < r.size() ? r[i] : 0) * w;
        w *= p;
      }
      d->red_pow[k] = code;
    }
  }
  if (d->q <= detail::field_data::kTableCap) {
    d->mul_tab.resize(std::size_t(d->q) * d->q);
    for (std::uint32_t a = 0; a < d->q; ++a)
      for (std::uint32_t b = 0; b < d->q; ++b) d->mul_tab[std::size_t(a) * d->q + b] = d->mul_slow(a, b);
  }
  d->inv_tab.assign(d->q, 0);
  FieldSpec made(d);
  for (std::uint32_t a = 1; a < d->q; ++a) d->inv_tab[a] = made.pow(a, d->q - 2);
  return made;
}

/// Dense matrix over a FieldSpec, row-major. Vectors are columns; a linear
/// map is (target dim x source dim); the composite g after f is G*F.
class Matrix {
public:
  Matrix() : rows_(0), cols_(0) {}

  Matrix(FieldSpec field, std::size_t rows, std::size_t cols)
      : fld_(std::move(field)), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  static Matrix identity(FieldSpec field, std::size_t n) {
    Matrix r(std::move(field), n, n);
    for (std::size_t i = 0; i < n; ++i) r.at(i, i) = 1;
    return r;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const FieldSpec& field() const { return fld_; }

  std::uint32_t at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  std::uint32_t& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const std::vector<std::uint32_t>& data() const { return a_; }
  std::vector<std::uint32_t>& data() { return a_; }

  bool is_zero() const {
    for (auto v : a_)
      if (v) return false;
    return true;
  }

  bool is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if (at(r, c) != (r == c ? 1u : 0u)) return false;
    return true;
  }

  Matrix operator+(const Matrix& o) const {
    require_same_shape(o);
    Matrix r(fld_, rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = fld_.add(a_[k], o.a_[k]);
    return r;
  }

  Matrix operator-() const {
    Matrix r(fld_, rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = fld_.neg(a_[k]);
    return r;
  }

  Matrix operator-(const Matrix& o) const {
    require_same_shape(o);
    Matrix r(fld_, rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = fld_.sub(a_[k], o.a_[k]);
    return r;
  }

  Matrix scaled(std::uint32_t c) const {
    Matrix r(fld_, rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = fld_.mul(a_[k], c);
    return r;
  }

  Matrix operator*(const Matrix& o) const {
    require_same_field(o);
    if (cols_ != o.rows_) fail(errc::dimension_mismatch, "matrix product shape mismatch");
    Matrix r(fld_, rows_, o.cols_);
    if (fld_.m() == 1) {
      // prime field: accumulate raw products, reduce once per row sweep
      const std::uint64_t p = fld_.p();
      std::vector<std::uint64_t> acc(o.cols_);
      for (std::size_t i = 0; i < rows_; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t k = 0; k < cols_; ++k) {
          const std::uint64_t v = at(i, k);
          if (!v) continue;
          const std::uint32_t* brow = &o.a_[k * o.cols_];
          for (std::size_t j = 0; j < o.cols_; ++j) acc[j] += v * brow[j];
        }
        for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) = static_cast<std::uint32_t>(acc[j] % p);
      }
    } else {
      for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
          const std::uint32_t v = at(i, k);
          if (!v) continue;
          const std::uint32_t* brow = &o.a_[k * o.cols_];
          std::uint32_t* rrow = &r.a_[i * o.cols_];
          for (std::size_t j = 0; j < o.cols_; ++j)
            rrow[j] = fld_.add(rrow[j], fld_.mul(v, brow[j]));
        }
    }
    return r;
  }

  Matrix transpose() const {
    Matrix r(fld_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  /// Kronecker product with row index a*o.rows+b and column index
  /// a'*o.cols+b' (left factor major), matching the tensor basis order.
  Matrix kron(const Matrix& o) const {
    require_same_field(o);
    Matrix r(fld_, rows_ * o.rows_, cols_ * o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        const std::uint32_t v = at(i, j);
        if (!v) continue;
        for (std::size_t k = 0; k < o.rows_; ++k)
          for (std::size_t l = 0; l < o.cols_; ++l)
            r.at(i * o.rows_ + k, j * o.cols_ + l) = fld_.mul(v, o.at(k, l));
      }
    return r;
  }

  /// Matrix power; exponent 0 gives the identity.
  Matrix pow(unsigned e) const {
    if (rows_ != cols_) fail(errc::dimension_mismatch, "power of a non-square matrix");
    Matrix r = identity(fld_, rows_);
    Matrix b = *this;
    while (e) {
      if (e & 1) r = r * b;
      if (e >>= 1) b = b * b;
    }
    return r;
  }

  /// [A | B] side by side.
  Matrix hcat(const Matrix& o) const {
    require_same_field(o);
    if (rows_ != o.rows_) fail(errc::dimension_mismatch, "hcat row mismatch");
    Matrix r(fld_, rows_, cols_ + o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
      for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
    }
    return r;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && fld_ == o.fld_ && a_ == o.a_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  /// Column c as a rows x 1 matrix.
  Matrix col(std::size_t c) const {
    Matrix r(fld_, rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) r.at(i, 0) = at(i, c);
    return r;
  }

private:
  void require_same_shape(const Matrix& o) const {
    require_same_field(o);
    if (rows_ != o.rows_ || cols_ != o.cols_) fail(errc::dimension_mismatch, "matrix shape mismatch");
  }
  void require_same_field(const Matrix& o) const {
    if (fld_ != o.fld_) fail(errc::field_mismatch, "matrices over different fields");
  }

  FieldSpec fld_;
  std::size_t rows_, cols_;
  std::vector<std::uint32_t> a_;
};

namespace detail {

// In-place reduced row echelon form; returns pivot column indices in order.
// Deterministic: pivot is always the first nonzero entry down the column.
inline std::vector<std::size_t> rref_in_place(Matrix& a) {
  const FieldSpec& f = a.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t pr = r;
    while (pr < a.rows() && a.at(pr, c) == 0) ++pr;
    if (pr == a.rows()) continue;
    if (pr != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(pr, j), a.at(r, j));
    const std::uint32_t piv_inv = f.inv(a.at(r, c));
    if (piv_inv != 1)
      for (std::size_t j = c; j < a.cols(); ++j) a.at(r, j) = f.mul(a.at(r, j), piv_inv);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r) continue;
      const std::uint32_t v = a.at(i, c);
      if (!v) continue;
      for (std::size_t j = c; j < a.cols(); ++j)
        a.at(i, j) = f.sub(a.at(i, j), f.mul(v, a.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace detail

/// Rank over the field, by Gaussian elimination.
inline std::size_t mat_rank(Matrix a) { return detail::rref_in_place(a).size(); }

/// Reduced row echelon form; optionally reports pivot columns.
inline Matrix mat_rref(Matrix a, std::vector<std::size_t>* pivots = nullptr) {
  auto pv = detail::rref_in_place(a);
  if (pivots) *pivots = std::move(pv);
  return a;
}

/// Columns form the canonical (RREF-derived) basis of the kernel of A.
inline Matrix mat_nullspace(const Matrix& a) {
  std::vector<std::size_t> pivots;
  Matrix r = mat_rref(a, &pivots);
  const FieldSpec& f = a.field();
  std::vector<std::size_t> pivot_of_col(a.cols(), std::size_t(-1));
  for (std::size_t k = 0; k < pivots.size(); ++k) pivot_of_col[pivots[k]] = k;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < a.cols(); ++c)
    if (pivot_of_col[c] == std::size_t(-1)) free_cols.push_back(c);
  Matrix ns(f, a.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const std::size_t fc = free_cols[k];
    ns.at(fc, k) = 1;
    for (std::size_t pr = 0; pr < pivots.size(); ++pr) ns.at(pivots[pr], k) = f.neg(r.at(pr, fc));
  }
  return ns;
}

/// Affine solution set of A*X = B, columnwise.
struct SolveResult {
  bool feasible = false;
  std::size_t rank_a = 0;    // rank of A
  std::size_t rank_aug = 0;  // rank of [A|B]; infeasible iff rank_a < rank_aug
  Matrix particular;         // one solution (free variables zero), cols = B.cols
  Matrix nullspace;          // columns span ker A
};

inline SolveResult mat_solve(const Matrix& a, const Matrix& b) {
  if (a.field() != b.field()) fail(errc::field_mismatch, "solve over different fields");
  if (a.rows() != b.rows()) fail(errc::dimension_mismatch, "solve row mismatch");
  std::vector<std::size_t> pivots;
  Matrix r = mat_rref(a.hcat(b), &pivots);
  SolveResult res;
  for (auto c : pivots)
    if (c < a.cols()) ++res.rank_a;
  res.rank_aug = pivots.size();
  res.feasible = res.rank_a == res.rank_aug;
  res.nullspace = Matrix(a.field(), 0, 0);
  if (res.feasible) {
    res.particular = Matrix(a.field(), a.cols(), b.cols());
    for (std::size_t pr = 0; pr < pivots.size(); ++pr)
      for (std::size_t j = 0; j < b.cols(); ++j)
        res.particular.at(pivots[pr], j) = r.at(pr, a.cols() + j);
    // kernel from the A-part of the same echelon form
    const FieldSpec& f = a.field();
    std::vector<std::size_t> pivot_of_col(a.cols(), std::size_t(-1));
    for (std::size_t k = 0; k < pivots.size(); ++k) pivot_of_col[pivots[k]] = k;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (pivot_of_col[c] == std::size_t(-1)) free_cols.push_back(c);
    res.nullspace = Matrix(f, a.cols(), free_cols.size());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
      res.nullspace.at(free_cols[k], k) = 1;
      for (std::size_t pr = 0; pr < pivots.size(); ++pr)
        res.nullspace.at(pivots[pr], k) = f.neg(r.at(pr, free_cols[k]));
    }
  }
  return res;
}

/// Inverse of a square matrix; fails with errc::singular otherwise.
inline Matrix mat_inverse(const Matrix& a) {
  if (a.rows() != a.cols()) fail(errc::dimension_mismatch, "inverse of a non-square matrix");
  std::vector<std::size_t> pivots;
  Matrix r = mat_rref(a.hcat(Matrix::identity(a.field(), a.rows())), &pivots);
  std::size_t rank_a = 0;
  for (auto c : pivots)
    if (c < a.cols()) ++rank_a;
  if (rank_a != a.cols()) fail(errc::singular, "matrix is singular");
  Matrix inv(a.field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) inv.at(i, j) = r.at(i, a.cols() + j);
  return inv;
}

/// True for square T with T^q = 0.
inline bool mat_is_nilpotent(const Matrix& t, unsigned q) {
  if (t.rows() != t.cols()) return false;
  return t.pow(q).is_zero();
}

}  // namespace stabring
