#pragma once

// Modules over kG = k[t]/t^q for the cyclic group of order q = p^n in
// characteristic p. A module is a nilpotent t-action matrix; the generator
// acts as g = I + T. Constructors, Krull-Schmidt decomposition, Hom spaces,
// tensor/dual/symmetric/restriction/induction functors, and the closed
// tensor formula for n = 1.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "stabring/ffield.hpp"

namespace stabring {

/// Multiset of Jordan block sizes (block i means one summand [i]),
/// kept sorted ascending.
class Decomposition {
public:
  Decomposition() = default;
  explicit Decomposition(std::vector<unsigned> blocks) : b_(std::move(blocks)) {
    std::sort(b_.begin(), b_.end());
  }

  const std::vector<unsigned>& blocks() const { return b_; }
  std::size_t count() const { return b_.size(); }
  bool empty() const { return b_.empty(); }

  std::size_t total_dim() const {
    std::size_t s = 0;
    for (auto v : b_) s += v;
    return s;
  }

  std::size_t multiplicity(unsigned i) const {
    std::size_t c = 0;
    for (auto v : b_) c += v == i;
    return c;
  }

  bool contains(unsigned i) const { return multiplicity(i) > 0; }

  Decomposition merged(const Decomposition& o) const {
    std::vector<unsigned> b = b_;
    b.insert(b.end(), o.b_.begin(), o.b_.end());
    return Decomposition(std::move(b));
  }

  /// Remove every block of the given size (used for projective-free parts).
  Decomposition without_size(unsigned size) const {
    std::vector<unsigned> b;
    for (auto v : b_)
      if (v != size) b.push_back(v);
    return Decomposition(std::move(b));
  }

  bool operator==(const Decomposition& o) const { return b_ == o.b_; }
  bool operator!=(const Decomposition& o) const { return !(*this == o); }
  bool operator<(const Decomposition& o) const { return b_ < o.b_; }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t k = 0; k < b_.size(); ++k) {
      if (k) s += ",";
      s += std::to_string(b_[k]);
    }
    return s + "}";
  }

private:
  std::vector<unsigned> b_;
};

namespace detail {

inline unsigned exponent_of(unsigned q, unsigned p) {
  unsigned n = 0;
  unsigned long long v = 1;
  while (v < q) {
    v *= p;
    ++n;
  }
  if (v != q) fail(errc::out_of_range, "q = " + std::to_string(q) + " is not a power of " + std::to_string(p));
  return n;
}

struct module_data {
  FieldSpec field;
  unsigned n = 0;  // q = p^n
  unsigned q = 1;
  Matrix t;
};

}  // namespace detail

/// A finite-dimensional k[t]/t^q-module. Cheap to copy (shared immutable
/// data). The t-action is expected nilpotent of index <= q; operations that
/// rely on it (decomposition, Jordan bases) verify and report otherwise.
class Module {
public:
  Module() = default;

  Module(FieldSpec field, unsigned q, Matrix t) {
    if (t.rows() != t.cols()) fail(errc::shape_mismatch, "t-action must be square");
    if (t.field() != field) fail(errc::field_mismatch, "t-action over the wrong field");
    auto d = std::make_shared<detail::module_data>();
    d->n = detail::exponent_of(q, field.p());
    d->q = q;
    d->field = std::move(field);
    d->t = std::move(t);
    d_ = std::move(d);
  }

  const FieldSpec& field() const { return d_->field; }
  unsigned q() const { return d_->q; }
  unsigned n() const { return d_->n; }
  std::size_t dim() const { return d_->t.rows(); }
  const Matrix& t() const { return d_->t; }

  /// The generator g = I + T.
  Matrix g() const { return Matrix::identity(d_->field, dim()) + d_->t; }

  bool same_ambient(const Module& o) const {
    return d_->field == o.d_->field && d_->q == o.d_->q;
  }

  bool operator==(const Module& o) const {
    if (d_ == o.d_) return true;
    return same_ambient(o) && d_->t == o.d_->t;
  }
  bool operator!=(const Module& o) const { return !(*this == o); }

private:
  std::shared_ptr<const detail::module_data> d_;
};

namespace detail {

inline void require_same_ambient(const Module& a, const Module& b) {
  if (a.field() != b.field()) fail(errc::field_mismatch, "modules over different fields");
  if (a.q() != b.q()) fail(errc::order_mismatch, "modules over different group orders");
}

}  // namespace detail

/// An equivariant-by-intent matrix between modules; the matrix is
/// (target dim x source dim). Shape is validated at construction,
/// equivariance is a queryable predicate.
class ModuleHom {
public:
  ModuleHom() = default;

  ModuleHom(Module source, Module target, Matrix f)
      : src_(std::move(source)), tgt_(std::move(target)), f_(std::move(f)) {
    detail::require_same_ambient(src_, tgt_);
    if (f_.rows() != tgt_.dim() || f_.cols() != src_.dim())
      fail(errc::shape_mismatch, "hom matrix must be target-dim x source-dim");
    if (f_.field() != src_.field()) fail(errc::field_mismatch, "hom matrix over the wrong field");
  }

  const Module& source() const { return src_; }
  const Module& target() const { return tgt_; }
  const Matrix& matrix() const { return f_; }

  bool equivariant() const { return f_ * src_.t() == tgt_.t() * f_; }

  /// this after f (usual composition order).
  ModuleHom compose(const ModuleHom& f) const {
    if (f.tgt_ != src_) fail(errc::shape_mismatch, "composition through mismatched modules");
    return ModuleHom(f.src_, tgt_, f_ * f.f_);
  }

  ModuleHom operator+(const ModuleHom& o) const {
    require_parallel(o);
    return ModuleHom(src_, tgt_, f_ + o.f_);
  }

  ModuleHom operator-(const ModuleHom& o) const {
    require_parallel(o);
    return ModuleHom(src_, tgt_, f_ - o.f_);
  }

  ModuleHom scaled(std::uint32_t c) const { return ModuleHom(src_, tgt_, f_.scaled(c)); }

  bool operator==(const ModuleHom& o) const {
    return src_ == o.src_ && tgt_ == o.tgt_ && f_ == o.f_;
  }
  bool operator!=(const ModuleHom& o) const { return !(*this == o); }

private:
  void require_parallel(const ModuleHom& o) const {
    if (src_ != o.src_ || tgt_ != o.tgt_) fail(errc::shape_mismatch, "homs with different ends");
  }

  Module src_, tgt_;
  Matrix f_;
};

inline ModuleHom hom_identity(const Module& a) {
  return ModuleHom(a, a, Matrix::identity(a.field(), a.dim()));
}

/// The zero module.
inline Module mod_zero(const FieldSpec& field, unsigned q) {
  return Module(field, q, Matrix(field, 0, 0));
}

/// The indecomposable [i] = k[t]/t^i: one lower-shift Jordan block.
inline Module mod_indec(const FieldSpec& field, unsigned q, unsigned i) {
  if (i < 1 || i > q) fail(errc::out_of_range, "[i] requires 1 <= i <= q");
  Matrix t(field, i, i);
  for (std::size_t k = 0; k + 1 < i; ++k) t.at(k + 1, k) = 1;
  return Module(field, q, t);
}

/// Permutation module k(G/H) for the subgroup H of the given order:
/// cyclic permutation matrix P on the p^(n-m) cosets, T = P - I.
inline Module mod_perm(const FieldSpec& field, unsigned q, unsigned subgroup_order) {
  unsigned n = detail::exponent_of(q, field.p());
  unsigned m = detail::exponent_of(subgroup_order, field.p());
  if (m > n) fail(errc::out_of_range, "subgroup order exceeds group order");
  unsigned r = q / subgroup_order;
  Matrix t(field, r, r);
  for (unsigned a = 0; a < r; ++a) {
    t.at((a + 1) % r, a) = field.add(t.at((a + 1) % r, a), 1);
    t.at(a, a) = field.sub(t.at(a, a), 1);
  }
  return Module(field, q, t);
}

inline Module mod_direct_sum(const Module& a, const Module& b) {
  detail::require_same_ambient(a, b);
  Matrix t(a.field(), a.dim() + b.dim(), a.dim() + b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) t.at(i, j) = a.t().at(i, j);
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) t.at(a.dim() + i, a.dim() + j) = b.t().at(i, j);
  return Module(a.field(), a.q(), t);
}

/// Tensor product with the diagonal action g = g_A (x) g_B, hence
/// T = T_A (x) I + I (x) T_B + T_A (x) T_B. Basis order: e_a (x) e_b has
/// index a*dim(B) + b (left factor major).
inline Module mod_tensor(const Module& a, const Module& b) {
  detail::require_same_ambient(a, b);
  const Matrix ia = Matrix::identity(a.field(), a.dim());
  const Matrix ib = Matrix::identity(b.field(), b.dim());
  Matrix t = a.t().kron(ib) + ia.kron(b.t()) + a.t().kron(b.t());
  return Module(a.field(), a.q(), std::move(t));
}

/// f (x) g on the tensor modules.
inline ModuleHom hom_tensor(const ModuleHom& f, const ModuleHom& g) {
  return ModuleHom(mod_tensor(f.source(), g.source()), mod_tensor(f.target(), g.target()),
                   f.matrix().kron(g.matrix()));
}

/// The basis-permutation isomorphism A (x) B -> B (x) A.
inline ModuleHom mod_swap(const Module& a, const Module& b) {
  Module src = mod_tensor(a, b), tgt = mod_tensor(b, a);
  Matrix f(a.field(), tgt.dim(), src.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) f.at(j * a.dim() + i, i * b.dim() + j) = 1;
  return ModuleHom(std::move(src), std::move(tgt), std::move(f));
}

/// Closed tensor formula over C_p (n = 1) for non-projective blocks,
/// returning the projective-free part of [i] (x) [j].
inline Decomposition tensor_formula_cp(unsigned p, unsigned i, unsigned j) {
  if (!detail::is_prime(p)) fail(errc::not_prime, "p must be prime");
  if (i < 1 || j < 1 || i >= p || j >= p)
    fail(errc::out_of_range, "formula applies to 1 <= i, j <= p-1 only");
  if (i > j) std::swap(i, j);
  std::vector<unsigned> blocks;
  unsigned last = i + j <= p ? j + i - 1 : 2 * p - i - j - 1;
  for (unsigned s = j - i + 1; s <= last; s += 2) blocks.push_back(s);
  return Decomposition(std::move(blocks));
}

/// Krull-Schmidt decomposition via the rank sequence of T: with
/// r_k = rank(T^k), the multiplicity of [i] is r_{i-1} - 2 r_i + r_{i+1}.
inline Decomposition mod_decompose(const Module& a) {
  const unsigned q = a.q();
  std::vector<std::size_t> r(q + 2, 0);
  r[0] = a.dim();
  Matrix pw = Matrix::identity(a.field(), a.dim());
  for (unsigned k = 1; k <= q; ++k) {
    pw = pw * a.t();
    r[k] = mat_rank(pw);
    if (r[k] == 0) break;
  }
  if (r[q] != 0) fail(errc::not_nilpotent, "t-action is not nilpotent of index q");
  std::vector<unsigned> blocks;
  for (unsigned i = 1; i <= q; ++i) {
    std::size_t lo = r[i], hi = r[i - 1] + r[i + 1];
    if (hi < 2 * lo) fail(errc::not_nilpotent, "rank sequence is not convex");
    std::size_t mult = hi - 2 * lo;
    for (std::size_t c = 0; c < mult; ++c) blocks.push_back(i);
  }
  return Decomposition(std::move(blocks));
}

/// Fast projectivity test: with T^q = 0 the number of blocks is
/// dim - rank(T), and blocks are all of size q exactly when that count
/// reaches its minimum dim/q.
inline bool mod_is_projective(const Module& a) {
  if (a.dim() == 0) return true;
  if (a.dim() % a.q() != 0) return false;
  return mat_rank(a.t()) == a.dim() - a.dim() / a.q();
}

/// Dual module under (g.f)(m) = f(g^{-1} m): the generator acts by the
/// inverse transpose, so T_dual = (I + T^t)^{-1} - I, a finite
/// geometric series because T is nilpotent.
inline Module mod_dual(const Module& a) {
  const Matrix nt = -a.t().transpose();
  Matrix acc = nt;
  Matrix pw = nt;
  for (;;) {
    pw = pw * nt;
    if (pw.is_zero()) break;
    acc = acc + pw;
  }
  return Module(a.field(), a.q(), std::move(acc));
}

/// Basis of Hom_kG(A, B) = solutions of F*T_A = T_B*F, computed as the
/// kernel of the linear system in the d_B x d_A entries of F (row-major
/// vectorization). Deterministic row-reduced basis.
inline std::vector<ModuleHom> hom_basis(const Module& a, const Module& b) {
  detail::require_same_ambient(a, b);
  const std::size_t da = a.dim(), db = b.dim();
  const FieldSpec& f = a.field();
  Matrix sys(f, da * db, da * db);
  for (std::size_t r = 0; r < db; ++r)
    for (std::size_t c = 0; c < da; ++c) {
      const std::size_t eq = r * da + c;
      for (std::size_t k = 0; k < da; ++k)
        sys.at(eq, r * da + k) = f.add(sys.at(eq, r * da + k), a.t().at(k, c));
      for (std::size_t k = 0; k < db; ++k)
        sys.at(eq, k * da + c) = f.sub(sys.at(eq, k * da + c), b.t().at(r, k));
    }
  Matrix ns = mat_nullspace(sys);
  std::vector<ModuleHom> basis;
  basis.reserve(ns.cols());
  for (std::size_t j = 0; j < ns.cols(); ++j) {
    Matrix m(f, db, da);
    for (std::size_t r = 0; r < db; ++r)
      for (std::size_t c = 0; c < da; ++c) m.at(r, c) = ns.at(r * da + c, j);
    basis.emplace_back(a, b, std::move(m));
  }
  return basis;
}

/// Rigidity data: eta: [1] -> M_dual (x) M sending 1 to the identity of M,
/// and eps: M (x) M_dual -> [1], the swap followed by the trace.
inline std::pair<ModuleHom, ModuleHom> unit_counit(const Module& m) {
  const FieldSpec& f = m.field();
  Module one = mod_indec(f, m.q(), 1);
  Module d = mod_dual(m);
  Module dm = mod_tensor(d, m);
  Module md = mod_tensor(m, d);
  Matrix eta(f, dm.dim(), 1);
  Matrix eps(f, 1, md.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    eta.at(i * m.dim() + i, 0) = 1;
    eps.at(0, i * m.dim() + i) = 1;
  }
  return {ModuleHom(one, dm, std::move(eta)), ModuleHom(md, one, std::move(eps))};
}

/// Restriction to the subgroup of order p^m: same space, t-action T^(p^(n-m)).
inline Module mod_restrict(const Module& a, unsigned m) {
  if (m > a.n()) fail(errc::out_of_range, "restriction target exceeds group order");
  unsigned steps = 1;
  for (unsigned k = 0; k < a.n() - m; ++k) steps *= a.field().p();
  unsigned new_q = 1;
  for (unsigned k = 0; k < m; ++k) new_q *= a.field().p();
  return Module(a.field(), new_q, a.t().pow(steps));
}

/// Induction kG (x)_kH A for A over the subgroup of order p^m, to order p^n.
/// Basis g^a (x) e_b with index a*dim(A) + b, a < p^(n-m); the generator
/// cycles the blocks and feeds h = I + T_A back at the seam.
inline Module mod_induce(const Module& a, unsigned n) {
  if (n < a.n()) fail(errc::out_of_range, "induction target below current order");
  const FieldSpec& f = a.field();
  unsigned r = 1;
  for (unsigned k = 0; k < n - a.n(); ++k) r *= f.p();
  unsigned new_q = a.q() * r;
  const std::size_t d = a.dim();
  Matrix g(f, r * d, r * d);
  for (unsigned blk = 0; blk + 1 < r; ++blk)
    for (std::size_t i = 0; i < d; ++i) g.at((blk + 1) * d + i, blk * d + i) = 1;
  Matrix h = a.g();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) g.at(i, (r - 1) * d + j) = h.at(i, j);
  Matrix t = g - Matrix::identity(f, r * d);
  return Module(f, new_q, std::move(t));
}

/// Symmetric power S^m(A) on the monomial basis (sorted multisets of basis
/// indices, enumerated in lexicographic order); the unipotent g acts by
/// multiplicative expansion of monomials, and T_sym = g_sym - I.
inline Module mod_sympow(const Module& a, unsigned m) {
  const FieldSpec& f = a.field();
  const std::size_t d = a.dim();
  // enumerate sorted multisets of size m over {0..d-1}
  std::vector<std::vector<unsigned>> monos;
  std::vector<unsigned> cur(m, 0);
  if (m == 0) {
    monos.push_back({});
  } else if (d == 0) {
    // no monomials of positive degree on the zero module
  } else {
    for (;;) {
      monos.push_back(cur);
      // next multiset in lexicographic order
      int k = int(m) - 1;
      while (k >= 0 && cur[k] == d - 1) --k;
      if (k < 0) break;
      unsigned v = cur[k] + 1;
      for (std::size_t j = k; j < m; ++j) cur[j] = v;
    }
  }
  std::map<std::vector<unsigned>, std::size_t> index;
  for (std::size_t k = 0; k < monos.size(); ++k) index[monos[k]] = k;

  const Matrix g = a.g();
  Matrix gs(f, monos.size(), monos.size());
  for (std::size_t col = 0; col < monos.size(); ++col) {
    // expand the product of g*e_i over the factors of the monomial
    std::map<std::vector<unsigned>, std::uint32_t> poly;
    poly[{}] = 1;
    for (unsigned factor : monos[col]) {
      std::map<std::vector<unsigned>, std::uint32_t> next;
      for (const auto& [mono, coef] : poly)
        for (std::size_t k = 0; k < d; ++k) {
          const std::uint32_t w = g.at(k, factor);
          if (!w) continue;
          std::vector<unsigned> ext = mono;
          ext.insert(std::lower_bound(ext.begin(), ext.end(), (unsigned)k), (unsigned)k);
          std::uint32_t& slot = next[std::move(ext)];
          slot = f.add(slot, f.mul(coef, w));
        }
      poly = std::move(next);
    }
    for (const auto& [mono, coef] : poly) gs.at(index.at(mono), col) = coef;
  }
  Matrix t = gs - Matrix::identity(f, monos.size());
  return Module(f, a.q(), std::move(t));
}

/// Image of the symmetrizing idempotent e = -sum over S_(p-1) acting on
/// [i]^(x)(p-1) by permuting tensor factors (Wilson: (p-1)! = -1 mod p, so
/// e is the averaging idempotent). Returns the decomposition of e*M and
/// verifies it against the independent mod_sympow construction.
inline Decomposition sym_idempotent_image(unsigned i, unsigned p, std::size_t dim_cap = 1024) {
  if (p != 3 && p != 5) fail(errc::out_of_range, "supported only for p in {3, 5}");
  if (i < 1 || i > p) fail(errc::out_of_range, "requires 1 <= i <= p");
  std::size_t d = 1;
  for (unsigned k = 0; k + 1 < p; ++k) d *= i;
  if (d > dim_cap) fail(errc::budget_exceeded, "tensor power dimension exceeds the cap");
  const FieldSpec f = ff_make(p, 1, {});
  Module block = mod_indec(f, p, i);
  Module m = block;
  for (unsigned k = 2; k < p; ++k) m = mod_tensor(m, block);

  const unsigned kf = p - 1;  // number of tensor factors
  std::vector<unsigned> perm(kf);
  for (unsigned k = 0; k < kf; ++k) perm[k] = k;
  Matrix e(f, d, d);
  std::vector<unsigned> digits(kf);
  do {
    for (std::size_t idx = 0; idx < d; ++idx) {
      std::size_t v = idx;
      for (unsigned k = kf; k-- > 0;) {
        digits[k] = v % i;
        v /= i;
      }
      std::size_t out = 0;
      for (unsigned k = 0; k < kf; ++k) out = out * i + digits[perm[k]];
      e.at(out, idx) = f.add(e.at(out, idx), 1);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  e = -e;

  // basis of the image: pivot columns of e
  std::vector<std::size_t> pivots;
  mat_rref(e, &pivots);
  Matrix basis(f, d, pivots.size());
  for (std::size_t k = 0; k < pivots.size(); ++k)
    for (std::size_t r = 0; r < d; ++r) basis.at(r, k) = e.at(r, pivots[k]);
  // the image is t-invariant; restrict the action to it
  auto res = mat_solve(basis, m.t() * basis);
  if (!res.feasible) fail(errc::criteria_disagree, "idempotent image is not t-invariant");
  Decomposition via_image = mod_decompose(Module(f, p, res.particular));
  Decomposition via_sympow = mod_decompose(mod_sympow(block, p - 1));
  if (via_image != via_sympow)
    fail(errc::criteria_disagree, "idempotent image disagrees with the symmetric power");
  return via_image;
}

/// Scalar extension GF(p) -> E: same t-entries read in E.
inline Module mod_extend(const Module& a, const FieldSpec& e) {
  if (a.field().m() != 1) fail(errc::field_mismatch, "extension applies to prime-field modules");
  if (e.p() != a.field().p()) fail(errc::field_mismatch, "extension must preserve characteristic");
  Matrix t(e, a.dim(), a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) t.at(i, j) = a.t().at(i, j);
  return Module(e, a.q(), std::move(t));
}

}  // namespace stabring
