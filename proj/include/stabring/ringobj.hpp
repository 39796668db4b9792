#pragma once

// Ring-objects (A, mu, u) in the module and stable categories: axiom
// reports, separability decided as linear feasibility over the field,
// canonical constructions, products and tensors of rings, brute-force
// ring isomorphism, idempotent counting, and the Z/2-graded enumerator.

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "stabring/ffield.hpp"
#include "stabring/modrep.hpp"
#include "stabring/stable.hpp"

namespace stabring {

enum class RingMode { module_cat, stable_cat };

namespace detail {

/// Congruence of two parallel maps: exact equality in the module
/// category, equality modulo PHom in the stable one.
inline bool hom_congruent(RingMode mode, const ModuleHom& f, const ModuleHom& g) {
  if (mode == RingMode::module_cat) return f.matrix() == g.matrix();
  return stable_equal(f, g);
}

/// Span-membership tester: the span is row-reduced once, and membership
/// is a single elimination pass against the pivot rows.
struct SpanTester {
  Matrix red;
  std::vector<std::size_t> pivots;
  std::size_t width = 0;

  SpanTester(const FieldSpec& f, const std::vector<Matrix>& span, std::size_t w)
      : red(f, 0, 0), width(w) {
    red = mat_rref(vec_rows(f, span, w), &pivots);
  }

  std::size_t rank() const { return pivots.size(); }

  bool contains(const Matrix& v) const {
    const FieldSpec& f = red.field();
    std::vector<std::uint32_t> row(v.data().begin(), v.data().end());
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      std::uint32_t c = row[pivots[r]];
      if (c == 0) continue;
      for (std::size_t e = 0; e < width; ++e) row[e] = f.sub(row[e], f.mul(c, red.at(r, e)));
    }
    for (auto x : row)
      if (x != 0) return false;
    return true;
  }
};

/// Subset of `cands` whose span complements `fixed`: kept elements are
/// independent modulo the fixed span, scanned in order (deterministic).
inline std::vector<std::size_t> complement_indices(const FieldSpec& f,
                                                   const std::vector<Matrix>& fixed,
                                                   const std::vector<Matrix>& cands,
                                                   std::size_t width) {
  std::vector<Matrix> acc = fixed;
  std::size_t rank = mat_rank(vec_rows(f, acc, width));
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < cands.size(); ++k) {
    acc.push_back(cands[k]);
    std::size_t r = mat_rank(vec_rows(f, acc, width));
    if (r > rank) {
      rank = r;
      keep.push_back(k);
    } else {
      acc.pop_back();
    }
  }
  return keep;
}

/// Odometer over coefficient tuples in lexicographic order (first
/// coordinate most significant), codes running 0..size-1.
struct TupleOdometer {
  std::vector<std::uint32_t> codes;
  std::uint32_t size;
  bool done;

  TupleOdometer(std::size_t n, std::uint32_t field_size)
      : codes(n, 0), size(field_size), done(false) {}

  bool advance() {
    for (std::size_t k = codes.size(); k-- > 0;) {
      if (++codes[k] < size) return true;
      codes[k] = 0;
    }
    done = true;
    return false;
  }
};

inline std::uint64_t pow_checked(std::uint64_t base, std::size_t exp, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (std::size_t k = 0; k < exp; ++k) {
    if (v > cap / base) return cap + 1;
    v *= base;
  }
  return v;
}

}  // namespace detail

struct RingCheckReport {
  bool equivariant = false;
  bool associative = false;
  bool commutative = false;
  bool unital = false;
  bool all() const { return equivariant && associative && commutative && unital; }
};

/// A multiplication mu: A (x) A -> A with unit u: [1] -> A, read in the
/// module category or the stable one. Shapes are enforced here; the
/// axioms are queried through ring_check.
class RingObject {
public:
  RingObject(Module a, ModuleHom mu, ModuleHom unit, RingMode mode)
      : a_(std::move(a)), mu_(std::move(mu)), unit_(std::move(unit)), mode_(mode) {
    if (mu_.target() != a_ || mu_.source() != mod_tensor(a_, a_))
      fail(errc::shape_mismatch, "multiplication must map A (x) A to A");
    Module one = mod_indec(a_.field(), a_.q(), 1);
    if (unit_.source() != one || unit_.target() != a_)
      fail(errc::shape_mismatch, "unit must map the trivial module to A");
  }

  static RingObject from_parts(const Module& a, Matrix mu, Matrix unit, RingMode mode) {
    Module one = mod_indec(a.field(), a.q(), 1);
    return RingObject(a, ModuleHom(mod_tensor(a, a), a, std::move(mu)),
                      ModuleHom(one, a, std::move(unit)), mode);
  }

  const Module& carrier() const { return a_; }
  const ModuleHom& mu() const { return mu_; }
  const ModuleHom& unit() const { return unit_; }
  RingMode mode() const { return mode_; }

  RingObject with_mode(RingMode mode) const { return RingObject(a_, mu_, unit_, mode); }

private:
  Module a_;
  ModuleHom mu_;
  ModuleHom unit_;
  RingMode mode_;
};

/// Axiom report: equivariance is always an exact matrix property of the
/// chosen representatives; the other three laws are exact identities in
/// the module category and PHom-congruences in the stable one.
inline RingCheckReport ring_check(const RingObject& r) {
  const Module& a = r.carrier();
  const ModuleHom& mu = r.mu();
  RingCheckReport rep;
  rep.equivariant = mu.equivariant() && r.unit().equivariant();

  auto id = hom_identity(a);
  ModuleHom assoc_l = mu.compose(hom_tensor(mu, id));
  ModuleHom assoc_r = mu.compose(hom_tensor(id, mu));
  rep.associative = detail::hom_congruent(r.mode(), assoc_l, assoc_r);

  ModuleHom swapped = mu.compose(mod_swap(a, a));
  rep.commutative = detail::hom_congruent(r.mode(), swapped, mu);

  ModuleHom left_unit = mu.compose(hom_tensor(r.unit(), id));
  ModuleHom right_unit = mu.compose(hom_tensor(id, r.unit()));
  rep.unital = detail::hom_congruent(r.mode(), left_unit, id) &&
               detail::hom_congruent(r.mode(), right_unit, id);
  return rep;
}

/// k(G/H) with the pointwise product on the coset basis and the
/// all-ones unit.
inline RingObject ring_perm(const FieldSpec& field, unsigned q, unsigned subgroup_order,
                            RingMode mode = RingMode::module_cat) {
  Module a = mod_perm(field, q, subgroup_order);
  const std::size_t d = a.dim();
  Matrix mu(field, d, d * d);
  for (std::size_t i = 0; i < d; ++i) mu.at(i, i * d + i) = 1;
  Matrix unit(field, d, 1);
  for (std::size_t i = 0; i < d; ++i) unit.at(i, 0) = 1;
  return RingObject::from_parts(a, std::move(mu), std::move(unit), mode);
}

/// Ordinary k-algebra placed on a trivial-action module. The unit law is
/// the one axiom verified at construction; the rest go through ring_check.
inline RingObject ring_trivial(const FieldSpec& field, unsigned q, const Matrix& mu,
                               const Matrix& unit, RingMode mode = RingMode::module_cat) {
  const std::size_t d = mu.rows();
  Module a(field, q, Matrix(field, d, d));
  RingObject r = RingObject::from_parts(a, mu, unit, mode);
  auto id = hom_identity(a);
  if (r.mu().compose(hom_tensor(r.unit(), id)).matrix() != id.matrix() ||
      r.mu().compose(hom_tensor(id, r.unit())).matrix() != id.matrix())
    fail(errc::invalid_algebra, "unit law fails for the given structure constants");
  return r;
}

/// Componentwise product ring on the direct sum.
inline RingObject ring_product(const RingObject& r1, const RingObject& r2) {
  if (r1.mode() != r2.mode()) fail(errc::mode_mismatch, "product of rings in different modes");
  const Module &a1 = r1.carrier(), &a2 = r2.carrier();
  Module a = mod_direct_sum(a1, a2);
  const FieldSpec& f = a.field();
  const std::size_t d1 = a1.dim(), d2 = a2.dim(), d = d1 + d2;
  Matrix mu(f, d, d * d);
  for (std::size_t r = 0; r < d1; ++r)
    for (std::size_t i = 0; i < d1; ++i)
      for (std::size_t j = 0; j < d1; ++j) mu.at(r, i * d + j) = r1.mu().matrix().at(r, i * d1 + j);
  for (std::size_t r = 0; r < d2; ++r)
    for (std::size_t i = 0; i < d2; ++i)
      for (std::size_t j = 0; j < d2; ++j)
        mu.at(d1 + r, (d1 + i) * d + (d1 + j)) = r2.mu().matrix().at(r, i * d2 + j);
  Matrix unit(f, d, 1);
  for (std::size_t i = 0; i < d1; ++i) unit.at(i, 0) = r1.unit().matrix().at(i, 0);
  for (std::size_t i = 0; i < d2; ++i) unit.at(d1 + i, 0) = r2.unit().matrix().at(i, 0);
  return RingObject::from_parts(a, std::move(mu), std::move(unit), r1.mode());
}

/// Tensor product ring: mu = (mu1 (x) mu2) after the middle swap, unit
/// u1 (x) u2.
inline RingObject ring_tensor(const RingObject& r1, const RingObject& r2) {
  if (r1.mode() != r2.mode()) fail(errc::mode_mismatch, "tensor of rings in different modes");
  const Module &a1 = r1.carrier(), &a2 = r2.carrier();
  Module a = mod_tensor(a1, a2);
  const FieldSpec& f = a.field();
  const std::size_t d1 = a1.dim(), d2 = a2.dim();
  Matrix middle = Matrix::identity(f, d1).kron(
      mod_swap(a2, a1).matrix().kron(Matrix::identity(f, d2)));
  Matrix mu = r1.mu().matrix().kron(r2.mu().matrix()) * middle;
  Matrix unit = r1.unit().matrix().kron(r2.unit().matrix());
  return RingObject::from_parts(a, std::move(mu), std::move(unit), r1.mode());
}

struct SeparabilityCertificate {
  ModuleHom sigma;  // section A -> A (x) A
  RingMode mode = RingMode::module_cat;
  // In stable mode: the PHom elements witnessing the three congruences
  // (mu sigma - 1, and sigma mu minus each bimodule composite). Empty in
  // module mode, where the identities hold exactly.
  std::vector<ModuleHom> slack;
};

struct SepResult {
  bool separable = false;
  std::optional<SeparabilityCertificate> certificate;
  std::size_t rank_system = 0;     // rank of the coefficient matrix
  std::size_t rank_augmented = 0;  // rank with the right-hand side adjoined
};

namespace detail {

struct SepComposites {
  ModuleHom mu_sigma;   // A -> A
  ModuleHom sigma_mu;   // A(x)A -> A(x)A
  ModuleHom via_left;   // (mu (x) 1)(1 (x) sigma)
  ModuleHom via_right;  // (1 (x) mu)(sigma (x) 1)
};

inline SepComposites sep_composites(const RingObject& r, const ModuleHom& sigma) {
  const Module& a = r.carrier();
  auto id = hom_identity(a);
  return SepComposites{
      r.mu().compose(sigma),
      sigma.compose(r.mu()),
      hom_tensor(r.mu(), id).compose(hom_tensor(id, sigma)),
      hom_tensor(id, r.mu()).compose(hom_tensor(sigma, id)),
  };
}

}  // namespace detail

/// True when sigma certifies separability of r in r's mode.
inline bool sep_verify(const RingObject& r, const ModuleHom& sigma) {
  const Module& a = r.carrier();
  if (sigma.source() != a || sigma.target() != mod_tensor(a, a)) return false;
  auto c = detail::sep_composites(r, sigma);
  return detail::hom_congruent(r.mode(), c.mu_sigma, hom_identity(a)) &&
         detail::hom_congruent(r.mode(), c.sigma_mu, c.via_left) &&
         detail::hom_congruent(r.mode(), c.sigma_mu, c.via_right);
}

/// Decide separability by solving for an equivariant section sigma of mu
/// satisfying both bimodule identities. In stable mode every equation is
/// relaxed by PHom slack unknowns; a projective carrier is stably zero,
/// so sigma = 0 certifies it outright. Certificates are re-verified
/// before being returned.
inline SepResult sep_solve(const RingObject& r) {
  RingCheckReport rep = ring_check(r);
  if (!rep.equivariant || !rep.unital)
    fail(errc::precheck_failed, "separability needs an equivariant unital ring");
  const Module& a = r.carrier();
  const FieldSpec& f = a.field();
  Module aa = mod_tensor(a, a);
  const bool stable = r.mode() == RingMode::stable_cat;

  if (stable && mod_is_projective(a)) {
    ModuleHom sigma(a, aa, Matrix(f, aa.dim(), a.dim()));
    auto c = detail::sep_composites(r, sigma);
    SeparabilityCertificate cert{sigma, r.mode(), {}};
    cert.slack = {c.mu_sigma - hom_identity(a), c.sigma_mu - c.via_left,
                  c.sigma_mu - c.via_right};
    SepResult res;
    res.separable = sep_verify(r, sigma);
    if (!res.separable) fail(errc::criteria_disagree, "projective carrier must be stably separable");
    res.certificate = std::move(cert);
    return res;
  }

  const std::vector<ModuleHom> basis = hom_basis(a, aa);
  const std::size_t m = basis.size();
  const std::size_t d = a.dim(), dd = aa.dim();

  std::vector<ModuleHom> slack1, slack2;
  if (stable) {
    slack1 = phom_basis(a, a);
    slack2 = phom_basis(aa, aa);
  }
  const std::size_t s1 = slack1.size(), s2 = slack2.size();
  const std::size_t cols = m + s1 + 2 * s2;
  const std::size_t rows1 = d * d, rows23 = dd * dd;
  Matrix sys(f, rows1 + 2 * rows23, cols);
  Matrix rhs(f, rows1 + 2 * rows23, 1);

  const Matrix id_d = Matrix::identity(f, d);
  const Matrix mu = r.mu().matrix();
  const Matrix mu_right = mu.kron(id_d), mu_left = id_d.kron(mu);
  for (std::size_t k = 0; k < m; ++k) {
    const Matrix& b = basis[k].matrix();
    Matrix e1 = mu * b;
    Matrix common = b * mu;
    Matrix e2 = common - mu_right * id_d.kron(b);
    Matrix e3 = common - mu_left * b.kron(id_d);
    for (std::size_t e = 0; e < rows1; ++e) sys.at(e, k) = e1.data()[e];
    for (std::size_t e = 0; e < rows23; ++e) {
      sys.at(rows1 + e, k) = e2.data()[e];
      sys.at(rows1 + rows23 + e, k) = e3.data()[e];
    }
  }
  for (std::size_t j = 0; j < s1; ++j)
    for (std::size_t e = 0; e < rows1; ++e)
      sys.at(e, m + j) = f.neg(slack1[j].matrix().data()[e]);
  for (std::size_t j = 0; j < s2; ++j)
    for (std::size_t e = 0; e < rows23; ++e) {
      sys.at(rows1 + e, m + s1 + j) = f.neg(slack2[j].matrix().data()[e]);
      sys.at(rows1 + rows23 + e, m + s1 + s2 + j) = f.neg(slack2[j].matrix().data()[e]);
    }
  for (std::size_t e = 0; e < rows1; ++e) rhs.at(e, 0) = id_d.data()[e];

  SolveResult sol = mat_solve(sys, rhs);
  SepResult res;
  res.rank_system = sol.rank_a;
  res.rank_augmented = sol.rank_aug;
  if (!sol.feasible) return res;

  Matrix sm(f, dd, d);
  for (std::size_t k = 0; k < m; ++k)
    if (sol.particular.at(k, 0) != 0) sm = sm + basis[k].matrix().scaled(sol.particular.at(k, 0));
  ModuleHom sigma(a, aa, std::move(sm));
  if (!sep_verify(r, sigma))
    fail(errc::criteria_disagree, "solver produced a certificate that fails re-verification");
  SeparabilityCertificate cert{sigma, r.mode(), {}};
  if (stable) {
    auto c = detail::sep_composites(r, sigma);
    cert.slack = {c.mu_sigma - hom_identity(a), c.sigma_mu - c.via_left,
                  c.sigma_mu - c.via_right};
  }
  res.separable = true;
  res.certificate = std::move(cert);
  return res;
}

struct IsoResult {
  bool isomorphic = false;
  std::optional<ModuleHom> witness;
};

namespace detail {

/// Stable invertibility of phi: a two-sided inverse psi exists modulo
/// PHom, decided by one joint linear system.
inline bool stable_invertible(const ModuleHom& phi) {
  const Module &a1 = phi.source(), &a2 = phi.target();
  const FieldSpec& f = a1.field();
  std::vector<ModuleHom> back = hom_basis(a2, a1);
  std::vector<ModuleHom> p1 = phom_basis(a1, a1), p2 = phom_basis(a2, a2);
  const std::size_t m = back.size(), s1 = p1.size(), s2 = p2.size();
  const std::size_t d1 = a1.dim(), d2 = a2.dim();
  const std::size_t rows_a = d1 * d1, rows_b = d2 * d2;
  Matrix sys(f, rows_a + rows_b, m + s1 + s2);
  Matrix rhs(f, rows_a + rows_b, 1);
  for (std::size_t k = 0; k < m; ++k) {
    Matrix left = back[k].matrix() * phi.matrix();   // psi phi : A1 -> A1
    Matrix right = phi.matrix() * back[k].matrix();  // phi psi : A2 -> A2
    for (std::size_t e = 0; e < rows_a; ++e) sys.at(e, k) = left.data()[e];
    for (std::size_t e = 0; e < rows_b; ++e) sys.at(rows_a + e, k) = right.data()[e];
  }
  for (std::size_t j = 0; j < s1; ++j)
    for (std::size_t e = 0; e < rows_a; ++e) sys.at(e, m + j) = f.neg(p1[j].matrix().data()[e]);
  for (std::size_t j = 0; j < s2; ++j)
    for (std::size_t e = 0; e < rows_b; ++e)
      sys.at(rows_a + e, m + s1 + j) = f.neg(p2[j].matrix().data()[e]);
  const Matrix i1 = Matrix::identity(f, d1), i2 = Matrix::identity(f, d2);
  for (std::size_t e = 0; e < rows_a; ++e) rhs.at(e, 0) = i1.data()[e];
  for (std::size_t e = 0; e < rows_b; ++e) rhs.at(rows_a + e, 0) = i2.data()[e];
  return mat_solve(sys, rhs).feasible;
}

}  // namespace detail

/// Search for a ring isomorphism phi: R1 -> R2 by exhausting equivariant
/// maps (coset representatives modulo PHom in stable mode) in
/// lexicographic coefficient order; the witness is the first hit, hence
/// the lexicographically least.
inline IsoResult ring_iso_search(const RingObject& r1, const RingObject& r2,
                                 std::uint64_t budget = std::uint64_t(1) << 24) {
  if (r1.mode() != r2.mode()) fail(errc::mode_mismatch, "isomorphism search across modes");
  const Module &a1 = r1.carrier(), &a2 = r2.carrier();
  detail::require_same_ambient(a1, a2);
  const bool stable = r1.mode() == RingMode::stable_cat;
  const FieldSpec& f = a1.field();

  if (!stable && a1.dim() != a2.dim()) return {};
  if (stable && !stable_iso(a1, a2)) return {};

  std::vector<ModuleHom> full = hom_basis(a1, a2);
  std::vector<ModuleHom> gens;
  if (stable) {
    std::vector<Matrix> fixed, cands;
    for (const auto& h : phom_basis(a1, a2)) fixed.push_back(h.matrix());
    for (const auto& h : full) cands.push_back(h.matrix());
    for (std::size_t k : detail::complement_indices(f, fixed, cands, a1.dim() * a2.dim()))
      gens.push_back(full[k]);
  } else {
    gens = full;
  }

  if (detail::pow_checked(f.size(), gens.size(), budget) > budget)
    fail(errc::budget_exceeded, "isomorphism search space exceeds the budget");

  Module a11 = mod_tensor(a1, a1);
  const Matrix u1 = r1.unit().matrix(), u2 = r2.unit().matrix();
  const Matrix mu1 = r1.mu().matrix(), mu2 = r2.mu().matrix();

  std::optional<detail::SpanTester> unit_t, mult_t;
  if (stable) {
    Module one = mod_indec(f, a1.q(), 1);
    std::vector<Matrix> uspan, mspan;
    for (const auto& h : phom_basis(one, a2)) uspan.push_back(h.matrix());
    for (const auto& h : phom_basis(a11, a2)) mspan.push_back(h.matrix());
    unit_t.emplace(f, uspan, a2.dim());
    mult_t.emplace(f, mspan, a11.dim() * a2.dim());
  }

  detail::TupleOdometer od(gens.size(), f.size());
  for (;;) {
    Matrix pm(f, a2.dim(), a1.dim());
    for (std::size_t k = 0; k < gens.size(); ++k)
      if (od.codes[k] != 0) pm = pm + gens[k].matrix().scaled(od.codes[k]);

    Matrix udiff = pm * u1 - u2;
    if (stable ? unit_t->contains(udiff) : udiff.is_zero()) {
      Matrix mdiff = pm * mu1 - mu2 * pm.kron(pm);
      if (stable ? mult_t->contains(mdiff) : mdiff.is_zero()) {
        ModuleHom phi(a1, a2, pm);
        bool invertible = stable ? detail::stable_invertible(phi)
                                 : a1.dim() == a2.dim() && mat_rank(pm) == a1.dim();
        if (invertible) return {true, phi};
      }
    }
    if (!od.advance()) break;
  }
  return {};
}

/// Number of idempotent elements: solutions of mu(e (x) e) = e over the
/// fixed space Hom([1], A), counted on PHom-cosets in stable mode (the
/// congruence descends because A (x) projective is projective).
inline std::size_t ring_idempotent_count(const RingObject& r) {
  const Module& a = r.carrier();
  const FieldSpec& f = a.field();
  Matrix fixed = mat_nullspace(a.t());
  std::vector<Matrix> cands;
  for (std::size_t j = 0; j < fixed.cols(); ++j) cands.push_back(fixed.col(j));

  std::vector<Matrix> ideal;
  if (r.mode() == RingMode::stable_cat) {
    Module one = mod_indec(f, a.q(), 1);
    for (const auto& h : phom_basis(one, a)) ideal.push_back(h.matrix());
  }
  std::vector<Matrix> gens;
  for (std::size_t k : detail::complement_indices(f, ideal, cands, a.dim())) gens.push_back(cands[k]);

  detail::SpanTester in_ideal(f, ideal, a.dim());
  std::size_t count = 0;
  detail::TupleOdometer od(gens.size(), f.size());
  for (;;) {
    Matrix v(f, a.dim(), 1);
    for (std::size_t k = 0; k < gens.size(); ++k)
      if (od.codes[k] != 0) v = v + gens[k].scaled(od.codes[k]);
    Matrix diff = r.mu().matrix() * v.kron(v) - v;
    if (r.mode() == RingMode::module_cat ? diff.is_zero() : in_ideal.contains(diff)) ++count;
    if (!od.advance()) break;
  }
  return count;
}

struct GradedAlgebra {
  unsigned d0 = 0, d1 = 0;
  Matrix mu;    // d x d^2 structure constants, column index i*d+j
  Matrix unit;  // d x 1, supported in degree 0
};

namespace detail {

/// Degree-preserving separability for a graded algebra: sigma maps V_a
/// into the degree-a part of V (x) V, with the usual three identities,
/// all exact (no group is acting here).
inline bool graded_separable(const FieldSpec& f, unsigned d0, unsigned d1, const Matrix& mu) {
  const std::size_t d = d0 + d1;
  auto deg = [&](std::size_t i) { return i < d0 ? 0u : 1u; };
  std::vector<std::pair<std::size_t, std::size_t>> unknowns;  // (row in sigma, column)
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t j = 0; j < d; ++j)
        if ((deg(a) + deg(b)) % 2 == deg(j)) unknowns.push_back({a * d + b, j});

  const std::size_t rows1 = d * d, rows23 = d * d * d * d;
  Matrix sys(f, rows1 + 2 * rows23, unknowns.size());
  Matrix rhs(f, rows1 + 2 * rows23, 1);
  const Matrix id = Matrix::identity(f, d);
  for (std::size_t k = 0; k < unknowns.size(); ++k) {
    Matrix b(f, d * d, d);
    b.at(unknowns[k].first, unknowns[k].second) = 1;
    Matrix e1 = mu * b;
    Matrix common = b * mu;
    Matrix e2 = common - mu.kron(id) * id.kron(b);
    Matrix e3 = common - id.kron(mu) * b.kron(id);
    for (std::size_t e = 0; e < rows1; ++e) sys.at(e, k) = e1.data()[e];
    for (std::size_t e = 0; e < rows23; ++e) {
      sys.at(rows1 + e, k) = e2.data()[e];
      sys.at(rows1 + rows23 + e, k) = e3.data()[e];
    }
  }
  for (std::size_t e = 0; e < rows1; ++e) rhs.at(e, 0) = id.data()[e];
  return mat_solve(sys, rhs).feasible;
}

}  // namespace detail

/// Exhaustive catalog of graded-commutative unital separable algebras in
/// characteristic 2 with the given homogeneous dimensions. Every
/// survivor must be concentrated in degree zero; a survivor with a
/// genuine odd part would contradict that and is reported as an error.
inline std::vector<GradedAlgebra> graded_sep_enum(const FieldSpec& f, unsigned d0, unsigned d1,
                                                  std::uint64_t budget = std::uint64_t(1) << 24) {
  if (f.p() != 2) fail(errc::field_mismatch, "graded enumeration is a characteristic-2 tool");
  const std::size_t d = d0 + d1;
  auto deg = [&](std::size_t i) { return i < d0 ? 0u : 1u; };

  // free structure constants: c[i][j][k] with i <= j and compatible degree
  std::vector<std::array<std::size_t, 3>> slots;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        if ((deg(i) + deg(j)) % 2 == deg(k)) slots.push_back({i, j, k});

  std::vector<GradedAlgebra> out;
  if (d == 0) return out;
  if (d0 == 0) return out;  // no degree-0 part, hence no unit

  auto mu_from = [&](const Matrix& coeffs) {
    Matrix mu(f, d, d * d);
    for (std::size_t s = 0; s < slots.size(); ++s) {
      auto [i, j, k] = slots[s];
      std::uint32_t c = coeffs.at(s, 0);
      mu.at(k, i * d + j) = c;
      mu.at(k, j * d + i) = c;
    }
    return mu;
  };

  // unit candidates: nonzero vectors of the degree-0 part
  detail::TupleOdometer units(d0, f.size());
  for (;;) {
    bool nonzero = false;
    for (auto c : units.codes) nonzero = nonzero || c != 0;
    if (nonzero) {
      Matrix u(f, d, 1);
      for (unsigned i = 0; i < d0; ++i) u.at(i, 0) = units.codes[i];

      // unit law mu(u (x) e_j) = e_j, linear in the structure constants
      Matrix sys(f, d * d, slots.size());
      Matrix rhs(f, d * d, 1);
      for (std::size_t s = 0; s < slots.size(); ++s) {
        auto [i, j, k] = slots[s];
        sys.at(k * d + j, s) = f.add(sys.at(k * d + j, s), u.at(i, 0));
        if (i != j) sys.at(k * d + i, s) = f.add(sys.at(k * d + i, s), u.at(j, 0));
      }
      for (std::size_t j = 0; j < d; ++j) rhs.at(j * d + j, 0) = 1;

      SolveResult sol = mat_solve(sys, rhs);
      if (sol.feasible) {
        const std::size_t kd = sol.nullspace.cols();
        if (detail::pow_checked(f.size(), kd, budget) > budget)
          fail(errc::budget_exceeded, "graded enumeration space exceeds the budget");
        detail::TupleOdometer combo(kd, f.size());
        for (;;) {
          Matrix coeffs = sol.particular;
          for (std::size_t k = 0; k < kd; ++k)
            if (combo.codes[k] != 0) coeffs = coeffs + sol.nullspace.col(k).scaled(combo.codes[k]);
          Matrix mu = mu_from(coeffs);
          Matrix id = Matrix::identity(f, d);
          if (mu * mu.kron(id) == mu * id.kron(mu) &&
              detail::graded_separable(f, d0, d1, mu)) {
            if (d1 != 0)
              fail(errc::criteria_disagree,
                   "graded separable survivor with a nonzero odd part");
            out.push_back(GradedAlgebra{d0, d1, mu, u});
          }
          if (!combo.advance()) break;
        }
      }
    }
    if (!units.advance()) break;
  }
  return out;
}

}  // namespace stabring
