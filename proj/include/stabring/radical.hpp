#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "stabring/ffield.hpp"
#include "stabring/modrep.hpp"
#include "stabring/ringobj.hpp"
#include "stabring/stable.hpp"

namespace stabring {

/// Change of basis P putting the module's nilpotent action into exact
/// block-diagonal lower-shift form, blocks ascending. Deterministic for
/// a given action matrix: kernels use the canonical nullspace bases and
/// chain tops are chosen by a fixed greedy scan.
struct JordanBasis {
  Module module;
  Matrix p;
  Matrix p_inv;
  Decomposition blocks;               // ascending, one entry per chain
  std::vector<std::size_t> offsets;   // column offset of each block in p
};

inline JordanBasis jordan_basis(const Module& a) {
  const FieldSpec& f = a.field();
  const std::size_t d = a.dim();
  const Matrix& t = a.t();

  // kernel filtration up to the nilpotency index
  std::vector<Matrix> kernels = {Matrix(f, d, 0)};  // ker t^0
  Matrix pw = Matrix::identity(f, d);
  std::size_t nu = 0;
  while (kernels.back().cols() < d) {
    if (nu >= a.q()) fail(errc::not_nilpotent, "action power fails to vanish at the group order");
    pw = pw * t;
    kernels.push_back(mat_nullspace(pw));
    ++nu;
  }

  // chains[c] = top vector; heights[c] = chain length
  std::vector<Matrix> tops;
  std::vector<std::size_t> heights;
  for (std::size_t s = nu; s >= 1; --s) {
    std::vector<Matrix> acc;
    const Matrix& below = kernels[s - 1];
    for (std::size_t c = 0; c < below.cols(); ++c) acc.push_back(below.col(c).transpose());
    for (std::size_t c = 0; c < tops.size(); ++c) {
      Matrix dropped = tops[c];
      for (std::size_t k = s; k < heights[c]; ++k) dropped = t * dropped;
      acc.push_back(dropped.transpose());
    }
    std::size_t rank = mat_rank(detail::vec_rows(f, acc, d));
    const Matrix& level = kernels[s];
    for (std::size_t c = 0; c < level.cols(); ++c) {
      acc.push_back(level.col(c).transpose());
      std::size_t r = mat_rank(detail::vec_rows(f, acc, d));
      if (r > rank) {
        rank = r;
        tops.push_back(level.col(c));
        heights.push_back(s);
      } else {
        acc.pop_back();
      }
    }
  }

  // ascending blocks; the scan above produces descending heights, so a
  // stable reverse-by-bucket keeps ties in a fixed order
  std::vector<std::size_t> order(tops.size());
  for (std::size_t c = 0; c < order.size(); ++c) order[c] = c;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return heights[x] < heights[y]; });

  Matrix p(f, d, d);
  std::vector<unsigned> sizes;
  std::vector<std::size_t> offsets;
  std::size_t col = 0;
  for (std::size_t c : order) {
    offsets.push_back(col);
    sizes.push_back(static_cast<unsigned>(heights[c]));
    Matrix v = tops[c];
    for (std::size_t k = 0; k < heights[c]; ++k) {
      for (std::size_t r = 0; r < d; ++r) p.at(r, col) = v.at(r, 0);
      ++col;
      v = t * v;
    }
  }
  Matrix p_inv = d == 0 ? p : mat_inverse(p);
  return JordanBasis{a, std::move(p), std::move(p_inv), Decomposition(sizes),
                     std::move(offsets)};
}

/// Whether the indecomposable [size] generates a faithful tensor
/// functor: two independent criteria, asserted equal. (1) the unit
/// object is a summand of [size]-dual (x) [size]; (2) the dimension is
/// prime to p (sizes prime to p automatically lie below q = p^n). The
/// verdict does not depend on the category mode.
inline bool tensor_faithful(const Module& a, RingMode = RingMode::module_cat) {
  if (a.q() == 1) return true;  // everything is stably zero, the functor is trivially faithful
  Decomposition dec = mod_decompose(a);
  bool by_unit = mod_decompose(mod_tensor(mod_dual(a), a)).contains(1);
  bool by_dim = false;
  for (unsigned b : dec.blocks())
    if (b % a.field().p() != 0) by_dim = true;
  if (by_unit != by_dim)
    fail(errc::criteria_disagree, "faithfulness criteria returned different verdicts");
  return by_unit;
}

struct RadComponent {
  std::size_t i = 0, j = 0;            // source and target block indices
  unsigned size_source = 0, size_target = 0;
  std::size_t rank = 0;
  bool allowed = false;                // component consistent with membership
};

struct RadReport {
  bool member = false;
  std::vector<RadComponent> components;
};

namespace detail {

/// Block-component membership test shared by the radical and its
/// tensor-closure: a component may be invertible only between blocks of
/// equal size (and, when gated, only faithful ones). Stable mode drops
/// every component into or out of a projective block first.
inline RadReport radical_report(const ModuleHom& f, RingMode mode, bool gate_faithful) {
  JordanBasis js = jordan_basis(f.source());
  JordanBasis jt = jordan_basis(f.target());
  const FieldSpec& ff = f.source().field();
  const unsigned q = f.source().q();
  Matrix c = jt.p_inv * f.matrix() * js.p;

  std::map<unsigned, bool> faithful;
  auto block_faithful = [&](unsigned s) {
    auto it = faithful.find(s);
    if (it == faithful.end())
      it = faithful.emplace(s, tensor_faithful(mod_indec(ff, q, s), mode)).first;
    return it->second;
  };

  RadReport rep;
  rep.member = true;
  const bool stable = mode == RingMode::stable_cat;
  for (std::size_t i = 0; i < js.blocks.count(); ++i) {
    for (std::size_t j = 0; j < jt.blocks.count(); ++j) {
      const unsigned si = js.blocks.blocks()[i], sj = jt.blocks.blocks()[j];
      if (stable && (si == q || sj == q)) continue;
      Matrix comp(ff, sj, si);
      for (std::size_t r = 0; r < sj; ++r)
        for (std::size_t cc = 0; cc < si; ++cc)
          comp.at(r, cc) = c.at(jt.offsets[j] + r, js.offsets[i] + cc);
      std::size_t rank = mat_rank(comp);
      bool restricted = si == sj && (!gate_faithful || block_faithful(si));
      bool allowed = !restricted || rank < si;
      rep.member = rep.member && allowed;
      rep.components.push_back({i, j, si, sj, rank, allowed});
    }
  }
  return rep;
}

}  // namespace detail

/// Radical membership: no component between equal-size blocks is
/// invertible. Well-defined on stable classes: projective-factoring
/// endomorphisms of a non-projective block are never invertible, and
/// non-invertibles in the local endomorphism ring form an ideal.
inline RadReport rad_report(const ModuleHom& f, RingMode mode = RingMode::module_cat) {
  return detail::radical_report(f, mode, false);
}

inline bool rad_member(const ModuleHom& f, RingMode mode = RingMode::module_cat) {
  return rad_report(f, mode).member;
}

/// Tensor-closure membership: like the radical, but components between
/// non-faithful blocks are unrestricted.
inline RadReport ihat_report(const ModuleHom& f, RingMode mode = RingMode::module_cat) {
  return detail::radical_report(f, mode, true);
}

inline bool ihat_member(const ModuleHom& f, RingMode mode = RingMode::module_cat) {
  return ihat_report(f, mode).member;
}

/// The equivariant embedding [i] -> [i+1] shifting basis vectors up one
/// step.
inline ModuleHom hom_embed(const FieldSpec& field, unsigned q, unsigned i) {
  if (i < 1 || i + 1 > q) fail(errc::out_of_range, "embedding needs 1 <= i < q");
  Matrix m(field, i + 1, i);
  for (unsigned a = 0; a < i; ++a) m.at(a + 1, a) = 1;
  return ModuleHom(mod_indec(field, q, i), mod_indec(field, q, i + 1), std::move(m));
}

/// The equivariant truncation [i] -> [i-1] dropping the last basis
/// vector.
inline ModuleHom hom_truncate(const FieldSpec& field, unsigned q, unsigned i) {
  if (i < 2 || i > q) fail(errc::out_of_range, "truncation needs 2 <= i <= q");
  Matrix m(field, i - 1, i);
  for (unsigned a = 0; a + 1 < i; ++a) m.at(a, a) = 1;
  return ModuleHom(mod_indec(field, q, i), mod_indec(field, q, i - 1), std::move(m));
}

struct RadTensorWitness {
  ModuleHom f;  // stably radical morphism
  Module x;     // tensoring with x pushes f out of the radical
};

/// Search for a failure of the radical to be a tensor ideal. For
/// q = p^n with n >= 2 the unit of the [p]-duality adjunction is such a
/// failure, and both halves of that claim are re-checked here. For
/// n <= 1 every generator morphism stays radical after tensoring with
/// every indecomposable, which is verified exhaustively; any escape
/// found would be returned as a witness.
inline std::optional<RadTensorWitness> rad_tensor_witness(const FieldSpec& field, unsigned q) {
  if (q > 9) fail(errc::budget_exceeded, "witness search is limited to q <= 9");
  const unsigned p = field.p();
  const unsigned n = detail::exponent_of(q, p);

  if (n >= 2) {
    Module m = mod_indec(field, q, p);
    auto [eta, eps] = unit_counit(m);
    Module x = mod_indec(field, q, p);
    ModuleHom tensored = hom_tensor(eta, hom_identity(x));
    if (!rad_member(eta, RingMode::stable_cat))
      fail(errc::criteria_disagree, "adjunction unit must be radical");
    if (rad_member(tensored, RingMode::stable_cat))
      fail(errc::criteria_disagree, "tensored adjunction unit must escape the radical");
    return RadTensorWitness{eta, x};
  }

  std::vector<ModuleHom> gens;
  for (unsigned i = 1; i + 1 <= q; ++i) gens.push_back(hom_embed(field, q, i));
  for (unsigned i = 2; i <= q; ++i) gens.push_back(hom_truncate(field, q, i));
  for (const ModuleHom& g : gens) {
    for (unsigned j = 1; j < q; ++j) {
      Module x = mod_indec(field, q, j);
      ModuleHom tensored = hom_tensor(g, hom_identity(x));
      if (!rad_member(tensored, RingMode::stable_cat)) return RadTensorWitness{g, x};
    }
  }
  return std::nullopt;
}

}  // namespace stabring
