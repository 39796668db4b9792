#pragma once

// Stable category layer: the ideal of maps factoring through projectives,
// stable Hom spaces, equality of stable morphisms, and stable isomorphism.
// Stable morphisms are always represented by honest module homs; quotients
// are decided by rank tests against a PHom basis.

#include <cstdint>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "stabring/ffield.hpp"
#include "stabring/modrep.hpp"

namespace stabring {

namespace detail {

inline Matrix vec_rows(const FieldSpec& f, const std::vector<Matrix>& mats, std::size_t width) {
  Matrix rows(f, mats.size(), width);
  for (std::size_t k = 0; k < mats.size(); ++k)
    for (std::size_t e = 0; e < width; ++e) rows.at(k, e) = mats[k].data()[e];
  return rows;
}

}  // namespace detail

/// Basis of the maps A -> B factoring through a projective module. One free
/// block [q] spans the ideal, so the span of all composites A -> [q] -> B
/// is the whole of PHom; returned row-reduced, hence deterministic.
inline std::vector<ModuleHom> phom_basis(const Module& a, const Module& b) {
  detail::require_same_ambient(a, b);
  const FieldSpec& f = a.field();
  Module free_block = mod_indec(f, a.q(), a.q());
  std::vector<ModuleHom> in = hom_basis(a, free_block);
  std::vector<ModuleHom> out = hom_basis(free_block, b);
  std::vector<Matrix> products;
  products.reserve(in.size() * out.size());
  for (const auto& h : in)
    for (const auto& g : out) products.push_back(g.matrix() * h.matrix());

  const std::size_t width = a.dim() * b.dim();
  Matrix rows = detail::vec_rows(f, products, width);
  Matrix red = mat_rref(rows);
  std::vector<ModuleHom> basis;
  for (std::size_t r = 0; r < red.rows(); ++r) {
    bool nonzero = false;
    for (std::size_t e = 0; e < width; ++e) nonzero = nonzero || red.at(r, e) != 0;
    if (!nonzero) break;
    Matrix m(f, b.dim(), a.dim());
    for (std::size_t e = 0; e < width; ++e) m.data()[e] = red.at(r, e);
    basis.emplace_back(a, b, std::move(m));
  }
  return basis;
}

/// decompose(A) with the projective blocks dropped.
inline Decomposition projective_free_part(const Module& a) {
  return mod_decompose(a).without_size(a.q());
}

inline std::size_t stable_hom_dim(const Module& a, const Module& b) {
  return hom_basis(a, b).size() - phom_basis(a, b).size();
}

/// Equality of the stable morphisms represented by f and g: their
/// difference must lie in the span of PHom. Maps from or to a projective
/// module are stably zero without any rank work.
inline bool stable_equal(const ModuleHom& f, const ModuleHom& g) {
  if (f.source() != g.source() || f.target() != g.target())
    fail(errc::shape_mismatch, "stable comparison needs a common source and target");
  if (f.matrix() == g.matrix()) return true;
  if (mod_is_projective(f.source()) || mod_is_projective(f.target())) return true;

  std::vector<ModuleHom> ph = phom_basis(f.source(), f.target());
  const std::size_t width = f.source().dim() * f.target().dim();
  std::vector<Matrix> mats;
  mats.reserve(ph.size() + 1);
  for (const auto& h : ph) mats.push_back(h.matrix());
  Matrix base = detail::vec_rows(f.matrix().field(), mats, width);
  mats.push_back(f.matrix() - g.matrix());
  Matrix extended = detail::vec_rows(f.matrix().field(), mats, width);
  return mat_rank(extended) == mat_rank(base);
}

/// Isomorphism in the stable category: equal projective-free parts.
inline bool stable_iso(const Module& a, const Module& b) {
  detail::require_same_ambient(a, b);
  return projective_free_part(a) == projective_free_part(b);
}

/// Memoizing wrapper for repeated PHom queries in one ambient category.
/// Internally synchronized; results are byte-identical to fresh ones.
class StableContext {
public:
  StableContext(FieldSpec field, unsigned q) : field_(std::move(field)), q_(q) {}

  const FieldSpec& field() const { return field_; }
  unsigned q() const { return q_; }

  const std::vector<ModuleHom>& phom(const Module& a, const Module& b) {
    if (a.field() != field_) fail(errc::field_mismatch, "module outside this context's field");
    if (a.q() != q_) fail(errc::order_mismatch, "module outside this context's group order");
    detail::require_same_ambient(a, b);
    Key key = make_key(a, b);
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(std::move(key), phom_basis(a, b)).first;
    return it->second;
  }

  std::size_t stable_hom_dim(const Module& a, const Module& b) {
    return hom_basis(a, b).size() - phom(a, b).size();
  }

private:
  using Key = std::vector<std::uint64_t>;

  static Key make_key(const Module& a, const Module& b) {
    Key k;
    k.reserve(a.dim() * a.dim() + b.dim() * b.dim() + 2);
    k.push_back(a.dim());
    for (auto v : a.t().data()) k.push_back(v);
    k.push_back(b.dim());
    for (auto v : b.t().data()) k.push_back(v);
    return k;
  }

  FieldSpec field_;
  unsigned q_;
  std::mutex mu_;
  std::map<Key, std::vector<ModuleHom>> cache_;
};

}  // namespace stabring
