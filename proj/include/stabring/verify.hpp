#pragma once

#include <chrono>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "stabring/classify.hpp"
#include "stabring/ffield.hpp"
#include "stabring/modrep.hpp"
#include "stabring/radical.hpp"
#include "stabring/ringobj.hpp"
#include "stabring/stable.hpp"

namespace stabring {

struct CriterionResult {
  int number = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double cap_seconds = 0.0;
};

namespace detail {

inline CriterionResult run_criterion(int number, std::string name, double cap,
                                     const std::function<std::pair<bool, std::string>()>& body) {
  CriterionResult res;
  res.number = number;
  res.name = std::move(name);
  res.cap_seconds = cap;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    auto [ok, detail] = body();
    res.passed = ok;
    res.detail = std::move(detail);
  } catch (const error& e) {
    res.passed = false;
    res.detail = std::string("error: ") + e.what();
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (res.seconds > cap) {
    res.passed = false;
    res.detail += " [over time cap]";
  }
  return res;
}

struct OrderCase {
  FieldSpec field;
  unsigned q;
};

inline std::vector<OrderCase> small_orders() {
  const FieldSpec f2 = ff_make(2, 1, {}), f3 = ff_make(3, 1, {});
  return {{f2, 2}, {f3, 3}, {f2, 4}, {f2, 8}, {f3, 9}};
}

}  // namespace detail

/// 1. The closed tensor formula at prime order agrees with the
/// projective-free part of the computed decomposition.
inline CriterionResult criterion_tensor_formula() {
  return detail::run_criterion(1, "tensor-formula", 1.0, []() -> std::pair<bool, std::string> {
    std::size_t cases = 0;
    for (unsigned p : {2u, 3u, 5u, 7u}) {
      FieldSpec f = ff_make(p, 1, {});
      for (unsigned i = 1; i < p; ++i)
        for (unsigned j = i; j < p; ++j) {
          Decomposition formula = tensor_formula_cp(p, i, j);
          Decomposition computed =
              mod_decompose(mod_tensor(mod_indec(f, p, i), mod_indec(f, p, j))).without_size(p);
          if (!(formula == computed))
            return {false, "mismatch at p=" + std::to_string(p) + " i=" + std::to_string(i) +
                               " j=" + std::to_string(j)};
          ++cases;
        }
    }
    return {true, std::to_string(cases) + " block pairs agree"};
  });
}

/// 2. The (p-1)-st symmetric power of every middle block is projective,
/// and the symmetrizing-idempotent route agrees with the monomial one.
inline CriterionResult criterion_sympow_projectivity() {
  return detail::run_criterion(2, "sympow-projectivity", 30.0, []() -> std::pair<bool, std::string> {
    std::size_t cases = 0;
    for (unsigned p : {3u, 5u, 7u}) {
      FieldSpec f = ff_make(p, 1, {});
      for (unsigned i = 2; i < p; ++i) {
        Decomposition dec = mod_decompose(mod_sympow(mod_indec(f, p, i), p - 1));
        for (unsigned b : dec.blocks())
          if (b != p)
            return {false, "non-projective block " + std::to_string(b) + " in S^" +
                               std::to_string(p - 1) + "[" + std::to_string(i) + "] at p=" +
                               std::to_string(p)};
        ++cases;
      }
    }
    for (unsigned p : {3u, 5u}) {
      FieldSpec f = ff_make(p, 1, {});
      for (unsigned i = 2; i < p; ++i) {
        Decomposition via_idem = sym_idempotent_image(i, p);
        Decomposition via_mono = mod_decompose(mod_sympow(mod_indec(f, p, i), p - 1));
        if (!(via_idem == via_mono))
          return {false, "idempotent image disagrees at p=" + std::to_string(p) +
                             " i=" + std::to_string(i)};
        ++cases;
      }
    }
    return {true, std::to_string(cases) + " symmetric powers verified"};
  });
}

/// 3. The projective-hom dimension formula max(0, i+j-q) matches the
/// computed basis at every small order.
inline CriterionResult criterion_phom_closed_form() {
  return detail::run_criterion(3, "phom-closed-form", 5.0, []() -> std::pair<bool, std::string> {
    std::size_t cases = 0;
    for (const auto& [field, q] : detail::small_orders()) {
      for (unsigned i = 1; i <= q; ++i)
        for (unsigned j = 1; j <= q; ++j) {
          std::size_t expected = i + j > q ? i + j - q : 0;
          std::size_t got = phom_basis(mod_indec(field, q, i), mod_indec(field, q, j)).size();
          if (got != expected)
            return {false, "dim mismatch at q=" + std::to_string(q) + " i=" + std::to_string(i) +
                               " j=" + std::to_string(j)};
          ++cases;
        }
    }
    return {true, std::to_string(cases) + " hom spaces match the formula"};
  });
}

/// 4. The radical is a tensor ideal exactly when the group order is not
/// divisible by p^2: no witness at prime order, a verified witness above.
inline CriterionResult criterion_dichotomy() {
  return detail::run_criterion(4, "dichotomy", 10.0, []() -> std::pair<bool, std::string> {
    const FieldSpec f2 = ff_make(2, 1, {}), f3 = ff_make(3, 1, {}), f5 = ff_make(5, 1, {});
    const std::vector<detail::OrderCase> prime = {{f2, 2}, {f3, 3}, {f5, 5}};
    const std::vector<detail::OrderCase> square = {{f2, 4}, {f2, 8}, {f3, 9}};
    for (const auto& [field, q] : prime)
      if (rad_tensor_witness(field, q))
        return {false, "unexpected witness at q=" + std::to_string(q)};
    for (const auto& [field, q] : square) {
      auto w = rad_tensor_witness(field, q);
      if (!w) return {false, "no witness at q=" + std::to_string(q)};
      if (!rad_member(w->f, RingMode::stable_cat))
        return {false, "witness map not radical at q=" + std::to_string(q)};
      if (rad_member(hom_tensor(w->f, hom_identity(w->x)), RingMode::stable_cat))
        return {false, "witness map stays radical after tensoring at q=" + std::to_string(q)};
    }
    return {true, "no witness at orders 2,3,5; verified witnesses at 4,8,9"};
  });
}

/// 5. The tensor-closure of the radical absorbs tensoring: embeddings,
/// truncations, and identities of non-faithful blocks stay inside after
/// tensoring with every block.
inline CriterionResult criterion_tensor_ideal() {
  return detail::run_criterion(5, "tensor-ideal", 30.0, []() -> std::pair<bool, std::string> {
    const FieldSpec f2 = ff_make(2, 1, {}), f3 = ff_make(3, 1, {});
    const std::vector<detail::OrderCase> orders = {{f3, 3}, {f2, 4}, {f3, 9}};
    std::size_t cases = 0;
    for (const auto& [field, q] : orders) {
      std::vector<ModuleHom> gens;
      for (unsigned i = 1; i < q; ++i) gens.push_back(hom_embed(field, q, i));
      for (unsigned i = 2; i <= q; ++i) gens.push_back(hom_truncate(field, q, i));
      for (unsigned i = field.p(); i <= q; i += field.p())
        gens.push_back(hom_identity(mod_indec(field, q, i)));
      for (RingMode mode : {RingMode::module_cat, RingMode::stable_cat}) {
        for (const auto& g : gens) {
          if (!ihat_member(g, mode)) return {false, "generator escapes the closure"};
          for (unsigned j = 1; j <= q; ++j) {
            if (!ihat_member(hom_tensor(g, hom_identity(mod_indec(field, q, j))), mode))
              return {false, "tensoring escapes at q=" + std::to_string(q) +
                                 " j=" + std::to_string(j)};
            ++cases;
          }
        }
      }
    }
    return {true, std::to_string(cases) + " tensored generators stay inside"};
  });
}

/// 6. Every coset ring passes the axiom check and is separable in both
/// modes, with the diagonal section verifying directly.
inline CriterionResult criterion_perm_separability() {
  return detail::run_criterion(6, "perm-separability", 5.0, []() -> std::pair<bool, std::string> {
    std::size_t cases = 0;
    for (const auto& [field, q] : detail::small_orders()) {
      for (unsigned h = 1; h <= q; h *= field.p()) {
        for (RingMode mode : {RingMode::module_cat, RingMode::stable_cat}) {
          RingObject r = ring_perm(field, q, h, mode);
          if (!ring_check(r).all())
            return {false, "axioms fail at q=" + std::to_string(q) + " h=" + std::to_string(h)};
          if (!sep_solve(r).separable)
            return {false, "not separable at q=" + std::to_string(q) + " h=" + std::to_string(h)};
          const std::size_t d = r.carrier().dim();
          Matrix sigma(field, d * d, d);
          for (std::size_t i = 0; i < d; ++i) sigma.at(i * d + i, i) = 1;
          ModuleHom sec(r.carrier(), mod_tensor(r.carrier(), r.carrier()), std::move(sigma));
          if (!sep_verify(r, sec))
            return {false, "diagonal section fails at q=" + std::to_string(q) +
                               " h=" + std::to_string(h)};
          ++cases;
        }
        if (h == q) break;
      }
    }
    return {true, std::to_string(cases) + " coset rings verified"};
  });
}

/// 7. The exhaustive search finds no ring on the two-dimensional block
/// at order three.
inline CriterionResult criterion_no_ring_on_middle_block() {
  return detail::run_criterion(7, "no-ring-on-middle-block", 60.0,
                               []() -> std::pair<bool, std::string> {
    const FieldSpec f3 = ff_make(3, 1, {});
    ClassificationReport rep = enum_ttrings(mod_indec(f3, 3, 2), RingMode::stable_cat);
    if (!rep.classes.empty())
      return {false, std::to_string(rep.classes.size()) + " unexpected classes"};
    return {true, "0 classes from " + std::to_string(rep.counts.units) + " unit candidates and " +
                      std::to_string(rep.counts.candidates) + " multiplication candidates"};
  });
}

/// 8. The order-four exclusion: no class on any module containing a
/// three-dimensional block, up to total dimension four.
inline CriterionResult criterion_c4_exclusion() {
  return detail::run_criterion(8, "c4-exclusion", 600.0, []() -> std::pair<bool, std::string> {
    SuiteReport suite = verify_c4(ff_make(2, 1, {}), 4);
    if (!suite.passed) {
      std::string msg = "suite failed";
      for (const auto& n : suite.notes) msg += "; " + n;
      return {false, msg};
    }
    return {true, std::to_string(suite.reports.size()) + " modules searched, none carries a class"};
  });
}

/// 9. Prime-order classification at desk scale: the expected classes on
/// one and two trivial blocks, and nothing on the two-dimensional block.
inline CriterionResult criterion_cp_classification() {
  return detail::run_criterion(9, "cp-classification", 600.0, []() -> std::pair<bool, std::string> {
    const FieldSpec f2 = ff_make(2, 1, {}), f3 = ff_make(3, 1, {});
    SuiteReport s2 = verify_cp(2, f2, 2);
    if (!s2.passed) return {false, "GF(2) suite failed"};
    const ClassificationReport* one = nullptr;
    const ClassificationReport* two = nullptr;
    for (const auto& rep : s2.reports) {
      if (rep.searched == Decomposition({1})) one = &rep;
      if (rep.searched == Decomposition({1, 1})) two = &rep;
    }
    if (!one || one->classes.size() != 1 ||
        !ring_iso_search(one->classes[0].ring, ring_perm(f2, 2, 2, RingMode::stable_cat)).isomorphic)
      return {false, "unit object does not carry exactly the trivial class"};
    if (!two || two->classes.size() != 2) return {false, "wrong class count on two trivial blocks"};
    RingObject split = ring_product(ring_perm(f2, 2, 2, RingMode::stable_cat),
                                    ring_perm(f2, 2, 2, RingMode::stable_cat));
    RingObject quad = ring_etale_field(f2, 2, 2, RingMode::stable_cat);
    bool got_split = false, got_quad = false;
    for (const auto& cls : two->classes) {
      got_split = got_split || ring_iso_search(cls.ring, split).isomorphic;
      got_quad = got_quad || ring_iso_search(cls.ring, quad).isomorphic;
    }
    if (!got_split || !got_quad) return {false, "expected split and quadratic classes"};

    SuiteReport s3 = verify_cp(3, f3, 2);
    if (!s3.passed) return {false, "GF(3) suite failed"};
    for (const auto& rep : s3.reports)
      if (rep.searched.contains(2) && !rep.classes.empty())
        return {false, "unexpected class on a module containing the two-dimensional block"};
    return {true, "split and quadratic classes on trivial blocks; nothing elsewhere"};
  });
}

/// 10. Catalog matching at order four: the coset ring is found on the
/// two-dimensional block and matched; unmatched classes are surfaced.
inline CriterionResult criterion_catalog_match() {
  return detail::run_criterion(10, "catalog-match", 600.0, []() -> std::pair<bool, std::string> {
    SuiteReport suite = verify_main(4, ff_make(2, 1, {}), 2);
    if (!suite.passed) {
      std::string msg = "suite failed";
      for (const auto& n : suite.notes) msg += "; " + n;
      return {false, msg};
    }
    bool coset_found = false;
    for (const auto& rep : suite.reports)
      if (rep.searched == Decomposition({2}))
        for (const auto& cls : rep.classes)
          coset_found = coset_found || cls.catalog_match == "perm(h=2)";
    if (!coset_found) return {false, "coset ring missing on the two-dimensional block"};
    std::string msg = "coset ring matched on [2]";
    for (const auto& n : suite.notes) msg += "; finding: " + n;
    return {true, msg};
  });
}

/// 11. No separable commutative graded algebra has odd part, up to
/// total dimension three over GF(2).
inline CriterionResult criterion_graded() {
  return detail::run_criterion(11, "graded-exclusion", 60.0, []() -> std::pair<bool, std::string> {
    const FieldSpec f2 = ff_make(2, 1, {});
    std::size_t survivors = 0;
    for (unsigned d0 = 0; d0 <= 3; ++d0)
      for (unsigned d1 = 0; d0 + d1 <= 3; ++d1) {
        if (d0 + d1 == 0) continue;
        for (const auto& alg : graded_sep_enum(f2, d0, d1)) {
          if (alg.d1 != 0) return {false, "survivor with odd part at d0=" + std::to_string(d0) +
                                              " d1=" + std::to_string(d1)};
          ++survivors;
        }
      }
    return {true, std::to_string(survivors) + " survivors, all purely even"};
  });
}

/// 12. Restriction: every non-projective block whose restriction has a
/// projective summand also restricts with a block of size p-1.
inline CriterionResult criterion_restriction() {
  return detail::run_criterion(12, "restriction", 1.0, []() -> std::pair<bool, std::string> {
    std::size_t cases = 0;
    for (unsigned p : {2u, 3u}) {
      FieldSpec f = ff_make(p, 1, {});
      unsigned q = p * p;
      for (unsigned r = 1; r < q; ++r) {
        Decomposition dec = mod_decompose(mod_restrict(mod_indec(f, q, r), 1));
        if (dec.contains(p) && !dec.contains(p - 1))
          return {false, "block " + std::to_string(r) + " at p=" + std::to_string(p) +
                             " restricts without a size-" + std::to_string(p - 1) + " block"};
        ++cases;
      }
    }
    return {true, std::to_string(cases) + " restrictions verified"};
  });
}

/// 13. Base change to GF(4) preserves hom dimensions at order four.
inline CriterionResult criterion_base_change() {
  return detail::run_criterion(13, "base-change", 1.0, []() -> std::pair<bool, std::string> {
    const FieldSpec f2 = ff_make(2, 1, {});
    const FieldSpec f4 = ff_make(2, 2, {1, 1, 1});
    std::size_t cases = 0;
    for (unsigned i = 1; i <= 4; ++i)
      for (unsigned j = 1; j <= 4; ++j) {
        Module a = mod_indec(f2, 4, i), b = mod_indec(f2, 4, j);
        std::size_t base = hom_basis(a, b).size();
        std::size_t ext = hom_basis(mod_extend(a, f4), mod_extend(b, f4)).size();
        if (base != ext)
          return {false, "hom dimension changes at i=" + std::to_string(i) +
                             " j=" + std::to_string(j)};
        ++cases;
      }
    return {true, std::to_string(cases) + " hom dimensions preserved"};
  });
}

inline std::vector<CriterionResult> run_all_criteria() {
  return {criterion_tensor_formula(),    criterion_sympow_projectivity(),
          criterion_phom_closed_form(),  criterion_dichotomy(),
          criterion_tensor_ideal(),      criterion_perm_separability(),
          criterion_no_ring_on_middle_block(), criterion_c4_exclusion(),
          criterion_cp_classification(), criterion_catalog_match(),
          criterion_graded(),            criterion_restriction(),
          criterion_base_change()};
}

/// Named verification suites for the command line; "all" is the CI
/// entry point covering every criterion.
inline std::vector<CriterionResult> verify_suite(const std::string& suite) {
  if (suite == "all") return run_all_criteria();
  if (suite == "formula") return {criterion_tensor_formula()};
  if (suite == "almkvist-fossum") return {criterion_sympow_projectivity()};
  if (suite == "dichotomy") return {criterion_dichotomy()};
  if (suite == "cp") return {criterion_cp_classification()};
  if (suite == "c4") return {criterion_c4_exclusion()};
  if (suite == "main") return {criterion_catalog_match()};
  if (suite == "super") return {criterion_graded()};
  fail(errc::unknown_command, "unknown verification suite: " + suite);
}

}  // namespace stabring
