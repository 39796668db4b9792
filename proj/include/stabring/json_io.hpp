#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "stabring/classify.hpp"
#include "stabring/ffield.hpp"
#include "stabring/modrep.hpp"
#include "stabring/radical.hpp"
#include "stabring/ringobj.hpp"
#include "stabring/verify.hpp"

namespace stabring {

using json = nlohmann::json;

// ---- writers -------------------------------------------------------------
// Scalars are written as little-endian coefficient arrays over the prime
// subfield, so output is stable across extension degrees.

inline json scalar_to_json(const FieldSpec& f, std::uint32_t a) {
  if (f.m() == 1) return json(a);
  json out = json::array();
  for (unsigned c : f.coeffs(a)) out.push_back(c);
  return out;
}

inline json field_to_json(const FieldSpec& f) {
  json out;
  out["p"] = f.p();
  out["m"] = f.m();
  json mod = json::array();
  if (f.m() > 1)
    for (unsigned c : f.modulus()) mod.push_back(c);
  out["modulus"] = mod;
  return out;
}

inline json matrix_to_json(const Matrix& a) {
  json rows = json::array();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < a.cols(); ++c) row.push_back(scalar_to_json(a.field(), a.at(r, c)));
    rows.push_back(std::move(row));
  }
  json out;
  out["rows"] = a.rows();
  out["cols"] = a.cols();
  out["entries"] = std::move(rows);
  return out;
}

inline json decomposition_to_json(const Decomposition& d) {
  json out = json::array();
  for (unsigned b : d.blocks()) out.push_back(b);
  return out;
}

inline json module_to_json(const Module& a) {
  json out;
  out["field"] = field_to_json(a.field());
  out["q"] = a.q();
  out["t"] = matrix_to_json(a.t());
  return out;
}

inline json hom_to_json(const ModuleHom& h) {
  json out;
  out["source"] = module_to_json(h.source());
  out["target"] = module_to_json(h.target());
  out["matrix"] = matrix_to_json(h.matrix());
  return out;
}

inline std::string mode_name(RingMode mode) {
  return mode == RingMode::module_cat ? "module" : "stable";
}

inline json ring_to_json(const RingObject& r) {
  json out;
  out["module"] = module_to_json(r.carrier());
  out["mu"] = matrix_to_json(r.mu().matrix());
  out["unit"] = matrix_to_json(r.unit().matrix());
  out["mode"] = mode_name(r.mode());
  return out;
}

inline json ring_check_to_json(const RingCheckReport& rep) {
  json out;
  out["equivariant"] = rep.equivariant;
  out["associative"] = rep.associative;
  out["commutative"] = rep.commutative;
  out["unital"] = rep.unital;
  return out;
}

inline json sep_result_to_json(const SepResult& res) {
  json out;
  out["separable"] = res.separable;
  out["rank_system"] = res.rank_system;
  out["rank_augmented"] = res.rank_augmented;
  if (res.certificate) {
    json cert;
    cert["sigma"] = matrix_to_json(res.certificate->sigma.matrix());
    cert["mode"] = mode_name(res.certificate->mode);
    json slack = json::array();
    for (const ModuleHom& h : res.certificate->slack) slack.push_back(matrix_to_json(h.matrix()));
    cert["slack"] = std::move(slack);
    out["certificate"] = std::move(cert);
  } else {
    out["certificate"] = nullptr;
  }
  return out;
}

inline json rad_report_to_json(const RadReport& rep) {
  json out;
  out["member"] = rep.member;
  json blocks = json::array();
  for (const auto& c : rep.components) {
    json b;
    b["i"] = c.i;
    b["j"] = c.j;
    b["size_source"] = c.size_source;
    b["size_target"] = c.size_target;
    b["rank"] = c.rank;
    b["allowed"] = c.allowed;
    blocks.push_back(std::move(b));
  }
  out["blocks"] = std::move(blocks);
  return out;
}

inline json classification_to_json(const ClassificationReport& rep) {
  json out;
  out["searched"] = decomposition_to_json(rep.searched);
  out["mode"] = mode_name(rep.mode);
  json counts;
  counts["units"] = rep.counts.units;
  counts["candidates"] = rep.counts.candidates;
  counts["commutative"] = rep.counts.commutative;
  counts["associative"] = rep.counts.associative;
  counts["separable"] = rep.counts.separable;
  out["counts"] = std::move(counts);
  json classes = json::array();
  for (const auto& cls : rep.classes) {
    json c;
    c["ring"] = ring_to_json(cls.ring);
    json cert;
    cert["sigma"] = matrix_to_json(cls.certificate.sigma.matrix());
    cert["mode"] = mode_name(cls.certificate.mode);
    c["certificate"] = std::move(cert);
    c["idempotents"] = cls.idempotents;
    if (cls.catalog_match.empty())
      c["catalog_match"] = nullptr;
    else
      c["catalog_match"] = cls.catalog_match;
    classes.push_back(std::move(c));
  }
  out["classes"] = std::move(classes);
  return out;
}

inline json suite_to_json(const SuiteReport& suite) {
  json out;
  out["passed"] = suite.passed;
  out["notes"] = suite.notes;
  json reports = json::array();
  for (const auto& rep : suite.reports) reports.push_back(classification_to_json(rep));
  out["reports"] = std::move(reports);
  return out;
}

inline json criterion_to_json(const CriterionResult& res) {
  json out;
  out["number"] = res.number;
  out["name"] = res.name;
  out["passed"] = res.passed;
  out["detail"] = res.detail;
  out["seconds"] = res.seconds;
  return out;
}

// ---- readers -------------------------------------------------------------
// Every reader rejects malformed input with a parse error; scalar entries
// accept a bare integer over a prime field as a convenience.

namespace detail {

inline const json& json_get(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    fail(errc::parse_error, std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::uint64_t json_uint(const json& j, const char* key) {
  const json& v = json_get(j, key);
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0))
    fail(errc::parse_error, std::string(key) + " must be a non-negative integer");
  return v.get<std::uint64_t>();
}

}  // namespace detail

inline std::uint32_t scalar_from_json(const FieldSpec& f, const json& j) {
  if (j.is_number_integer()) {
    if (f.m() != 1) fail(errc::parse_error, "bare scalar over an extension field");
    if (!j.is_number_unsigned() && j.get<std::int64_t>() < 0)
      fail(errc::parse_error, "scalar out of range");
    std::uint64_t v = j.get<std::uint64_t>();
    if (v >= f.p()) fail(errc::parse_error, "scalar out of range");
    return static_cast<std::uint32_t>(v);
  }
  if (!j.is_array() || j.size() > f.m()) fail(errc::parse_error, "bad scalar coefficient array");
  std::vector<long long> coeffs;
  for (const auto& c : j) {
    if (!c.is_number_integer()) fail(errc::parse_error, "scalar coefficient must be an integer");
    coeffs.push_back(c.get<long long>());
  }
  return f.from_coeffs(coeffs);
}

inline FieldSpec field_from_json(const json& j) {
  auto p = static_cast<unsigned>(detail::json_uint(j, "p"));
  auto m = static_cast<unsigned>(detail::json_uint(j, "m"));
  std::vector<unsigned> modulus;
  if (j.contains("modulus") && j.at("modulus").is_array())
    for (const auto& c : j.at("modulus")) {
      if (!c.is_number_integer() || (!c.is_number_unsigned() && c.get<std::int64_t>() < 0))
        fail(errc::parse_error, "modulus coefficient must be a non-negative integer");
      modulus.push_back(c.get<std::uint32_t>());
    }
  return ff_make(p, m, modulus);
}

inline Matrix matrix_from_json(const FieldSpec& f, const json& j) {
  auto rows = static_cast<std::size_t>(detail::json_uint(j, "rows"));
  auto cols = static_cast<std::size_t>(detail::json_uint(j, "cols"));
  const json& entries = detail::json_get(j, "entries");
  if (!entries.is_array() || entries.size() != rows)
    fail(errc::parse_error, "matrix entries must have one array per row");
  Matrix out(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = entries.at(r);
    if (!row.is_array() || row.size() != cols) fail(errc::parse_error, "bad matrix row length");
    for (std::size_t c = 0; c < cols; ++c) out.at(r, c) = scalar_from_json(f, row.at(c));
  }
  return out;
}

inline Module module_from_json(const json& j) {
  FieldSpec f = field_from_json(detail::json_get(j, "field"));
  auto q = static_cast<unsigned>(detail::json_uint(j, "q"));
  Matrix t = matrix_from_json(f, detail::json_get(j, "t"));
  return Module(f, q, std::move(t));
}

inline ModuleHom hom_from_json(const json& j) {
  Module src = module_from_json(detail::json_get(j, "source"));
  Module tgt = module_from_json(detail::json_get(j, "target"));
  Matrix m = matrix_from_json(src.field(), detail::json_get(j, "matrix"));
  return ModuleHom(src, tgt, std::move(m));
}

inline RingMode mode_from_json(const json& j) {
  if (!j.is_string()) fail(errc::parse_error, "mode must be a string");
  std::string s = j.get<std::string>();
  if (s == "module") return RingMode::module_cat;
  if (s == "stable") return RingMode::stable_cat;
  fail(errc::parse_error, "mode must be 'module' or 'stable'");
}

inline RingObject ring_from_json(const json& j) {
  Module a = module_from_json(detail::json_get(j, "module"));
  Matrix mu = matrix_from_json(a.field(), detail::json_get(j, "mu"));
  Matrix unit = matrix_from_json(a.field(), detail::json_get(j, "unit"));
  RingMode mode = mode_from_json(detail::json_get(j, "mode"));
  return RingObject::from_parts(a, std::move(mu), std::move(unit), mode);
}

inline json parse_json_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(errc::parse_error, "malformed JSON input");
  return j;
}

}  // namespace stabring
