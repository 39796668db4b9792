#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stabring/json_io.hpp"

namespace stabring {

// Exit codes shared by every subcommand.
inline constexpr int exit_ok = 0;
inline constexpr int exit_verification_failed = 1;
inline constexpr int exit_budget_exceeded = 2;
inline constexpr int exit_input_error = 3;

namespace detail {

inline int exit_code_of(const error& e) {
  switch (e.kind()) {
    case errc::budget_exceeded:
      return exit_budget_exceeded;
    case errc::criteria_disagree:
      return exit_verification_failed;
    default:
      return exit_input_error;
  }
}

// Flag values shared across subcommands; each subcommand registers only
// the flags it honors, so anything else is rejected at parse time.
struct CliFlags {
  unsigned p = 0, n = 0, q = 0;
  unsigned i = 0, j = 0, m = 0;
  std::uint64_t field_size = 0;
  std::string modulus_text;
  std::string mode_text = "module";
  unsigned dim_bound = 0;
  std::uint64_t budget = 0;
  unsigned jobs = 1;
  std::string in_path, inline_text, out_path, suite;
};

struct GroupSetup {
  unsigned p = 0, n = 0, q = 0;
};

inline GroupSetup resolve_group(const CliFlags& fl) {
  if (fl.q != 0) {
    if (fl.q < 2) fail(errc::out_of_range, "--q must be at least 2");
    unsigned p = 2;
    while (fl.q % p != 0) ++p;
    unsigned n = 0, v = fl.q;
    while (v % p == 0) {
      v /= p;
      ++n;
    }
    if (v != 1) fail(errc::out_of_range, "--q must be a prime power");
    if (fl.p != 0 && fl.p != p) fail(errc::out_of_range, "--p disagrees with --q");
    if (fl.n != 0 && fl.n != n) fail(errc::out_of_range, "--n disagrees with --q");
    return {p, n, fl.q};
  }
  if (fl.p == 0) fail(errc::parse_error, "one of --p or --q is required");
  unsigned n = fl.n == 0 ? 1 : fl.n;
  std::uint64_t q = 1;
  for (unsigned k = 0; k < n; ++k) {
    q *= fl.p;
    if (q > (std::uint64_t(1) << 20)) fail(errc::out_of_range, "group order too large");
  }
  return {fl.p, n, static_cast<unsigned>(q)};
}

inline std::vector<unsigned> parse_comma_list(const std::string& text) {
  std::vector<unsigned> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      fail(errc::parse_error, "expected a comma-separated list of non-negative integers");
    out.push_back(static_cast<unsigned>(std::stoul(part)));
  }
  if (out.empty()) fail(errc::parse_error, "expected a comma-separated list of non-negative integers");
  return out;
}

inline FieldSpec resolve_field(const CliFlags& fl, unsigned p) {
  if (fl.field_size == 0) {
    if (!fl.modulus_text.empty()) fail(errc::parse_error, "--modulus requires --field");
    return ff_make(p, 1, {});
  }
  unsigned m = 0;
  std::uint64_t v = fl.field_size;
  while (v > 1 && v % p == 0) {
    v /= p;
    ++m;
  }
  if (v != 1 || m == 0)
    fail(errc::field_mismatch, "--field must be a power of the group prime " + std::to_string(p));
  if (m == 1) return ff_make(p, 1, {});
  if (!fl.modulus_text.empty()) return ff_make(p, m, parse_comma_list(fl.modulus_text));
  auto pinned = pinned_modulus(p, m);
  if (!pinned)
    fail(errc::parse_error, "no default modulus for degree " + std::to_string(m) + "; pass --modulus");
  return ff_make(p, m, *pinned);
}

inline RingMode resolve_mode(const std::string& text) { return mode_from_json(json(text)); }

inline bool has_input(const CliFlags& fl) { return !fl.in_path.empty() || !fl.inline_text.empty(); }

inline json read_input(const CliFlags& fl) {
  if (!fl.in_path.empty() && !fl.inline_text.empty())
    fail(errc::parse_error, "--in and --json are mutually exclusive");
  if (!fl.in_path.empty()) {
    std::ifstream f(fl.in_path);
    if (!f) fail(errc::parse_error, "cannot open input file: " + fl.in_path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_json_text(ss.str());
  }
  if (fl.inline_text.empty()) fail(errc::parse_error, "an input is required: pass --in or --json");
  return parse_json_text(fl.inline_text);
}

inline SearchBudget resolve_budget(const CliFlags& fl) {
  SearchBudget b;
  if (fl.budget != 0) b.max_candidates = fl.budget;
  if (fl.jobs != 0) b.jobs = fl.jobs;
  if (fl.dim_bound != 0 && fl.dim_bound > b.max_module_dim) b.max_module_dim = fl.dim_bound;
  return b;
}

inline void emit(const json& j, std::ostream& out, const std::string& out_path) {
  std::string text = j.dump(2);
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) fail(errc::parse_error, "cannot open output file: " + out_path);
    f << text << '\n';
  }
  out << text << '\n';
}

inline int run_tensor(const CliFlags& fl, std::ostream& out) {
  GroupSetup g = resolve_group(fl);
  FieldSpec f = resolve_field(fl, g.p);
  if (fl.i == 0 || fl.j == 0) fail(errc::parse_error, "--i and --j are required");
  Decomposition full = mod_decompose(mod_tensor(mod_indec(f, g.q, fl.i), mod_indec(f, g.q, fl.j)));
  json rep;
  rep["full"] = decomposition_to_json(full);
  rep["stable"] = decomposition_to_json(full.without_size(g.q));
  emit(rep, out, fl.out_path);
  return exit_ok;
}

inline int run_decompose(const CliFlags& fl, std::ostream& out) {
  Module a = module_from_json(read_input(fl));
  emit(decomposition_to_json(mod_decompose(a)), out, fl.out_path);
  return exit_ok;
}

inline int emit_module(const Module& a, const CliFlags& fl, std::ostream& out) {
  json rep;
  rep["module"] = module_to_json(a);
  rep["decomposition"] = decomposition_to_json(mod_decompose(a));
  emit(rep, out, fl.out_path);
  return exit_ok;
}

inline int run_restrict(const CliFlags& fl, std::ostream& out) {
  Module a = module_from_json(read_input(fl));
  return emit_module(mod_restrict(a, fl.m), fl, out);
}

inline int run_induce(const CliFlags& fl, std::ostream& out) {
  Module a = module_from_json(read_input(fl));
  if (fl.n == 0) fail(errc::parse_error, "--n (target exponent) is required");
  return emit_module(mod_induce(a, fl.n), fl, out);
}

inline int run_sympow(const CliFlags& fl, std::ostream& out) {
  Module a = module_from_json(read_input(fl));
  return emit_module(mod_sympow(a, fl.m), fl, out);
}

inline int run_hom(const CliFlags& fl, std::ostream& out, bool stable) {
  std::optional<Module> a, b;
  if (has_input(fl)) {
    json in = read_input(fl);
    a = module_from_json(json_get(in, "source"));
    b = module_from_json(json_get(in, "target"));
  } else {
    GroupSetup g = resolve_group(fl);
    FieldSpec f = resolve_field(fl, g.p);
    if (fl.i == 0 || fl.j == 0) fail(errc::parse_error, "--i and --j are required without --in");
    a = mod_indec(f, g.q, fl.i);
    b = mod_indec(f, g.q, fl.j);
  }
  json rep;
  rep["dim"] = stable ? stable_hom_dim(*a, *b) : hom_basis(*a, *b).size();
  emit(rep, out, fl.out_path);
  return exit_ok;
}

inline int run_radical(const CliFlags& fl, std::ostream& out, bool ihat) {
  ModuleHom f = hom_from_json(read_input(fl));
  RingMode mode = resolve_mode(fl.mode_text);
  RadReport rep = ihat ? ihat_report(f, mode) : rad_report(f, mode);
  emit(rad_report_to_json(rep), out, fl.out_path);
  return exit_ok;
}

inline int run_faithful(const CliFlags& fl, std::ostream& out) {
  Module a = module_from_json(read_input(fl));
  json rep;
  rep["faithful"] = tensor_faithful(a, resolve_mode(fl.mode_text));
  emit(rep, out, fl.out_path);
  return exit_ok;
}

inline int run_check_ring(const CliFlags& fl, std::ostream& out) {
  RingObject r = ring_from_json(read_input(fl));
  RingCheckReport rep = ring_check(r);
  emit(ring_check_to_json(rep), out, fl.out_path);
  return rep.all() ? exit_ok : exit_verification_failed;
}

inline int run_separable(const CliFlags& fl, std::ostream& out) {
  RingObject r = ring_from_json(read_input(fl));
  if (!ring_check(r).all()) fail(errc::invalid_algebra, "input does not satisfy the ring laws");
  emit(sep_result_to_json(sep_solve(r)), out, fl.out_path);
  return exit_ok;
}

inline int run_classify(const CliFlags& fl, std::ostream& out) {
  RingMode mode = resolve_mode(fl.mode_text);
  SearchBudget budget = resolve_budget(fl);
  if (has_input(fl)) {
    Module a = module_from_json(read_input(fl));
    emit(classification_to_json(enum_ttrings(a, mode, budget)), out, fl.out_path);
    return exit_ok;
  }
  GroupSetup g = resolve_group(fl);
  FieldSpec f = resolve_field(fl, g.p);
  if (fl.dim_bound == 0) fail(errc::parse_error, "--dim-bound is required without --in");
  unsigned max_block = mode == RingMode::stable_cat ? g.q - 1 : g.q;
  json reports = json::array();
  for (const auto& blocks : block_multisets(max_block, fl.dim_bound))
    reports.push_back(
        classification_to_json(enum_ttrings(module_of_blocks(f, g.q, blocks), mode, budget)));
  emit(reports, out, fl.out_path);
  return exit_ok;
}

inline int run_verify(const CliFlags& fl, std::ostream& out) {
  if (fl.q != 0 || fl.p != 0 || fl.field_size != 0) {
    if (fl.suite != "dichotomy")
      fail(errc::parse_error, "--q, --p, and --field apply only to the dichotomy suite");
    GroupSetup g = resolve_group(fl);
    FieldSpec f = resolve_field(fl, g.p);
    auto witness = rad_tensor_witness(f, g.q);
    json rep;
    rep["suite"] = fl.suite;
    rep["q"] = g.q;
    if (witness) {
      json w;
      w["f"] = hom_to_json(witness->f);
      w["x"] = module_to_json(witness->x);
      rep["witness"] = w;
    } else {
      rep["witness"] = nullptr;
    }
    emit(rep, out, fl.out_path);
    return exit_ok;
  }
  std::vector<CriterionResult> results = verify_suite(fl.suite);
  json arr = json::array();
  bool passed = true;
  for (const CriterionResult& r : results) {
    arr.push_back(criterion_to_json(r));
    passed = passed && r.passed;
  }
  emit(arr, out, fl.out_path);
  return passed ? exit_ok : exit_verification_failed;
}

inline void add_group_flags(CLI::App* sub, CliFlags& fl) {
  sub->add_option("--p", fl.p, "group prime");
  sub->add_option("--n", fl.n, "group exponent: the group has order p^n (default 1)");
  sub->add_option("--q", fl.q, "group order p^n given directly");
}

inline void add_field_flags(CLI::App* sub, CliFlags& fl) {
  sub->add_option("--field", fl.field_size,
                  "coefficient field size p^m (default: the prime field)");
  sub->add_option("--modulus", fl.modulus_text,
                  "little-endian modulus coefficients for m > 1, comma separated");
}

inline void add_input_flags(CLI::App* sub, CliFlags& fl) {
  sub->add_option("--in", fl.in_path, "path to a JSON input file");
  sub->add_option("--json", fl.inline_text, "inline JSON input");
}

inline void add_out_flag(CLI::App* sub, CliFlags& fl) {
  sub->add_option("--out", fl.out_path, "also write the JSON output to this file");
}

inline void add_mode_flag(CLI::App* sub, CliFlags& fl) {
  sub->add_option("--mode", fl.mode_text, "category: module or stable (default module)");
}

}  // namespace detail

/// Parse the argument list (without the program name) and run the chosen
/// subcommand, writing one JSON document to `out`. Returns the exit code:
/// 0 success, 1 verification failure, 2 budget exceeded, 3 input error.
inline int cmd_dispatch(std::vector<std::string> args, std::ostream& out) {
  detail::CliFlags fl;
  CLI::App app{"exact module-category and stable-category computations for cyclic p-groups"};
  app.name("stabring");
  app.require_subcommand(1);

  CLI::App* c_tensor = app.add_subcommand("tensor", "tensor two indecomposables and decompose");
  detail::add_group_flags(c_tensor, fl);
  detail::add_field_flags(c_tensor, fl);
  c_tensor->add_option("--i", fl.i, "first block size");
  c_tensor->add_option("--j", fl.j, "second block size");
  detail::add_out_flag(c_tensor, fl);

  CLI::App* c_decompose = app.add_subcommand("decompose", "decompose a module into blocks");
  detail::add_input_flags(c_decompose, fl);
  detail::add_out_flag(c_decompose, fl);

  CLI::App* c_restrict = app.add_subcommand("restrict", "restrict to the subgroup of order p^m");
  detail::add_input_flags(c_restrict, fl);
  c_restrict->add_option("--m", fl.m, "subgroup exponent")->required();
  detail::add_out_flag(c_restrict, fl);

  CLI::App* c_induce = app.add_subcommand("induce", "induce up to the group of order p^n");
  detail::add_input_flags(c_induce, fl);
  c_induce->add_option("--n", fl.n, "target exponent")->required();
  detail::add_out_flag(c_induce, fl);

  CLI::App* c_sympow = app.add_subcommand("sympow", "symmetric power of a module");
  detail::add_input_flags(c_sympow, fl);
  c_sympow->add_option("--m", fl.m, "power")->required();
  detail::add_out_flag(c_sympow, fl);

  CLI::App* c_hom = app.add_subcommand("hom", "dimension of the equivariant Hom space");
  detail::add_group_flags(c_hom, fl);
  detail::add_field_flags(c_hom, fl);
  c_hom->add_option("--i", fl.i, "source block size");
  c_hom->add_option("--j", fl.j, "target block size");
  detail::add_input_flags(c_hom, fl);
  detail::add_out_flag(c_hom, fl);

  CLI::App* c_shom = app.add_subcommand("stable-hom", "dimension of the stable Hom space");
  detail::add_group_flags(c_shom, fl);
  detail::add_field_flags(c_shom, fl);
  c_shom->add_option("--i", fl.i, "source block size");
  c_shom->add_option("--j", fl.j, "target block size");
  detail::add_input_flags(c_shom, fl);
  detail::add_out_flag(c_shom, fl);

  CLI::App* c_radical = app.add_subcommand("radical", "radical membership of a morphism");
  detail::add_input_flags(c_radical, fl);
  detail::add_mode_flag(c_radical, fl);
  detail::add_out_flag(c_radical, fl);

  CLI::App* c_ihat = app.add_subcommand("ihat", "tensor-closure membership of a morphism");
  detail::add_input_flags(c_ihat, fl);
  detail::add_mode_flag(c_ihat, fl);
  detail::add_out_flag(c_ihat, fl);

  CLI::App* c_faithful = app.add_subcommand("faithful", "tensor-faithfulness of a module");
  detail::add_input_flags(c_faithful, fl);
  detail::add_mode_flag(c_faithful, fl);
  detail::add_out_flag(c_faithful, fl);

  CLI::App* c_check = app.add_subcommand("check-ring", "check the ring-object laws");
  detail::add_input_flags(c_check, fl);
  detail::add_out_flag(c_check, fl);

  CLI::App* c_sep = app.add_subcommand("separable", "decide separability of a ring-object");
  detail::add_input_flags(c_sep, fl);
  detail::add_out_flag(c_sep, fl);

  CLI::App* c_classify = app.add_subcommand("classify", "enumerate tt-ring classes");
  detail::add_group_flags(c_classify, fl);
  detail::add_field_flags(c_classify, fl);
  detail::add_input_flags(c_classify, fl);
  detail::add_mode_flag(c_classify, fl);
  c_classify->add_option("--dim-bound", fl.dim_bound, "search every module up to this dimension");
  c_classify->add_option("--budget", fl.budget, "candidate cap before the search refuses");
  c_classify->add_option("--jobs", fl.jobs, "worker threads for the filtering stage");
  detail::add_out_flag(c_classify, fl);

  CLI::App* c_verify = app.add_subcommand("verify", "run a named verification suite");
  c_verify
      ->add_option("--suite", fl.suite,
                   "one of: all, formula, almkvist-fossum, dichotomy, cp, c4, main, super")
      ->required();
  detail::add_group_flags(c_verify, fl);
  detail::add_field_flags(c_verify, fl);
  detail::add_out_flag(c_verify, fl);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    json err;
    err["error"] = std::string(e.what());
    out << err.dump(2) << '\n';
    return exit_input_error;
  }

  try {
    if (c_tensor->parsed()) return detail::run_tensor(fl, out);
    if (c_decompose->parsed()) return detail::run_decompose(fl, out);
    if (c_restrict->parsed()) return detail::run_restrict(fl, out);
    if (c_induce->parsed()) return detail::run_induce(fl, out);
    if (c_sympow->parsed()) return detail::run_sympow(fl, out);
    if (c_hom->parsed()) return detail::run_hom(fl, out, false);
    if (c_shom->parsed()) return detail::run_hom(fl, out, true);
    if (c_radical->parsed()) return detail::run_radical(fl, out, false);
    if (c_ihat->parsed()) return detail::run_radical(fl, out, true);
    if (c_faithful->parsed()) return detail::run_faithful(fl, out);
    if (c_check->parsed()) return detail::run_check_ring(fl, out);
    if (c_sep->parsed()) return detail::run_separable(fl, out);
    if (c_classify->parsed()) return detail::run_classify(fl, out);
    if (c_verify->parsed()) return detail::run_verify(fl, out);
    fail(errc::unknown_command, "no subcommand given");
  } catch (const error& e) {
    json err;
    err["error"] = std::string(e.what());
    out << err.dump(2) << '\n';
    return detail::exit_code_of(e);
  }
  return exit_input_error;
}

}  // namespace stabring
