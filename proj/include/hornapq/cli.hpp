#pragma once

// Command-line front end. run() is the whole program minus process setup so
// tests can drive it with in-memory streams.
//
// Exit codes: 0 success (verdicts live in the JSON payload), 2 usage or input
// error, 3 numeric non-convergence.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "apqcone.hpp"
#include "horncone.hpp"
#include "json_io.hpp"
#include "numerics.hpp"
#include "parallel.hpp"
#include "polyhedra.hpp"

namespace hornapq::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_numeric = 3;

/// Floats or rationals, for the sampling commands.
inline std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    auto t = std::string(detail::trim(token));
    if (t.find('/') != std::string::npos) {
      out.push_back(parse_rational(t).get_d());
      continue;
    }
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed number '" + t + "'");
    }
    if (used != t.size()) throw std::invalid_argument("malformed number '" + t + "'");
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite number '" + t + "'");
    out.push_back(v);
  }
  return out;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw std::invalid_argument("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline void write_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Horn triples, Horn(n) and A(p,q) membership, inequality systems and their oracle", "hornapq"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Cap on worker threads (default: HORNAPQ_THREADS or hardware)")
      ->check(CLI::PositiveNumber);

  int n = 0, r = 0, p = 0, q = 0;
  bool json_flag = false, text_flag = false, pruned = false, verify = false, certificates = false;
  std::string variant = "full", method = "direct", lambda_text, s_text, x_text, y_text, z_text;
  std::string input_path, output_path, a_path, b_path, system_path;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  int iters = 10000;
  double tol = 1e-9, scan_tol = 1e-8, relax = 1.0;

  auto* lr = app.add_subcommand("lr-list", "List the triples of LR^n_r");
  lr->add_option("--n", n, "Ambient size")->required()->check(CLI::PositiveNumber);
  lr->add_option("--r", r, "Subset cardinality")->required()->check(CLI::PositiveNumber);
  lr->add_flag("--json", json_flag, "Emit a JSON array instead of I;J;K lines");

  auto* hc = app.add_subcommand("horn-check", "Exact membership of (x, y, z) in Horn(n)");
  hc->add_option("--x", x_text, "Comma-separated rationals")->required();
  hc->add_option("--y", y_text, "Comma-separated rationals")->required();
  hc->add_option("--z", z_text, "Comma-separated rationals")->required();

  auto* as = app.add_subcommand("apq-system", "Emit an inequality system for A(p,q)");
  as->add_option("--p", p)->required()->check(CLI::PositiveNumber);
  as->add_option("--q", q)->required()->check(CLI::PositiveNumber);
  as->add_option("--variant", variant, "full | restricted | fflp")->check(CLI::IsMember({"full", "restricted", "fflp"}));
  as->add_flag("--pruned", pruned, "Remove redundant inequalities first");
  as->add_flag("--json", json_flag, "JSON output (default)");
  as->add_flag("--text", text_flag, "One inequality per line");

  auto* ac = app.add_subcommand("apq-check", "Exact membership of (lambda, s) in A(p,q)");
  ac->add_option("--p", p)->required()->check(CLI::PositiveNumber);
  ac->add_option("--q", q)->required()->check(CLI::PositiveNumber);
  ac->add_option("--lambda", lambda_text, "Comma-separated rationals")->required();
  ac->add_option("--s", s_text, "Comma-separated rationals")->required();
  ac->add_option("--method", method, "direct | reduction")->check(CLI::IsMember({"direct", "reduction"}));
  ac->add_flag("--verify", verify, "Also run the other method and compare");

  auto* pr = app.add_subcommand("prune", "Drop implied inequalities from a system");
  pr->add_option("--input", input_path, "System JSON")->required();
  pr->add_option("--output", output_path, "Where to write the pruned system (default: stdout)");
  pr->add_flag("--certificates", certificates, "Print multipliers and witness rays");

  auto* ce = app.add_subcommand("cone-equal", "Decide whether two systems define the same cone");
  ce->add_option("--a", a_path, "System JSON")->required();
  ce->add_option("--b", b_path, "System JSON")->required();
  ce->add_flag("--certificates", certificates, "Print every Farkas certificate");

  auto* sm = app.add_subcommand("sample", "Scan random Hermitian matrices against a system");
  sm->add_option("--p", p)->required()->check(CLI::PositiveNumber);
  sm->add_option("--q", q)->required()->check(CLI::PositiveNumber);
  sm->add_option("--count", count, "Number of samples")->required()->check(CLI::NonNegativeNumber);
  sm->add_option("--seed", seed, "Master seed")->required();
  sm->add_option("--system", system_path, "System JSON (default: the full A(p,q) system)");
  sm->add_option("--tol", scan_tol, "Violation tolerance")->check(CLI::PositiveNumber);

  auto* rz = app.add_subcommand("realize", "Search for a matrix realizing (lambda, s)");
  rz->add_option("--p", p)->required()->check(CLI::PositiveNumber);
  rz->add_option("--q", q)->required()->check(CLI::PositiveNumber);
  rz->add_option("--lambda", lambda_text)->required();
  rz->add_option("--s", s_text)->required();
  rz->add_option("--iters", iters)->check(CLI::NonNegativeNumber);
  rz->add_option("--tol", tol)->check(CLI::PositiveNumber);
  rz->add_option("--seed", seed, "Seed for the random start");
  rz->add_option("--relax", relax, "Reflect-reflect step length in (0, 2)");

  auto* au = app.add_subcommand("audit", "Audit the disputed A(3,3) counterexample");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "hornapq: " << e.what() << '\n';
    return exit_usage;
  }

  try {
    if (threads > 0) set_thread_cap(static_cast<unsigned>(threads));

    if (*lr) {
      if (r > n) throw std::invalid_argument("--r must not exceed --n");
      const auto& triples = lr_triples(n, r);
      if (json_flag) {
        Json arr = Json::array();
        for (const auto& t : triples) arr.push_back(triple_json(t));
        write_json(out, arr);
      } else {
        for (const auto& t : triples) out << to_string(t) << '\n';
      }
    } else if (*hc) {
      auto verdict = horn_membership(RatTuple(parse_rational_list(x_text)), RatTuple(parse_rational_list(y_text)),
                                     RatTuple(parse_rational_list(z_text)));
      write_json(out, verdict_json(verdict));
    } else if (*as) {
      ConeSystem sys = apq_system(p, q, parse_variant(variant));
      if (pruned) sys = prune(sys).system;
      if (text_flag) {
        for (const auto& f : sys.forms) out << f.label << '\n';
      } else {
        write_json(out, system_json(sys));
      }
    } else if (*ac) {
      SpectrumPair sp(p, q, parse_rational_list(lambda_text), parse_rational_list(s_text));
      const auto m = parse_method(method);
      auto verdict = apq_membership(sp, m);
      Json j = verdict_json(verdict);
      j["method"] = to_string(m);
      if (verify) {
        const auto other = m == MembershipMethod::direct ? MembershipMethod::reduction : MembershipMethod::direct;
        auto check = apq_membership(sp, other);
        j["verification"] = {{"method", to_string(other)}, {"member", check.member}, {"agree", check.member == verdict.member}};
      }
      write_json(out, j);
    } else if (*pr) {
      ConeSystem sys = system_from_json(read_json_file(input_path));
      auto result = prune(sys);
      if (output_path.empty()) {
        write_json(out, system_json(result.system));
      } else {
        std::ofstream file(output_path);
        if (!file) throw std::invalid_argument("cannot write '" + output_path + "'");
        write_json(file, system_json(result.system));
        write_json(out, prune_json(sys, result, certificates));
      }
    } else if (*ce) {
      ConeSystem a = system_from_json(read_json_file(a_path));
      ConeSystem b = system_from_json(read_json_file(b_path));
      write_json(out, cone_equal_json(cone_equal(a, b), certificates));
    } else if (*sm) {
      ConeSystem sys = system_path.empty() ? apq_system(p, q, ApqVariant::full) : system_from_json(read_json_file(system_path));
      write_json(out, sample_report_json(soundness_scan(p, q, count, seed, sys, scan_tol)));
    } else if (*rz) {
      RealizeOptions opts;
      opts.max_iters = iters;
      opts.tol = tol;
      opts.relaxation = relax;
      if (!rz->get_option("--seed")->empty()) opts.seed = seed;
      write_json(out, realize_json(realize(p, q, parse_real_list(lambda_text), parse_real_list(s_text), opts)));
    } else if (*au) {
      write_json(out, audit_json(audit_withdrawal()));
    }
  } catch (const numeric_error& e) {
    err << "hornapq: " << e.what() << '\n';
    return exit_numeric;
  } catch (const std::invalid_argument& e) {
    err << "hornapq: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_ok;
}

}  // namespace hornapq::cli
