#pragma once

/**
 * @file cli.hpp
 * @brief Command-line front end. run() parses argv, executes one command and
 *        writes exactly one JSON document (or CSV table) to `out`.
 *
 * Exit codes: 0 pass, 1 fail or violation found, 2 error.
 */

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "univalent/univalent.hpp"

namespace univalent::cli {

using json = nlohmann::ordered_json;

inline json to_json(complex c) { return json::array({c.real(), c.imag()}); }

inline complex parse_point(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) return {detail::parse_double(detail::trim(s), "z"), 0.0};
  return {detail::parse_double(detail::trim(std::string_view(s).substr(0, comma)), "Re z"),
          detail::parse_double(detail::trim(std::string_view(s).substr(comma + 1)), "Im z")};
}

inline json to_json(const GridSpec& g) {
  return {{"radii", g.radii}, {"angles_per_circle", g.angles_per_circle}, {"max_radius", g.max_radius}};
}

inline json to_json(const MembershipVerdict& v) {
  json j{{"label", to_string(v.label)},
         {"status", to_string(v.status)},
         {"route", to_string(v.route)},
         {"grid", to_json(v.grid)},
         {"checked_max_radius", v.checked_max_radius},
         {"grid_limited", v.grid_limited}};
  if (v.witness) {
    j["witness"] = {{"z", to_json(v.witness->z)}, {"value", to_json(v.witness->value)}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

inline json to_json(const CircleScan& s) {
  return {{"r", s.r},
          {"n_angles", s.n_angles},
          {"min_value", s.min_value},
          {"argmin_angle", s.argmin_angle},
          {"refined", s.refined}};
}

inline json to_json(const RadiusReport& r) {
  json j{{"function_id", r.function_id},
         {"positivity_radius", r.positivity_radius},
         {"bracket", {r.r_lo, r.r_hi}},
         {"residual", r.residual},
         {"failure_found", r.failure_found},
         {"cap", r.cap},
         {"paper_radius", r.paper_radius ? json(*r.paper_radius) : json(nullptr)},
         {"relation", to_string(r.relation)}};
  if (!r.failure_found) j["note"] = "no failure found";
  return j;
}

inline json to_json(const SuiteReport& s) {
  json members = json::array();
  for (const auto& m : s.members) {
    json jm{{"member_id", m.member_id},
            {"generator", m.description},
            {"radius", m.radius},
            {"min_ReD", m.min_value},
            {"angle", m.angle},
            {"pass", m.pass()}};
    if (m.error) jm["error"] = *m.error;
    members.push_back(std::move(jm));
  }
  return {{"case", to_string(s.which)},
          {"theorem_radius", s.theorem_radius},
          {"scan_radius", s.scan_radius},
          {"samples", s.samples},
          {"seed", s.seed},
          {"suite_min", s.suite_min},
          {"pass", s.pass},
          {"failures", s.failures},
          {"members", std::move(members)}};
}

inline json to_json(const SharpnessReport& s) {
  return {{"case", to_string(s.which)},
          {"budget", s.budget},
          {"evaluations", s.evaluations},
          {"seed", s.seed},
          {"paper_radius", s.paper_radius},
          {"best_radius", s.best_radius},
          {"best_generator", s.best_generator},
          {"gap", s.gap},
          {"failure_found", s.failure_found},
          {"alert", s.alert},
          {"alert_details", s.alert_details}};
}

inline json coefficients_json(const TaylorSeries& s, std::size_t count) {
  json arr = json::array();
  for (std::size_t k = 0; k < count && k <= s.order(); ++k) arr.push_back(to_json(s[k]));
  return arr;
}

/**
 * Resolves --function: a catalog name (optionally "name@theta"), or a path
 * to a JSON file holding one of
 *   {"kind": "f_series" | "p_series", "coeffs": [[re, im], ...]}
 *   {"kind": "member", "class": "S_star" | "S_star_order" | "G", "alpha": a, "omega": "<spec>"}
 *   {"kind": "u_member", "phi": "<spec>", "u1": [re, im]}
 */
inline AnalyticInput load_function(const std::string& spec, std::size_t order) {
  std::ifstream in(spec);
  if (!in) return AnalyticInput::catalog(spec, order);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, "cannot parse function file '" + spec + "': " + e.what());
  }
  const std::string kind = doc.value("kind", "");
  if (kind == "f_series" || kind == "p_series") {
    std::vector<complex> coeffs;
    for (const auto& c : doc.at("coeffs")) {
      coeffs.emplace_back(c.at(0).get<double>(), c.size() > 1 ? c.at(1).get<double>() : 0.0);
    }
    TaylorSeries s(std::move(coeffs));
    return kind == "f_series" ? AnalyticInput::from_f_series(s) : AnalyticInput::from_p_series(s);
  }
  if (kind == "member") {
    const ClassLabel label = parse_class_label(doc.at("class").get<std::string>(), doc.value("alpha", 0.0));
    return AnalyticInput::member(make_member(label, parse_schwarz(doc.at("omega").get<std::string>()), order));
  }
  if (kind == "u_member") {
    complex u1{};
    if (doc.contains("u1")) u1 = {doc["u1"].at(0).get<double>(), doc["u1"].at(1).get<double>()};
    return AnalyticInput::member(make_u_member(parse_schwarz(doc.at("phi").get<std::string>()), u1, order));
  }
  throw Error(ErrorKind::InvalidArgument, "function file '" + spec + "' has unknown kind '" + kind + "'");
}

namespace detail {

struct CsvRow {
  std::string which;
  std::string member_id;
  double radius;
  double min_value;
  double angle;
};

inline std::string csv_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

inline std::string to_csv(const std::vector<CsvRow>& rows) {
  std::string out = "case,member_id,radius,min_ReD,angle\n";
  for (const auto& r : rows) {
    out += r.which + "," + r.member_id + "," + csv_number(r.radius) + "," + csv_number(r.min_value) + "," +
           csv_number(r.angle) + "\n";
  }
  return out;
}

inline std::vector<CsvRow> suite_rows(const SuiteReport& s) {
  std::vector<CsvRow> rows;
  for (const auto& m : s.members) {
    rows.push_back({std::string(to_string(s.which)), std::to_string(m.member_id), m.radius, m.min_value, m.angle});
  }
  return rows;
}

/// Cross-route oracle check used by `verify-theorem --case all`.
inline json route_agreement(std::uint64_t seed, std::size_t points, bool& pass) {
  json out = json::array();
  std::mt19937_64 rng(seed);
  for (const auto& name : catalog_names()) {
    const AnalyticInput closed_in = AnalyticInput::catalog(name, 128);
    const AnalyticInput p_in = AnalyticInput::catalog(name, 512);
    double worst = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
      const complex z = sample_disk(rng, series_trust_radius);
      const complex a = eval_D(closed_in, z, Route::closed);
      const complex b = eval_D(closed_in, z, Route::series);
      const complex c = eval_D(p_in, z, Route::p);
      worst = std::max({worst, std::abs(a - b), std::abs(a - c), std::abs(b - c)});
    }
    const bool ok = worst <= 1e-8;
    pass = pass && ok;
    out.push_back({{"function", name}, {"max_pairwise_difference", worst}, {"pass", ok}});
  }
  return out;
}

inline json counterexample_checks(bool& pass) {
  json out = json::array();
  auto record = [&](std::string name, double value, double expected, double tol) {
    const bool ok = std::abs(value - expected) <= tol;
    pass = pass && ok;
    out.push_back({{"check", std::move(name)}, {"value", value}, {"expected", expected}, {"pass", ok}});
  };
  auto record_sign = [&](std::string name, double value, bool want_negative) {
    const bool ok = want_negative ? value < 0.0 : value > 0.0;
    pass = pass && ok;
    out.push_back({{"check", std::move(name)}, {"value", value}, {"pass", ok}});
  };
  record("f2 threshold", counterexample_threshold("f2"), 1.0 - std::exp(-2.0), 1e-7);
  record("f3 threshold", counterexample_threshold("f3"), 1.0 / std::sqrt(2.0), 1e-7);
  const AnalyticInput f2 = AnalyticInput::catalog("f2");
  const AnalyticInput f3 = AnalyticInput::catalog("f3");
  record_sign("f2 circle min at 0.87", scan_circle(f2, 0.87, 1024).min_value, true);
  record_sign("f3 circle min at 0.75", scan_circle(f3, 0.75, 4096).min_value, true);
  record_sign("f2 circle min at 0.24", scan_circle(f2, 0.24, 1024).min_value, false);
  return out;
}

}  // namespace detail

/// Parses, executes and reports. Never throws.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  CLI::App app{"Toolkit for the operator D(f;z) = 2zf'/f - zf''/f' on univalent function classes", "univalent"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value config file; flags win over file values");

  std::uint64_t seed = 42;
  unsigned threads = 1;
  std::string out_path;
  bool csv = false;
  std::size_t order = default_order;
  app.add_option("--seed", seed, "RNG seed")->capture_default_str();
  app.add_option("--threads", threads, "worker threads (0 = auto)")->capture_default_str();
  app.add_option("--out", out_path, "write the report to this file instead of standard output");
  app.add_option("--order", order, "Taylor series truncation order")->capture_default_str()->check(CLI::Range(4, 4096));

  // catalog
  auto* catalog_cmd = app.add_subcommand("catalog", "inspect the function catalog");
  catalog_cmd->require_subcommand(1);
  catalog_cmd->add_subcommand("list", "list catalog functions");
  auto* catalog_show = catalog_cmd->add_subcommand("show", "show one catalog function");
  std::string show_name;
  catalog_show->add_option("name", show_name, "function name")->required();

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "evaluate D(f;z)");
  std::string function_spec, route_name = "auto", z_text;
  eval_cmd->add_option("--function", function_spec, "catalog name or function file")->required();
  eval_cmd->add_option("--route", route_name, "closed | series | p | phi | auto")->capture_default_str();
  eval_cmd->add_option("--z", z_text, "point as re,im")->required();

  // certify
  auto* certify_cmd = app.add_subcommand("certify", "grid membership check");
  std::string class_name;
  double alpha = 0.0;
  std::vector<double> grid_radii;
  std::size_t angles = default_grid_angles;
  std::optional<double> max_radius;
  certify_cmd->add_option("--function", function_spec, "catalog name or function file")->required();
  certify_cmd->add_option("--class", class_name, "S_star | S_star_order | K | U | G | M_alpha | S")->required();
  certify_cmd->add_option("--alpha", alpha, "order or alpha parameter");
  certify_cmd->add_option("--grid-radii", grid_radii, "ascending radii")->delimiter(',');
  certify_cmd->add_option("--angles", angles, "angles per circle")->capture_default_str();
  certify_cmd->add_option("--max-radius", max_radius, "grid radius cap (<= 0.999)");
  certify_cmd->add_option("--route", route_name, "evaluation route")->capture_default_str();

  // scan
  auto* scan_cmd = app.add_subcommand("scan", "minimum of Re D on one circle");
  double radius = 0.5;
  std::size_t scan_angles = 1024;
  scan_cmd->add_option("--function", function_spec, "catalog name or function file")->required();
  scan_cmd->add_option("--radius", radius, "circle radius")->required();
  scan_cmd->add_option("--angles", scan_angles, "coarse grid size")->capture_default_str();
  scan_cmd->add_option("--route", route_name, "evaluation route")->capture_default_str();
  scan_cmd->add_flag("--csv", csv, "CSV output");

  // radius
  auto* radius_cmd = app.add_subcommand("radius", "positivity radius of Re D");
  double tol = 1e-8;
  radius_cmd->add_option("--function", function_spec, "catalog name or function file")->required();
  radius_cmd->add_option("--tol", tol, "bisection tolerance")->capture_default_str();
  radius_cmd->add_option("--angles", scan_angles, "angles per circle")->capture_default_str();
  radius_cmd->add_option("--route", route_name, "evaluation route")->capture_default_str();
  radius_cmd->add_flag("--csv", csv, "CSV output");

  // verify-theorem
  auto* verify_cmd = app.add_subcommand("verify-theorem", "seeded positivity suites per theorem case");
  std::string case_name;
  std::size_t samples = 100;
  std::vector<std::string> overrides;
  verify_cmd->add_option("--case", case_name, "i | ii | iii | iv | v | all")->required();
  verify_cmd->add_option("--samples", samples, "members per case")->capture_default_str()->check(CLI::PositiveNumber);
  verify_cmd->add_option("--override", overrides, "fault injection: <case>=<radius> replaces a theorem radius");
  verify_cmd->add_flag("--csv", csv, "CSV output");

  // sharpness
  auto* sharp_cmd = app.add_subcommand("sharpness", "search for members with small positivity radius");
  std::size_t budget = 10000;
  std::optional<double> theorem_override;
  sharp_cmd->add_option("--case", case_name, "i | ii | iii | iv")->required();
  sharp_cmd->add_option("--budget", budget, "objective evaluations")->capture_default_str();
  sharp_cmd->add_option("--theorem-radius-override", theorem_override, "fault injection: alert threshold radius");
  sharp_cmd->add_flag("--csv", csv, "CSV output");

  // family
  auto* family_cmd = app.add_subcommand("family", "generate class members");
  family_cmd->require_subcommand(1);
  auto* family_make = family_cmd->add_subcommand("make", "member from a Schwarz function");
  std::string omega_spec, u1_text;
  family_make->add_option("--class", class_name, "S_star | S_star_order | G | U")->required();
  family_make->add_option("--omega", omega_spec, "omega (or phi for U) in the Schwarz micro-format")->required();
  family_make->add_option("--u1", u1_text, "free coefficient for U members, re,im");
  family_make->add_option("--alpha", alpha, "order for S_star_order");

  auto emit = [&](const std::string& text) {
    if (out_path.empty()) {
      out << text;
      return;
    }
    std::ofstream file(out_path);
    if (!file) throw Error(ErrorKind::InvalidArgument, "cannot open --out file '" + out_path + "'");
    file << text;
  };
  auto error_doc = [&](std::string_view kind, const std::string& message) {
    json doc{{"error", {{"kind", kind}, {"message", message}}}};
    out << doc.dump(2) << "\n";
    err << "error: " << message << "\n";
    return 2;
  };

  std::vector<const char*> argv{"univalent"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    return error_doc("InvalidArgument", e.what());
  }

  std::string command;
  for (const auto* sub = &app; !sub->get_subcommands().empty();) {
    sub = sub->get_subcommands().front();
    command += (command.empty() ? "" : " ") + sub->get_name();
  }

  json config{{"seed", seed}, {"threads", threads}, {"order", order}};
  json results;
  bool pass = true;
  std::optional<std::string> csv_text;

  try {
    const Route route = parse_route(route_name);
    if (command == "catalog list") {
      results = json::array();
      for (const auto& name : catalog_names()) {
        const CatalogFunction fn = get(name, order);
        results.push_back({{"name", name}, {"f", fn.formula_f()}, {"D", fn.formula_D()}});
      }
    } else if (command == "catalog show") {
      config["name"] = show_name;
      const CatalogFunction fn = get(show_name, order);
      json memberships = json::array();
      for (const auto& m : fn.memberships()) {
        memberships.push_back(
            {{"class", to_string(m.label)}, {"status", to_string(m.status)}, {"provenance", m.provenance}});
      }
      results = {{"name", fn.name()},
                 {"theta", fn.theta()},
                 {"f", fn.formula_f()},
                 {"D", fn.formula_D()},
                 {"coefficients", coefficients_json(fn.series(), 16)},
                 {"memberships", std::move(memberships)}};
    } else if (command == "eval") {
      const complex z = parse_point(z_text);
      config.update({{"function", function_spec}, {"route", route_name}, {"z", to_json(z)}});
      const AnalyticInput f = load_function(function_spec, order);
      const Route used = f.resolve(route);
      const complex v = eval_D(f, z, used);
      results = {{"value_re", v.real()}, {"value_im", v.imag()}, {"route", to_string(used)}};
    } else if (command == "certify") {
      GridSpec grid;
      if (!grid_radii.empty()) grid.radii = grid_radii;
      if (max_radius) {
        grid.max_radius = *max_radius;
        if (grid_radii.empty()) grid.radii.back() = *max_radius;
      } else if (!grid_radii.empty()) {
        grid.max_radius = std::max(grid.max_radius, grid_radii.back());
      }
      grid.angles_per_circle = angles;
      const ClassLabel label = parse_class_label(class_name, alpha);
      config.update({{"function", function_spec}, {"class", to_string(label)}, {"route", route_name},
                     {"grid", to_json(grid)}});
      const MembershipVerdict v = certify(load_function(function_spec, order), label, grid, route);
      results = to_json(v);
      pass = v.status == VerdictStatus::grid_pass;
    } else if (command == "scan") {
      config.update({{"function", function_spec}, {"radius", radius}, {"angles", scan_angles}, {"route", route_name}});
      const CircleScan s = scan_circle(load_function(function_spec, order), radius, scan_angles, route);
      results = to_json(s);
      pass = s.min_value > 0.0;
      if (csv) csv_text = detail::to_csv({{"-", function_spec, s.r, s.min_value, s.argmin_angle}});
    } else if (command == "radius") {
      config.update({{"function", function_spec}, {"tol", tol}, {"angles", scan_angles}, {"route", route_name}});
      RadiusOptions opt;
      opt.tol = tol;
      opt.n_angles = scan_angles;
      std::optional<PaperReference> paper;
      const AnalyticInput f = load_function(function_spec, order);
      if (const auto* fn = f.as_catalog(); fn && (fn->base_name() == "f2" || fn->base_name() == "f3")) {
        paper = PaperReference{counterexample_threshold(fn->base_name()), PaperReference::Kind::upper_bound};
      }
      const RadiusReport r = positivity_radius(f, opt, paper, route);
      results = to_json(r);
      pass = r.relation != PaperRelation::inconsistent;
      if (csv) csv_text = detail::to_csv({{"-", r.function_id, r.positivity_radius, r.residual, 0.0}});
    } else if (command == "verify-theorem") {
      std::map<std::string, double> override_map;
      for (const auto& o : overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos) throw Error(ErrorKind::InvalidArgument, "--override expects <case>=<radius>");
        const std::string c = o.substr(0, eq);
        parse_case(c);
        override_map[c] = univalent::detail::parse_double(std::string_view(o).substr(eq + 1), "override radius");
      }
      config.update({{"case", case_name}, {"samples", samples}, {"overrides", override_map}});
      std::vector<TheoremCase> cases;
      if (case_name == "all") {
        cases = {TheoremCase::i, TheoremCase::ii, TheoremCase::iii, TheoremCase::iv, TheoremCase::v};
      } else {
        cases = {parse_case(case_name)};
      }
      json suites = json::array();
      std::vector<detail::CsvRow> rows;
      json failures = json::array();
      for (const TheoremCase c : cases) {
        VerifyOptions opt;
        opt.threads = threads;
        if (const auto it = override_map.find(std::string(to_string(c))); it != override_map.end()) {
          opt.radius_override = it->second;
        }
        const SuiteReport s = verify_theorem(c, samples, seed, opt);
        if (!s.pass) {
          pass = false;
          for (const auto id : s.failures) {
            failures.push_back({{"case", to_string(c)}, {"member_id", id}, {"min_ReD", s.members[id].min_value}});
          }
        }
        const auto r = detail::suite_rows(s);
        rows.insert(rows.end(), r.begin(), r.end());
        suites.push_back(to_json(s));
      }
      results = {{"suites", std::move(suites)}};
      if (case_name == "all") {
        bool extra_pass = true;
        results["counterexamples"] = detail::counterexample_checks(extra_pass);
        results["route_agreement"] = detail::route_agreement(seed, 50, extra_pass);
        if (!extra_pass) failures.push_back({{"check", "counterexamples or route agreement"}});
        pass = pass && extra_pass;
      }
      results["failures"] = std::move(failures);
      if (csv) csv_text = detail::to_csv(rows);
    } else if (command == "sharpness") {
      const TheoremCase c = parse_case(case_name);
      config.update({{"case", case_name}, {"budget", budget},
                     {"theorem_radius_override", theorem_override ? json(*theorem_override) : json(nullptr)}});
      SharpnessOptions opt;
      opt.threads = threads;
      opt.theorem_radius_override = theorem_override;
      const SharpnessReport s = sharpness_probe(c, budget, seed, opt);
      results = to_json(s);
      pass = !s.alert;
      if (csv) csv_text = detail::to_csv({{std::string(to_string(c)), s.best_generator, s.best_radius, s.gap, 0.0}});
    } else if (command == "family make") {
      config.update({{"class", class_name}, {"omega", omega_spec}});
      const SchwarzFunction g = parse_schwarz(omega_spec);
      FamilyMember m = [&] {
        if (class_name == "U") {
          const complex u1 = u1_text.empty() ? complex{} : parse_point(u1_text);
          config["u1"] = to_json(u1);
          return make_u_member(g, u1, order);
        }
        return make_member(parse_class_label(class_name, alpha), g, order);
      }();
      results = {{"class", to_string(m.class_label())},
                 {"generator", g.spec()},
                 {"u1", to_json(m.u1())},
                 {"f_coefficients", coefficients_json(m.f_series(), 16)},
                 {"p_coefficients", coefficients_json(m.p_series(), 16)}};
    } else {
      throw Error(ErrorKind::InvalidArgument, "unknown command '" + command + "'");
    }
  } catch (const Error& e) {
    return error_doc(to_string(e.kind()), e.what());
  } catch (const json::exception& e) {
    return error_doc("InvalidArgument", e.what());
  } catch (const std::exception& e) {
    return error_doc("InternalError", e.what());
  }

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  try {
    if (csv_text) {
      emit(*csv_text);
    } else {
      json report{{"command", command}, {"config", std::move(config)}, {"results", std::move(results)},
                  {"pass", pass}, {"wall_time_s", wall}};
      emit(report.dump(2) + "\n");
    }
  } catch (const Error& e) {
    return error_doc(to_string(e.kind()), e.what());
  }
  err << command << ": " << (pass ? "pass" : "fail") << " (" << wall << " s)\n";
  return pass ? 0 : 1;
}

}  // namespace univalent::cli
