#include "biharm/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "biharm/catalog.hpp"
#include "biharm/error.hpp"
#include "biharm/report.hpp"
#include "biharm/spec_file.hpp"

namespace biharm {

namespace {

struct NumericFlags {
  std::optional<int> samples;
  std::optional<std::uint64_t> seed;
  std::optional<double> step;
  std::optional<double> tol_res;
  std::optional<double> tol_h;

  void attach(CLI::App* app) {
    app->add_option("--samples", samples, "number of sample points")->check(CLI::PositiveNumber);
    app->add_option("--seed", seed, "sampling seed");
    app->add_option("--step", step, "finite-difference step h")->check(CLI::PositiveNumber);
    app->add_option("--tol-res", tol_res, "residual tolerance")->check(CLI::PositiveNumber);
    app->add_option("--tol-h", tol_h, "|H| tolerance for minimality")->check(CLI::PositiveNumber);
  }

  // Flags override the spec file, which overrides the defaults.
  CheckOptions apply(Immersion& im, const CheckSettings& file = {}) const {
    SamplePolicy policy = im.sampling();
    if (auto v = samples ? samples : file.samples) policy.count = *v;
    if (auto v = seed ? seed : file.seed) policy.seed = *v;
    im.set_sampling(policy);
    CheckOptions opt;
    if (auto v = step ? step : file.step) opt.fd.step = *v;
    if (auto v = tol_res ? tol_res : file.tol_res) opt.tol_res = *v;
    if (auto v = tol_h ? tol_h : file.tol_h) opt.tol_h = *v;
    return opt;
  }
};

std::optional<Verdict> expected_verdict(const std::string& text) {
  if (text.empty()) return std::nullopt;
  if (auto v = parse_verdict(text)) return v;
  throw CLI::ValidationError("--expect", "unknown verdict '" + text + "'");
}

void write_json(const std::string& path, const nlohmann::json& j, std::ostream& out) {
  if (path == "-") {
    out << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::SpecFileError, path + ": cannot write report");
  f << j.dump(2) << "\n";
}

std::string radius_text(const Rational& x) {
  // 1/sqrt(x) for a positive rational x.
  if (x == Rational(1)) return "1";
  if (x == Rational(2)) return "1/√2";
  if (x.denominator() == 1) return "1/√" + to_string(x);
  return "1/√(" + to_string(x) + ")";
}

std::string model_text(const ClassificationResult& r) {
  const bool sphere = r.C > Rational(0);
  const Rational absC = sphere ? r.C : -r.C;
  const std::string small = radius_text(2 * absC);
  const std::string big = radius_text(absC);
  const QuadricKind k = sphere ? QuadricKind::Sphere : QuadricKind::Hyperbolic;
  return quadric_label(k, r.p, 0, small) + "×" + quadric_label(k, r.n - r.p, 0, small) + " ⊂ " +
         quadric_label(k, r.n + 1, sphere ? 0 : 1, big);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Biharmonicity checks for pseudo-Riemannian submanifolds", "biharm"};
  app.require_subcommand(1);

  // check
  auto* check = app.add_subcommand("check", "evaluate the bitension residuals of an immersion spec");
  std::string spec_path;
  std::string json_path;
  std::string expect;
  NumericFlags check_flags;
  check->add_option("spec", spec_path, "immersion spec (JSON)")->required();
  check->add_option("--json", json_path, "write the report as JSON ('-' for stdout)");
  check->add_option("--expect", expect, "minimal | proper-biharmonic | biconservative | not-biharmonic");
  check_flags.attach(check);

  // catalog
  auto* catalog = app.add_subcommand("catalog", "named fixtures");
  catalog->require_subcommand(1);
  auto* cat_list = catalog->add_subcommand("list", "list entries");
  auto* cat_check = catalog->add_subcommand("check", "verify entries against their expected verdicts");
  std::string entry_name;
  bool all = false;
  std::string cat_json;
  NumericFlags cat_flags;
  cat_check->add_option("name", entry_name, "entry name");
  cat_check->add_flag("--all", all, "check every entry");
  cat_check->add_option("--json", cat_json, "write the reports as JSON ('-' for stdout)");
  cat_flags.attach(cat_check);

  // classify
  auto* classify = app.add_subcommand("classify", "two-principal-curvature classification for (n, p, C)");
  int n = 0;
  int p = 0;
  std::string C_text;
  classify->add_option("n", n, "hypersurface dimension")->required();
  classify->add_option("p", p, "multiplicity of the first principal curvature")->required();
  classify->add_option("C", C_text, "ambient curvature, e.g. 1, -1, 3/2")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }

  try {
    if (check->parsed()) {
      const std::optional<Verdict> want = expected_verdict(expect);
      SpecFile spec = load_spec(spec_path);
      const CheckOptions opt = check_flags.apply(spec.immersion, spec.check);
      const BiharmonicReport report = check_immersion(spec.immersion, opt);
      out << summarize(report);
      if (!json_path.empty()) write_json(json_path, report_to_json(report, want), out);
      if (want && *want != report.verdict) {
        out << "expected " << to_string(*want) << ": MISMATCH\n";
        return kExitMismatch;
      }
      return kExitOk;
    }

    if (cat_list->parsed()) {
      for (const auto& row : example_table()) {
        if (row.entries.empty()) out << "# " << row.ambient << ": none\n";
      }
      for (const auto& e : full_catalog()) {
        out << e.name << "  " << e.title << "  [" << to_string(e.expected) << "]  " << e.source << "\n";
      }
      return kExitOk;
    }

    if (cat_check->parsed()) {
      std::vector<CatalogEntry> entries = full_catalog();
      if (!all) {
        if (entry_name.empty()) throw CLI::ValidationError("catalog check", "give an entry name or --all");
        entries = {find_entry(entries, entry_name)};
      }
      int passed = 0;
      nlohmann::json reports = nlohmann::json::array();
      for (auto& e : entries) {
        const CheckOptions opt = cat_flags.apply(e.immersion);
        const BiharmonicReport report = check_immersion(e.immersion, opt);
        const bool ok = report.verdict == e.expected;
        passed += ok ? 1 : 0;
        char line[256];
        std::snprintf(line, sizeof line, "%s %-40s verdict=%-17s expected=%-17s max_res=%.2e max|H|=%.4f\n",
                      ok ? "PASS" : "FAIL", e.name.c_str(), std::string(to_string(report.verdict)).c_str(),
                      std::string(to_string(e.expected)).c_str(), std::max(report.max_normal, report.max_tangential),
                      report.max_H);
        out << line;
        reports.push_back({{"name", e.name}, {"pass", ok}, {"report", report_to_json(report, e.expected)}});
      }
      out << passed << "/" << entries.size() << " entries verified\n";
      if (!cat_json.empty()) write_json(cat_json, {{"schema", kReportSchema}, {"entries", reports}}, out);
      return passed == static_cast<int>(entries.size()) ? kExitOk : kExitMismatch;
    }

    if (classify->parsed()) {
      const ClassificationResult r = classify_two_curvature(n, p, parse_rational(C_text));
      if (r.C1 == r.C2) {
        out << "C1=C2=" << to_string(r.C1);
      } else {
        out << "C1=" << to_string(r.C1) << ", C2=" << to_string(r.C2);
      }
      if (r.admissible) {
        out << ", admissible, model: " << model_text(r) << "\n";
      } else {
        out << ", inadmissible: " << r.reason << "\n";
      }
      return kExitOk;
    }
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace biharm
