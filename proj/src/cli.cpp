#include "kuelsh/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "kuelsh/errors.hpp"
#include "kuelsh/verify.hpp"

namespace kuelsh {

namespace {

unsigned env_nmax() {
  const char* v = std::getenv("KUELSH_NMAX");
  if (!v) return 0;
  int n = std::atoi(v);
  return n > 0 ? (unsigned)n : 0;
}

struct AnalyzeOptions {
  std::string family;
  int64_t p = 0;
  std::string field;
  int k = 1, s = 3;
  std::string a = "1", c = "0", d;
  unsigned nmax = 0;
  std::string format = "text";
};

FamilyParams make_params(const AnalyzeOptions& opt) {
  if (opt.field.empty()) fail(Errc::BadInput, "--field is required");
  FieldSpec K = parse_field_tag(opt.field);
  if (opt.p != 0 && opt.p != K.characteristic())
    fail(Errc::BadInput, "--p disagrees with the field characteristic");
  FamilyParams params;
  params.field = K;
  if (opt.family == "2B") {
    params.family = Family::Q2B;
    params.k = opt.k;
    params.s = opt.s;
    params.a = parse_element(K, opt.a);
    params.c = parse_element(K, opt.c);
  } else if (opt.family == "3A") {
    params.family = Family::Q3A;
    if (opt.d.empty()) fail(Errc::BadInput, "--d is required for family 3A");
    params.d = parse_element(K, opt.d);
  } else {
    fail(Errc::BadInput, "--family must be 2B or 3A");
  }
  params.validate();
  return params;
}

int cmd_analyze(const AnalyzeOptions& opt, std::ostream& out) {
  FamilyParams params = make_params(opt);
  unsigned nmax = opt.nmax ? opt.nmax : env_nmax();
  AnalysisReport r = analyze_family_instance(params, nmax);
  out << render(r, opt.format == "json" ? ReportFormat::Json : ReportFormat::Text);
  return r.expectation_status == "mismatch" ? 2 : 0;
}

int cmd_verify(const std::string& grid, std::ostream& out) {
  bool full = grid == "full";
  auto params = verification_grid(full);
  size_t failures = 0, covered = 0;
  for (const auto& p : params) {
    AnalysisReport r = analyze_family_instance(p, 0);
    bool pass = r.expectation_status != "mismatch";
    if (r.expectation_status != "uncovered") ++covered;
    if (!pass) ++failures;
    out << (pass ? "PASS  " : "FAIL  ") << p.describe() << "\n";
    if (!pass)
      for (const auto& c : r.checks)
        if (!c.ok)
          out << "      " << c.name << ": expected " << c.expected << ", computed " << c.computed
              << "\n";
  }
  out << params.size() << " cases, " << covered << " covered, " << failures << " failing\n";
  return failures == 0 ? 0 : 2;
}

int cmd_custom(const std::string& file, size_t loewy, unsigned nmax, const std::string& format,
               std::ostream& out) {
  std::ifstream in(file);
  if (!in) fail(Errc::BadInput, "cannot open '" + file + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  ParsedPresentation parsed = parse_presentation(buf.str());
  size_t bound = loewy ? loewy : parsed.loewy_bound;
  AnalysisReport r;
  if (bound) {
    r = analyze_custom_instance(parsed.presentation, bound, nmax);
  } else {
    // retry with growing bounds until the quotient saturates
    bool done = false;
    for (size_t b = 1; b <= 12 && !done; ++b) {
      try {
        r = analyze_custom_instance(parsed.presentation, b, nmax);
        done = true;
      } catch (const Error& e) {
        if (e.code() != Errc::SaturationFailure || b == 12) throw;
      }
    }
  }
  out << render(r, format == "json" ? ReportFormat::Json : ReportFormat::Text);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact Kuelshammer-ideal analysis for quaternion-type algebras"};
  app.require_subcommand(1);

  AnalyzeOptions aopt;
  auto* analyze = app.add_subcommand("analyze", "analyze one family instance");
  analyze->add_option("--family", aopt.family, "2B or 3A")->required();
  analyze->add_option("--p", aopt.p, "characteristic (checked against --field)");
  analyze->add_option("--field", aopt.field, "gf:<q> or rat:<p>")->required();
  analyze->add_option("--k", aopt.k, "Q2B parameter k");
  analyze->add_option("--s", aopt.s, "Q2B parameter s");
  analyze->add_option("--a", aopt.a, "Q2B parameter a (field element)");
  analyze->add_option("--c", aopt.c, "Q2B parameter c (field element)");
  analyze->add_option("--d", aopt.d, "Q3A parameter d (field element)");
  analyze->add_option("--nmax", aopt.nmax, "ladder depth (default: stabilizing depth)");
  analyze->add_option("--format", aopt.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  std::string grid = "small";
  auto* verify = app.add_subcommand("verify-paper", "run the verification grid");
  verify->add_option("--grid", grid, "small or full")->check(CLI::IsMember({"small", "full"}));

  std::string quiver_file, cformat = "text";
  size_t loewy = 0;
  unsigned cnmax = 0;
  auto* custom = app.add_subcommand("custom", "analyze a quiver presentation file");
  custom->add_option("--quiver", quiver_file, "presentation file")->required();
  custom->add_option("--loewy", loewy, "loewy bound (default: from file or auto)");
  custom->add_option("--nmax", cnmax, "ladder depth");
  custom->add_option("--format", cformat, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
    if (analyze->parsed()) return cmd_analyze(aopt, out);
    if (verify->parsed()) return cmd_verify(grid, out);
    if (custom->parsed())
      return cmd_custom(quiver_file, loewy, cnmax ? cnmax : env_nmax(), cformat, out);
    return 1;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help goes to stdout and exits cleanly
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace kuelsh
