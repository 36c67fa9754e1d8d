// Command line interface.
//
// Exit codes: 0 the verdict is Abelian (or the command succeeded), 3 the
// verdict is NonAbelian, 4 the verdict is Inconclusive or the computation hit
// a configured cap, 1 usage or input errors, 2 internal errors.
//
// This file is part of sp4reduce, released under the MIT license.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sp4reduce/errors.hpp"
#include "sp4reduce/parse.hpp"
#include "sp4reduce/pipeline.hpp"
#include "sp4reduce/report.hpp"
#include "sp4reduce/sp4.hpp"
#include "sp4reduce/weinorman.hpp"

namespace {

using namespace sp4reduce;

struct CommonOptions {
  std::string problem_path;
  std::string format = "text";
  std::string output;
  std::string extension;
  std::string variable = "t";
  bool twisted = false;
  int degree_cap = 0;
};

void add_field_options(CLI::App* sub, CommonOptions& opt) {
  sub->add_option("--degree-cap", opt.degree_cap,
                  "override the degree cap of the problem file")
      ->check(CLI::PositiveNumber);
  sub->add_option("--extension", opt.extension,
                  "declare the extension polynomial D when the problem file "
                  "has no field section");
  sub->add_flag("--twisted", opt.twisted,
                "use the twisted derivation sqrt(D) d/dt (needs --extension)");
  sub->add_option("--variable", opt.variable,
                  "field variable name used with --extension");
}

ProblemSpec load_problem(const CommonOptions& opt) {
  std::ifstream in(opt.problem_path);
  if (!in) throw parse_error("cannot open problem file " + opt.problem_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  if (!opt.extension.empty() || opt.twisted || opt.variable != "t") {
    // Prepend a field section; a second one in the file is rejected by the
    // parser, so the flags cannot silently override a declared field.
    std::string pre = "field {\n  variable = " + opt.variable + "\n";
    if (!opt.extension.empty()) pre += "  extension = " + opt.extension + "\n";
    if (opt.twisted) pre += "  twisted = true\n";
    pre += "}\n";
    text = pre + text;
  }
  ProblemSpec spec = parse_problem(text);
  if (spec.name.empty()) {
    std::string base = opt.problem_path;
    std::size_t slash = base.find_last_of('/');
    if (slash != std::string::npos) base = base.substr(slash + 1);
    std::size_t dot = base.find_last_of('.');
    spec.name = dot == std::string::npos ? base : base.substr(0, dot);
  }
  if (opt.degree_cap > 0) spec.degree_cap = opt.degree_cap;
  return spec;
}

void write_output(const CommonOptions& opt, const std::string& text) {
  if (opt.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.output);
  if (!out) throw parse_error("cannot write to " + opt.output);
  out << text;
}

int verdict_code(Verdict v) {
  switch (v) {
    case Verdict::Abelian:
      return 0;
    case Verdict::NonAbelian:
      return 3;
    case Verdict::Inconclusive:
      return 4;
  }
  return 2;
}

int cmd_reduce(const CommonOptions& opt) {
  ProblemSpec spec = load_problem(opt);
  PipelineResult result = run_pipeline(spec);
  write_output(opt, emit_report(result, opt.format == "json"
                                            ? ReportFormat::Json
                                            : ReportFormat::Text));
  return verdict_code(result.certificate.verdict);
}

int cmd_verdict(const CommonOptions& opt) {
  ProblemSpec spec = load_problem(opt);
  PipelineResult result = run_pipeline(spec);
  std::cout << to_string(result.certificate.verdict) << "\n";
  return verdict_code(result.certificate.verdict);
}

int cmd_classify(const CommonOptions& opt) {
  ProblemSpec spec = load_problem(opt);
  VariationalData var = build_variational(spec);
  NormalizedSystem normalized = normalize_variational(var.a, var.zprime);
  ClassificationResult cls =
      classify_and_reduce(normalized.n, spec.degree_cap);
  std::ostringstream out;
  if (opt.format == "json") {
    out << "{\n  \"problem\": \"" << spec.name << "\",\n  \"kind\": \""
        << to_string(cls.kind) << "\",\n  \"rational_dimension\": "
        << cls.rational_dimension << ",\n  \"complete\": "
        << (cls.complete ? "true" : "false") << ",\n  \"rates\": [";
    for (std::size_t j = 0; j < cls.rates.size(); ++j)
      out << (j ? ", " : "") << "\"" << cls.rates[j].str() << "\"";
    out << "]\n}\n";
  } else {
    out << "problem:            " << spec.name << "\n";
    out << "classification:     " << to_string(cls.kind) << "\n";
    out << "rational dimension: " << cls.rational_dimension << "\n";
    out << "search complete:    " << (cls.complete ? "yes" : "no") << "\n";
    for (const FieldElement& r : cls.rates)
      out << "exponential rate:   " << r.str() << "\n";
    if (cls.scalar.has_value())
      out << "scalar operator:    " << cls.scalar->l.str() << "\n";
  }
  write_output(opt, out.str());
  return 0;
}

int cmd_replay(const CommonOptions& opt, const std::string& report_path) {
  ProblemSpec spec = load_problem(opt);
  std::ifstream in(report_path);
  if (!in) throw parse_error("cannot open report file " + report_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  ReplayResult result = replay(spec, buf.str());
  for (const auto& [name, ok] : result.checks)
    std::cout << (ok ? "ok      " : "FAILED  ") << name << "\n";
  std::cout << (result.ok ? "replay passed" : "replay failed") << "\n";
  return result.ok ? 0 : 1;
}

int cmd_self_test() {
  int failures = 0;
  auto check = [&failures](const char* name, bool ok) {
    std::cout << (ok ? "ok      " : "FAILED  ") << name << "\n";
    if (!ok) ++failures;
  };

  const Sp4Basis& mb = sp4_basis();
  check("bracket [m1, m2] = 2 m3",
        bracket(mb.m1, mb.m2) == mb.m3 * QI(mpq_class(2)));
  check("bracket [mm, m1] = -m1", bracket(mb.mm, mb.m1) == -mb.m1);
  check("bracket [ma, m1] = -m2", bracket(mb.ma, mb.m1) == -mb.m2);
  check("products m1 m2 = m3, m2 m1 = -m3",
        mb.m1 * mb.m2 == mb.m3 && mb.m2 * mb.m1 == -mb.m3);

  FieldPtr k = make_rational_field("t");
  FieldElement t = fe_var(k);
  MatrixOverField b = embed(k, mb.m1) * (t + t) +
                      embed(k, mb.m2) * (t * t * fe(k, 3)) +
                      embed(k, mb.m3) * t;
  TableForm table;
  table.kind = TableKind::TrivialGN;
  table.a12 = t + t;
  table.a14 = t * t * fe(k, 3);
  table.a13 = t;
  table.a24 = fe(k, 0);
  table.a22 = fe(k, 0);
  table.gauge_total = MatrixOverField::identity(k, 4);
  table.b = b;
  AbelianityCertificate cert = solve_abelian(table);
  check("synthetic trivial table is abelian",
        cert.verdict == Verdict::Abelian && cert.span_abelian);
  check("abelian gauge replays",
        gauge(cert.gauge, table.b) == cert.b_final);

  FundamentalMatrix u = fundamental_matrix(cert.b_final);
  check("fundamental matrix verifies", verify_fundamental(u, cert.b_final));

  FieldElement x = parse_element(k, "(t^2 - 1) / (2*t) + i");
  check("element parsing round trip", parse_element(k, x.str()) == x);

  std::cout << (failures == 0 ? "self-test passed" : "self-test failed")
            << "\n";
  return failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "sp4reduce: reduced forms and an effective abelianity test for linear "
      "differential systems in sp(4)"};
  app.require_subcommand(1);

  CommonOptions opt;
  std::string report_path;

  CLI::App* reduce =
      app.add_subcommand("reduce", "run the full reduction pipeline");
  reduce->add_option("problem", opt.problem_path, "problem file")->required();
  reduce->add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"json", "text"}));
  reduce->add_option("-o,--output", opt.output, "write the report to a file");
  add_field_options(reduce, opt);

  CLI::App* classify = app.add_subcommand(
      "classify-nve", "classify the normal variational equation only");
  classify->add_option("problem", opt.problem_path, "problem file")
      ->required();
  classify->add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"json", "text"}));
  classify->add_option("-o,--output", opt.output,
                       "write the summary to a file");
  add_field_options(classify, opt);

  CLI::App* verdict = app.add_subcommand(
      "verdict", "print only the abelianity verdict");
  verdict->add_option("problem", opt.problem_path, "problem file")
      ->required();
  add_field_options(verdict, opt);

  CLI::App* rep = app.add_subcommand(
      "replay", "verify a stored report against a fresh run");
  rep->add_option("problem", opt.problem_path, "problem file")->required();
  rep->add_option("report", report_path, "stored JSON report")->required();
  add_field_options(rep, opt);

  CLI::App* self = app.add_subcommand("self-test", "run built-in checks");
  (void)self;

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(reduce)) return cmd_reduce(opt);
    if (app.got_subcommand(classify)) return cmd_classify(opt);
    if (app.got_subcommand(verdict)) return cmd_verdict(opt);
    if (app.got_subcommand(rep)) return cmd_replay(opt, report_path);
    return cmd_self_test();
  } catch (const parse_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const degenerate_input& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const bound_overflow& e) {
    std::cerr << "cannot decide within the configured caps: " << e.what()
              << "\n(raise --degree-cap to retry)\n";
    return 4;
  } catch (const unsupported_extension& e) {
    std::cerr << "cannot decide over the declared field: " << e.what()
              << "\n";
    return 4;
  } catch (const unsupported_field& e) {
    std::cerr << "operation not available over this field: " << e.what()
              << "\n";
    return 1;
  } catch (const internal_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
