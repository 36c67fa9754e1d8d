// Report serialization and replay verification.
//
// This file is part of sp4reduce, released under the MIT license.

#include "sp4reduce/report.hpp"

#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sp4reduce/errors.hpp"

namespace sp4reduce {

namespace {

using json = nlohmann::ordered_json;

json matrix_json(const MatrixOverField& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

json const_matrix_json(const ConstMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

json elements_json(const std::vector<FieldElement>& v) {
  json out = json::array();
  for (const FieldElement& c : v) out.push_back(c.str());
  return out;
}

json problem_json(const ProblemSpec& spec) {
  const FieldPtr& k = spec.field;
  json field;
  field["variable"] = k->variable;
  if (k->has_extension()) {
    field["squarefree"] = k->extension->str(k->variable);
    field["cofactor"] = k->sqrt_cofactor.str(k->variable);
  } else {
    field["squarefree"] = nullptr;
    field["cofactor"] = nullptr;
  }
  field["twisted"] = !k->is_plain_weight();

  json out;
  out["name"] = spec.name;
  out["field"] = std::move(field);
  if (spec.hamiltonian.has_value()) {
    out["kind"] = "hamiltonian";
    out["hamiltonian"] = spec.hamiltonian->str();
    json curve = json::array();
    for (const FieldElement& c : *spec.curve) curve.push_back(c.str());
    out["curve"] = std::move(curve);
  } else {
    out["kind"] = "system";
    out["system"] = spec.system.has_value() ? matrix_json(*spec.system)
                                            : json(nullptr);
    if (spec.solution.has_value()) {
      json sol = json::array();
      for (const FieldElement& c : *spec.solution) sol.push_back(c.str());
      out["solution"] = std::move(sol);
    } else {
      out["solution"] = nullptr;
    }
  }
  out["degree_cap"] = spec.degree_cap;
  return out;
}

json exponents_json(const std::vector<ExponentReport>& reports,
                    const std::string& var) {
  json out = json::array();
  for (const ExponentReport& rep : reports) {
    json e;
    e["point"] = rep.point.has_value() ? json(rep.point->str(var))
                                       : json("infinity");
    json ex = json::array();
    for (const mpq_class& q : rep.exponents) ex.push_back(q.get_str());
    e["exponents"] = std::move(ex);
    e["regular"] = rep.regular;
    e["indicial_degree"] = rep.indicial_degree;
    e["nonrational_count"] = rep.nonrational_count;
    out.push_back(std::move(e));
  }
  return out;
}

json certificate_json(const AbelianityCertificate& cert,
                      const std::string& var) {
  json out;
  out["verdict"] = to_string(cert.verdict);
  out["kind"] = to_string(cert.kind);
  out["detail"] = cert.detail;
  out["gauge"] = matrix_json(cert.gauge);
  out["matrix"] = matrix_json(cert.b_final);
  json span = json::array();
  for (std::size_t j = 0; j < cert.span_basis.size(); ++j) {
    json d;
    d["name"] = j < cert.span_names.size() ? cert.span_names[j] : "";
    d["basis"] = const_matrix_json(cert.span_basis[j]);
    span.push_back(std::move(d));
  }
  out["span"] = std::move(span);
  out["span_coefficients"] = elements_json(cert.span_coefficients);
  out["span_abelian"] = cert.span_abelian;
  out["primitives"] = elements_json(cert.primitives);
  json alphas = json::array();
  for (const QI& a : cert.alphas) alphas.push_back(a.str());
  out["alphas"] = std::move(alphas);
  out["obstruction"] = cert.obstruction.has_value()
                           ? json(cert.obstruction->str())
                           : json(nullptr);
  out["obstruction_exponents"] =
      exponents_json(cert.obstruction_exponents, var);
  return out;
}

json fundamental_json(const FundamentalMatrix& u, bool verified) {
  json out;
  json symbols = json::array();
  for (int id = 0; id < u.symbols.size(); ++id) {
    json s;
    s["name"] = u.symbols.name(id);
    s["unit"] = u.symbols.is_unit(id);
    s["derivative"] = u.symbols.derivative(id).str(u.symbols);
    symbols.push_back(std::move(s));
  }
  out["symbols"] = std::move(symbols);
  json rows = json::array();
  for (int r = 0; r < 4; ++r) {
    json row = json::array();
    for (int c = 0; c < 4; ++c) row.push_back(u.at(r, c).str(u.symbols));
    rows.push_back(std::move(row));
  }
  out["matrix"] = std::move(rows);
  out["verified"] = verified;
  return out;
}

json result_json(const PipelineResult& r) {
  const std::string& var = r.spec.field->variable;
  json out;
  out["format"] = "sp4reduce-report";
  out["format_version"] = 1;
  out["problem"] = problem_json(r.spec);

  json variational;
  variational["matrix"] = matrix_json(r.variational.a);
  variational["solution"] = elements_json(r.variational.zprime);
  out["variational"] = std::move(variational);

  json normalized;
  normalized["gauge"] = matrix_json(r.normalized.p);
  normalized["matrix"] = matrix_json(r.normalized.a_n);
  normalized["core"] = matrix_json(r.normalized.n);
  out["normalized"] = std::move(normalized);

  json cls;
  cls["kind"] = to_string(r.classification.kind);
  cls["rational_dimension"] = r.classification.rational_dimension;
  cls["complete"] = r.classification.complete;
  json rates = json::array();
  for (const FieldElement& c : r.classification.rates)
    rates.push_back(c.str());
  cls["rates"] = std::move(rates);
  cls["gauge"] = matrix_json(r.classification.p);
  cls["core_reduced"] = matrix_json(r.classification.n_reduced);
  if (r.classification.scalar.has_value()) {
    json sc;
    sc["operator"] = r.classification.scalar->l.str();
    sc["pivot"] = r.classification.scalar->pivot;
    cls["scalar"] = std::move(sc);
  } else {
    cls["scalar"] = nullptr;
  }
  out["classification"] = std::move(cls);

  json table;
  table["kind"] = to_string(r.table.kind);
  table["reclassified"] = r.table.reclassified;
  json coeff;
  coeff["a12"] = r.table.a12.str();
  coeff["a14"] = r.table.a14.str();
  coeff["a13"] = r.table.a13.str();
  coeff["a24"] = r.table.a24.str();
  coeff["a22"] = r.table.a22.str();
  table["coefficients"] = std::move(coeff);
  table["gauge"] = matrix_json(r.table.gauge_total);
  table["matrix"] = matrix_json(r.table.b);
  out["table"] = std::move(table);

  out["certificate"] = certificate_json(r.certificate, var);
  out["fundamental"] = r.fundamental.has_value()
                           ? fundamental_json(*r.fundamental,
                                              r.fundamental_verified)
                           : json(nullptr);
  if (r.simplified.has_value()) {
    json s;
    s["matrix"] = matrix_json(r.simplified->b);
    s["gauge"] = matrix_json(r.simplified->gauge);
    s["changed"] = r.simplified->changed;
    out["simplified"] = std::move(s);
  } else {
    out["simplified"] = nullptr;
  }

  json algebra;
  algebra["dimension"] = r.final_algebra.dimension;
  algebra["min_generators"] = r.final_algebra.min_generators;
  algebra["abelian"] = r.final_algebra.abelian;
  algebra["maximally_reduced"] = r.final_algebra.maximally_reduced;
  out["lie_algebra"] = std::move(algebra);

  out["elapsed_ms"] = r.elapsed_ms;
  return out;
}

std::string field_label(const FieldPtr& k) {
  std::string out = "Q(i)(" + k->variable + ")";
  if (k->has_extension()) {
    out += "[sqrt(" + (k->extension->str(k->variable)) + ")]";
    if (!(k->sqrt_cofactor == Poly(QI(mpq_class(1)))))
      out += " cofactor " + k->sqrt_cofactor.str(k->variable);
    if (!k->is_plain_weight()) out += ", twisted derivation";
  }
  return out;
}

std::string text_report(const PipelineResult& r) {
  std::ostringstream out;
  const AbelianityCertificate& cert = r.certificate;
  out << "problem:        "
      << (r.spec.name.empty() ? "(unnamed)" : r.spec.name) << "\n";
  out << "field:          " << field_label(r.spec.field) << "\n";
  out << "classification: " << to_string(r.classification.kind)
      << " (rational dimension " << r.classification.rational_dimension
      << (r.classification.complete ? "" : ", incomplete search") << ")\n";
  out << "table form:     " << to_string(r.table.kind)
      << (r.table.reclassified ? " (reclassified)" : "") << "\n";
  out << "verdict:        " << to_string(cert.verdict) << "\n";
  if (!cert.detail.empty()) out << "detail:         " << cert.detail << "\n";
  if (cert.verdict == Verdict::Abelian) {
    out << "span:          ";
    for (std::size_t j = 0; j < cert.span_names.size(); ++j)
      out << " " << cert.span_names[j];
    out << "\n";
    const MatrixOverField& b =
        r.simplified.has_value() ? r.simplified->b : cert.b_final;
    out << "reduced matrix:\n";
    for (int rr = 0; rr < b.rows(); ++rr) {
      out << "  [";
      for (int cc = 0; cc < b.cols(); ++cc)
        out << (cc == 0 ? " " : " | ") << b.at(rr, cc).str();
      out << " ]\n";
    }
  }
  if (cert.obstruction.has_value()) {
    out << "obstruction:    " << cert.obstruction->str() << "\n";
    for (const ExponentReport& rep : cert.obstruction_exponents) {
      out << "  exponents at "
          << (rep.point.has_value()
                  ? rep.point->str(r.spec.field->variable)
                  : std::string("infinity"))
          << ":";
      for (const mpq_class& q : rep.exponents) out << " " << q.get_str();
      if (rep.nonrational_count > 0)
        out << " (+" << rep.nonrational_count << " nonrational)";
      out << "\n";
    }
  }
  if (r.fundamental.has_value()) {
    out << "fundamental matrix symbols:\n";
    const SymbolTable& tab = r.fundamental->symbols;
    for (int id = 0; id < tab.size(); ++id) {
      out << "  " << (tab.is_unit(id) ? "unit " : "     ") << tab.name(id)
          << "' = " << tab.derivative(id).str(tab) << "\n";
    }
    out << "fundamental matrix "
        << (r.fundamental_verified ? "verified" : "NOT verified") << "\n";
  }
  out << "lie algebra:    dimension " << r.final_algebra.dimension
      << ", minimal generators " << r.final_algebra.min_generators
      << (r.final_algebra.abelian ? ", abelian" : "")
      << (r.final_algebra.maximally_reduced ? ", maximally reduced" : "")
      << "\n";
  out << "elapsed:        " << r.elapsed_ms << " ms\n";
  return out.str();
}

}  // namespace

std::string emit_report(const PipelineResult& result, ReportFormat format) {
  if (format == ReportFormat::Text) return text_report(result);
  return result_json(result).dump(2) + "\n";
}

ReplayResult replay(const ProblemSpec& spec, const std::string& report_json) {
  ReplayResult out;
  auto push = [&out](const std::string& name, bool ok) {
    out.checks.emplace_back(name, ok);
    out.ok = out.ok && ok;
  };

  json stored = json::parse(report_json, nullptr, false);
  if (stored.is_discarded() || !stored.is_object() ||
      stored.value("format", "") != "sp4reduce-report") {
    push("report parses", false);
    return out;
  }
  push("report parses", true);

  PipelineResult fresh;
  try {
    fresh = run_pipeline(spec);
  } catch (const error&) {
    push("pipeline re-run succeeds", false);
    return out;
  }
  push("pipeline re-run succeeds", true);

  json recomputed = result_json(fresh);
  static const char* const sections[] = {
      "problem",     "variational", "normalized", "classification",
      "table",       "certificate", "fundamental", "simplified",
      "lie_algebra"};
  for (const char* key : sections) {
    bool same = stored.contains(key) && stored[key] == recomputed[key];
    push(std::string(key) + " matches recomputation", same);
  }

  // Recompute the certified identities on the fresh result.
  const FieldPtr& k = spec.field;
  push("table gauge is symplectic", is_symplectic(fresh.table.gauge_total));
  push("table gauge reproduces the table matrix",
       gauge(fresh.table.gauge_total, fresh.normalized.a_n) == fresh.table.b);
  push("full gauge chain reproduces the table matrix",
       gauge(fresh.normalized.p * fresh.table.gauge_total,
             fresh.variational.a) == fresh.table.b);
  push("certificate gauge is symplectic", is_symplectic(fresh.certificate.gauge));
  push("certificate gauge reproduces the reduced matrix",
       gauge(fresh.certificate.gauge, fresh.table.b) ==
           fresh.certificate.b_final);
  bool span_ok = true;
  if (!fresh.certificate.span_basis.empty()) {
    if (fresh.certificate.span_coefficients.size() !=
        fresh.certificate.span_basis.size()) {
      span_ok = false;
    } else {
      MatrixOverField acc(k, 4, 4);
      for (std::size_t j = 0; j < fresh.certificate.span_basis.size(); ++j)
        acc = acc + embed(k, fresh.certificate.span_basis[j]) *
                        fresh.certificate.span_coefficients[j];
      span_ok = acc == fresh.certificate.b_final;
    }
    push("reduced matrix lies in the span", span_ok);
    bool abelian = true;
    for (std::size_t a = 0; a < fresh.certificate.span_basis.size(); ++a)
      for (std::size_t b = a + 1; b < fresh.certificate.span_basis.size();
           ++b)
        abelian = abelian &&
                  bracket(fresh.certificate.span_basis[a],
                          fresh.certificate.span_basis[b]) ==
                      ConstMatrix(4, 4);
    push("span is abelian", abelian == fresh.certificate.span_abelian &&
                                (fresh.certificate.verdict !=
                                     Verdict::Abelian ||
                                 abelian));
  }
  if (fresh.simplified.has_value()) {
    push("simplification gauge reproduces its matrix",
         gauge(fresh.simplified->gauge, fresh.certificate.b_final) ==
             fresh.simplified->b);
  }
  if (fresh.fundamental.has_value()) {
    const MatrixOverField& final_b = fresh.simplified.has_value()
                                         ? fresh.simplified->b
                                         : (fresh.certificate.verdict ==
                                                    Verdict::Abelian
                                                ? fresh.certificate.b_final
                                                : fresh.table.b);
    push("fundamental matrix verifies",
         verify_fundamental(*fresh.fundamental, final_b));
  }
  return out;
}

}  // namespace sp4reduce
