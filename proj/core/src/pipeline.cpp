// End-to-end driver: the problem-file format, variational equations along a
// known solution, and the reduction pipeline.
//
// This file is part of sp4reduce, released under the MIT license.

#include "sp4reduce/pipeline.hpp"

#include <array>
#include <chrono>
#include <cstddef>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sp4reduce/errors.hpp"
#include "sp4reduce/kovacic.hpp"
#include "sp4reduce/nve.hpp"
#include "sp4reduce/parse.hpp"
#include "sp4reduce/sp4.hpp"

namespace sp4reduce {

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

using Section = std::map<std::string, Entry>;

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Split the problem text into named sections of key = value entries.
std::map<std::string, Section> split_sections(const std::string& text) {
  static const char* known[] = {"field",  "hamiltonian", "curve",
                                "system", "solution",    "options"};
  std::map<std::string, Section> out;
  std::istringstream in(text);
  std::string raw;
  std::string open;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::string line = strip(raw);
    if (line.empty()) continue;
    if (line == "}") {
      if (open.empty())
        throw parse_error("'}' outside of a section", lineno, 1);
      open.clear();
      continue;
    }
    if (line.back() == '{') {
      if (!open.empty())
        throw parse_error("section '" + open + "' is not closed", lineno, 1);
      std::string name = strip(line.substr(0, line.size() - 1));
      bool ok = false;
      for (const char* s : known) ok = ok || name == s;
      if (!ok) throw parse_error("unknown section '" + name + "'", lineno, 1);
      if (out.count(name))
        throw parse_error("section '" + name + "' appears twice", lineno, 1);
      open = name;
      out[open];
      continue;
    }
    std::size_t eq = line.find('=');
    if (open.empty() || eq == std::string::npos)
      throw parse_error("expected 'section {', 'key = value' or '}'", lineno,
                        1);
    std::string key = strip(line.substr(0, eq));
    std::string value = strip(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw parse_error("empty key or value", lineno, 1);
    Section& sec = out[open];
    if (sec.count(key))
      throw parse_error("duplicate key '" + key + "' in section '" + open +
                            "'",
                        lineno, 1);
    sec[key] = Entry{value, lineno};
  }
  if (!open.empty())
    throw parse_error("section '" + open + "' is not closed", lineno, 1);
  return out;
}

const Entry* find(const Section* sec, const std::string& key) {
  if (sec == nullptr) return nullptr;
  auto it = sec->find(key);
  return it == sec->end() ? nullptr : &it->second;
}

void reject_unknown(const Section& sec, const std::string& name,
                    const std::vector<std::string>& keys) {
  for (const auto& [key, entry] : sec) {
    bool ok = false;
    for (const auto& k : keys) ok = ok || key == k;
    if (!ok)
      throw parse_error("unknown key '" + key + "' in section '" + name + "'",
                        entry.line, 1);
  }
}

FieldElement parse_entry(const FieldPtr& k, const Entry& e,
                         const std::string& where) {
  try {
    return parse_element(k, e.value);
  } catch (const parse_error& err) {
    throw parse_error("in " + where + ": " + err.what(), e.line, 1);
  } catch (const domain_error& err) {
    throw parse_error("in " + where + ": " + err.what(), e.line, 1);
  }
}

bool parse_bool(const Entry& e, const std::string& where) {
  if (e.value == "true") return true;
  if (e.value == "false") return false;
  throw parse_error("in " + where + ": expected true or false", e.line, 1);
}

}  // namespace

ProblemSpec parse_problem(const std::string& text) {
  std::map<std::string, Section> sections = split_sections(text);
  auto sec = [&sections](const char* name) -> const Section* {
    auto it = sections.find(name);
    return it == sections.end() ? nullptr : &it->second;
  };

  ProblemSpec spec;

  const Section* field = sec("field");
  std::string var = "t";
  if (field != nullptr) {
    reject_unknown(*field, "field", {"variable", "extension", "twisted"});
    if (const Entry* e = find(field, "variable")) var = e->value;
  }
  const Entry* ext = find(field, "extension");
  bool twisted = false;
  if (const Entry* e = find(field, "twisted"))
    twisted = parse_bool(*e, "field.twisted");
  if (twisted && ext == nullptr)
    throw parse_error("twisted derivation requires an extension", 1, 1);
  if (ext != nullptr) {
    Poly d_raw;
    try {
      d_raw = parse_poly(var, ext->value);
    } catch (const parse_error& err) {
      throw parse_error(std::string("in field.extension: ") + err.what(),
                        ext->line, 1);
    }
    spec.field = make_extension_field(var, d_raw, twisted);
  } else {
    spec.field = make_rational_field(var);
  }

  const Section* ham = sec("hamiltonian");
  const Section* curve = sec("curve");
  const Section* system = sec("system");
  const Section* solution = sec("solution");
  if (ham != nullptr && system != nullptr)
    throw parse_error("a problem declares either a hamiltonian or a system",
                      1, 1);
  if (ham == nullptr && system == nullptr)
    throw parse_error("a problem needs a hamiltonian or a system section", 1,
                      1);
  if (ham != nullptr && curve == nullptr)
    throw parse_error("a hamiltonian problem needs a curve section", 1, 1);
  if (system != nullptr && solution == nullptr)
    throw parse_error("a system problem needs a solution section", 1, 1);
  if (curve != nullptr && ham == nullptr)
    throw parse_error("a curve section needs a hamiltonian section", 1, 1);
  if (solution != nullptr && system == nullptr)
    throw parse_error("a solution section needs a system section", 1, 1);

  if (ham != nullptr) {
    reject_unknown(*ham, "hamiltonian", {"h"});
    const Entry* h = find(ham, "h");
    if (h == nullptr)
      throw parse_error("section 'hamiltonian' needs the key 'h'", 1, 1);
    try {
      spec.hamiltonian = parse_multipoly(h->value);
    } catch (const parse_error& err) {
      throw parse_error(std::string("in hamiltonian.h: ") + err.what(),
                        h->line, 1);
    }
    reject_unknown(*curve, "curve", {"q1", "q2", "p1", "p2"});
    std::array<FieldElement, 4> g;
    const char* names[] = {"q1", "q2", "p1", "p2"};
    for (int j = 0; j < 4; ++j) {
      const Entry* e = find(curve, names[j]);
      g[static_cast<std::size_t>(j)] =
          e == nullptr ? fe(spec.field, 0)
                       : parse_entry(spec.field, *e,
                                     std::string("curve.") + names[j]);
    }
    spec.curve = g;
  }

  if (system != nullptr) {
    std::vector<std::string> keys;
    for (int r = 1; r <= 4; ++r)
      for (int c = 1; c <= 4; ++c)
        keys.push_back("a" + std::to_string(r) + std::to_string(c));
    reject_unknown(*system, "system", keys);
    MatrixOverField a(spec.field, 4, 4);
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        std::string key =
            "a" + std::to_string(r + 1) + std::to_string(c + 1);
        if (const Entry* e = find(system, key))
          a.at(r, c) = parse_entry(spec.field, *e, "system." + key);
      }
    }
    spec.system = std::move(a);
    reject_unknown(*solution, "solution", {"v1", "v2", "v3", "v4"});
    std::array<FieldElement, 4> v;
    for (int j = 0; j < 4; ++j) {
      std::string key = "v" + std::to_string(j + 1);
      const Entry* e = find(solution, key);
      v[static_cast<std::size_t>(j)] =
          e == nullptr ? fe(spec.field, 0)
                       : parse_entry(spec.field, *e, "solution." + key);
    }
    spec.solution = v;
  }

  if (const Section* options = sec("options")) {
    reject_unknown(*options, "options", {"name", "degree_cap"});
    if (const Entry* e = find(options, "name")) spec.name = e->value;
    if (const Entry* e = find(options, "degree_cap")) {
      try {
        std::size_t pos = 0;
        int cap = std::stoi(e->value, &pos);
        if (pos != e->value.size() || cap <= 0)
          throw std::invalid_argument("");
        spec.degree_cap = cap;
      } catch (const std::exception&) {
        throw parse_error("options.degree_cap must be a positive integer",
                          e->line, 1);
      }
    }
  }
  return spec;
}

ProblemSpec parse_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open problem file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  ProblemSpec spec = parse_problem(buf.str());
  if (spec.name.empty()) {
    std::size_t slash = path.find_last_of('/');
    std::string base =
        slash == std::string::npos ? path : path.substr(slash + 1);
    std::size_t dot = base.find_last_of('.');
    spec.name = dot == std::string::npos ? base : base.substr(0, dot);
  }
  return spec;
}

VariationalData build_variational(const ProblemSpec& spec) {
  if (!spec.field) throw domain_error("problem has no field");
  const FieldPtr& k = spec.field;
  VariationalData out;

  if (spec.hamiltonian.has_value()) {
    if (!spec.curve.has_value())
      throw degenerate_input("hamiltonian problem has no curve");
    const MultiPoly& h = *spec.hamiltonian;
    const std::array<FieldElement, 4>& g = *spec.curve;
    for (const FieldElement& c : g) {
      if (c.field() != k)
        throw domain_error("curve components live in a different field");
    }
    MatrixOverField j = symplectic_j(k);
    std::array<MultiPoly, 4> grad;
    for (int m = 0; m < 4; ++m)
      grad[static_cast<std::size_t>(m)] = h.partial(m);
    // Hamiltonian vector field J grad(H) evaluated along the curve.
    std::array<FieldElement, 4> rhs;
    for (int r = 0; r < 4; ++r) {
      FieldElement acc = fe(k, 0);
      for (int m = 0; m < 4; ++m)
        acc = acc + j.at(r, m) * grad[static_cast<std::size_t>(m)].eval(g);
      rhs[static_cast<std::size_t>(r)] = acc;
    }
    for (int r = 0; r < 4; ++r) {
      if (!(g[static_cast<std::size_t>(r)].derive() ==
            rhs[static_cast<std::size_t>(r)]))
        throw degenerate_input(
            "the curve does not solve the Hamiltonian system (component " +
            kCoordinateNames[static_cast<std::size_t>(r)] + ")");
    }
    MatrixOverField hess(k, 4, 4);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        hess.at(r, c) = grad[static_cast<std::size_t>(r)].partial(c).eval(g);
    out.a = j * hess;
    if (!is_hamiltonian(out.a))
      throw internal_error("variational matrix is not infinitesimally "
                           "symplectic");
    out.zprime.reserve(4);
    for (int r = 0; r < 4; ++r)
      out.zprime.push_back(g[static_cast<std::size_t>(r)].derive());
  } else {
    if (!spec.system.has_value() || !spec.solution.has_value())
      throw degenerate_input("system problem needs a matrix and a solution");
    const MatrixOverField& a = *spec.system;
    if (a.rows() != 4 || a.cols() != 4)
      throw shape_mismatch("system matrix must be 4x4");
    if (!is_hamiltonian(a))
      throw degenerate_input(
          "system matrix is not infinitesimally symplectic");
    out.a = a;
    out.zprime.assign(spec.solution->begin(), spec.solution->end());
  }

  bool nonzero = false;
  for (const FieldElement& c : out.zprime) nonzero = nonzero || !c.is_zero();
  if (!nonzero) throw degenerate_input("the distinguished solution is zero");
  for (int r = 0; r < 4; ++r) {
    FieldElement acc = fe(k, 0);
    for (int m = 0; m < 4; ++m)
      acc = acc + out.a.at(r, m) * out.zprime[static_cast<std::size_t>(m)];
    if (!(out.zprime[static_cast<std::size_t>(r)].derive() == acc)) {
      if (spec.hamiltonian.has_value())
        throw internal_error("variational solution check failed");
      throw degenerate_input(
          "the solution vector does not solve d(v) = a v (component " +
          std::to_string(r + 1) + ")");
    }
  }
  return out;
}

PipelineResult run_pipeline(const ProblemSpec& spec) {
  auto start = std::chrono::steady_clock::now();
  PipelineResult r;
  r.spec = spec;
  r.variational = build_variational(spec);
  r.normalized = normalize_variational(r.variational.a, r.variational.zprime);
  r.classification = classify_and_reduce(r.normalized.n, spec.degree_cap);
  r.table = table_form(r.normalized.a_n, r.classification, spec.degree_cap);
  r.certificate = solve_abelian(r.table, spec.degree_cap);
  if (r.certificate.verdict == Verdict::Abelian)
    r.simplified =
        simplify_reduced(r.certificate.b_final, r.certificate.span_basis);
  const MatrixOverField& final_b =
      r.simplified.has_value()
          ? r.simplified->b
          : (r.certificate.verdict == Verdict::Abelian ? r.certificate.b_final
                                                       : r.table.b);
  try {
    r.fundamental = fundamental_matrix(final_b);
    r.fundamental_verified = verify_fundamental(*r.fundamental, final_b);
  } catch (const shape_mismatch&) {
    // Borel and unreduced shapes have no closed template.
  }
  r.final_algebra = associated_lie_algebra(final_b);
  r.elapsed_ms = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  return r;
}

}  // namespace sp4reduce
