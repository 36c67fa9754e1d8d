// Rational solutions of linear differential operators over Q(i)(t) and its
// quadratic extensions, via exact indicial analysis at every singular point,
// and the first-order solvers built on top.
//
// This file is part of sp4reduce, released under the MIT license.

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "sp4reduce/diffop.hpp"
#include "sp4reduce/errors.hpp"

namespace sp4reduce {

namespace {

bool is_integer(const mpq_class& r) { return r.get_den() == 1; }

// Convert an exact integer rational to int, refusing silently huge values.
int to_int_checked(const mpq_class& r) {
  if (!is_integer(r)) throw internal_error("to_int_checked(): not an integer");
  if (!r.get_num().fits_sint_p())
    throw bound_overflow("local exponent does not fit a machine integer");
  return static_cast<int>(r.get_num().get_si());
}

Poly pmod(const Poly& p, const Poly& pi) { return p.divrem(pi).second; }

// rho (rho - 1) ... (rho - i + 1) as a polynomial in rho.
Poly falling_factorial(int i) {
  Poly r = Poly(QI(1));
  for (int s = 0; s < i; ++s)
    r *= Poly(std::vector<QI>{QI(mpq_class(-s)), QI(1)});
  return r;
}

// Common-denominator form of an operator's coefficients, with the overall
// polynomial content removed.
std::vector<Poly> clear_denominators(const std::vector<RatFun>& c) {
  Poly lcm = Poly(QI(1));
  for (const auto& r : c) {
    if (r.is_zero()) continue;
    Poly g = poly_gcd(lcm, r.den());
    lcm = (lcm * r.den()).divrem(g).first;
  }
  std::vector<Poly> p;
  p.reserve(c.size());
  for (const auto& r : c) {
    if (r.is_zero()) {
      p.emplace_back();
      continue;
    }
    p.push_back(r.num() * lcm.divrem(r.den()).first);
  }
  Poly content;
  for (const auto& q : p)
    if (!q.is_zero()) content = content.is_zero() ? q : poly_gcd(content, q);
  if (content.deg() > 0)
    for (auto& q : p)
      if (!q.is_zero()) q = q.divrem(content).first;
  return p;
}

std::vector<RatFun> op_ratfuns(const DiffOp& l) {
  std::vector<RatFun> c;
  for (int j = 0; j <= l.order(); ++j) {
    FieldElement e = l.coeff(j);
    if (e.has_radical_part())
      throw internal_error("op_ratfuns(): radical coefficient");
    c.push_back(e.base());
  }
  return c;
}

// Indicial polynomial of sum p_i d^i at the monic squarefree modulus pi,
// as rho-coefficients reduced mod pi. When pi is reducible and the leading
// rho-coefficient degenerates modulo a proper factor, that factor is
// returned instead so the caller can split the modulus.
struct IndicialLocal {
  Poly pi;
  std::vector<Poly> c;  // rho-coefficients, each reduced mod pi
  int degree = 0;       // rho-degree
};

struct IndicialOrSplit {
  std::optional<IndicialLocal> ind;
  Poly split;
};

IndicialOrSplit indicial_at(const std::vector<Poly>& p, const Poly& pi) {
  int n = static_cast<int>(p.size()) - 1;
  // Valuations v_i and the set S achieving min(v_i - i).
  std::vector<int> v(p.size(), 0);
  bool have = false;
  int vstar = 0;
  for (int i = 0; i <= n; ++i) {
    if (p[static_cast<size_t>(i)].is_zero()) continue;
    v[static_cast<size_t>(i)] = valuation(p[static_cast<size_t>(i)], pi);
    int w = v[static_cast<size_t>(i)] - i;
    if (!have || w < vstar) {
      vstar = w;
      have = true;
    }
  }
  if (!have) throw internal_error("indicial_at(): zero operator");
  Poly dpi = pmod(pi.derivative(), pi);
  std::vector<Poly> c(p.size());
  for (int i = 0; i <= n; ++i) {
    if (p[static_cast<size_t>(i)].is_zero()) continue;
    if (v[static_cast<size_t>(i)] - i != vstar) continue;
    Poly q = p[static_cast<size_t>(i)];
    for (int s = 0; s < v[static_cast<size_t>(i)]; ++s) {
      auto [quot, rem] = q.divrem(pi);
      if (!rem.is_zero())
        throw internal_error("indicial_at(): valuation inconsistent");
      q = quot;
    }
    q = pmod(q, pi);
    for (int s = 0; s < i; ++s) q = pmod(q * dpi, pi);
    Poly ff = falling_factorial(i);
    for (int k = 0; k <= ff.deg(); ++k)
      c[static_cast<size_t>(k)] += q * ff.coeff(k);
  }
  int top = -1;
  for (int k = n; k >= 0; --k) {
    c[static_cast<size_t>(k)] = pmod(c[static_cast<size_t>(k)], pi);
    if (top < 0 && !c[static_cast<size_t>(k)].is_zero()) top = k;
  }
  if (top < 0)
    throw internal_error("indicial_at(): identically zero indicial form");
  Poly g = poly_gcd(pi, c[static_cast<size_t>(top)]);
  if (g.deg() > 0 && g.deg() < pi.deg()) return {std::nullopt, g};
  if (g.deg() == pi.deg())
    throw internal_error("indicial_at(): degenerate leading coefficient");
  c.resize(static_cast<size_t>(top) + 1);
  return {IndicialLocal{pi, std::move(c), top}, Poly()};
}

// Fraction-free determinant of a matrix with polynomial entries.
Poly det_bareiss(std::vector<std::vector<Poly>> m) {
  int n = static_cast<int>(m.size());
  if (n == 0) return Poly(QI(1));
  int sign = 1;
  Poly prev = Poly(QI(1));
  for (int k = 0; k + 1 < n; ++k) {
    if (m[static_cast<size_t>(k)][static_cast<size_t>(k)].is_zero()) {
      int r = -1;
      for (int s = k + 1; s < n; ++s)
        if (!m[static_cast<size_t>(s)][static_cast<size_t>(k)].is_zero()) {
          r = s;
          break;
        }
      if (r < 0) return Poly();
      std::swap(m[static_cast<size_t>(k)], m[static_cast<size_t>(r)]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Poly num = m[static_cast<size_t>(i)][static_cast<size_t>(j)] *
                       m[static_cast<size_t>(k)][static_cast<size_t>(k)] -
                   m[static_cast<size_t>(i)][static_cast<size_t>(k)] *
                       m[static_cast<size_t>(k)][static_cast<size_t>(j)];
        auto [q, rem] = num.divrem(prev);
        if (!rem.is_zero())
          throw internal_error("det_bareiss(): inexact division");
        m[static_cast<size_t>(i)][static_cast<size_t>(j)] = q;
      }
    prev = m[static_cast<size_t>(k)][static_cast<size_t>(k)];
  }
  Poly d = m[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)];
  return sign < 0 ? -d : d;
}

// Norm of the indicial form: N(rho) = Res_t(pi, Ind). For monic pi this is
// the determinant of multiplication by Ind on Q(i)[t]/pi, with entries in
// Q(i)[rho].
Poly indicial_norm(const IndicialLocal& ind) {
  int m = ind.pi.deg();
  if (m == 1) {
    std::vector<QI> coeffs;
    for (const auto& ck : ind.c) coeffs.push_back(ck.coeff(0));
    return Poly(std::move(coeffs));
  }
  std::vector<std::vector<Poly>> mat(
      static_cast<size_t>(m), std::vector<Poly>(static_cast<size_t>(m)));
  Poly tb = Poly(QI(1));
  for (int b = 0; b < m; ++b) {
    for (int k = 0; k <= ind.degree; ++k) {
      Poly w = pmod(ind.c[static_cast<size_t>(k)] * tb, ind.pi);
      for (int a = 0; a < m; ++a) {
        // Entry (a, b) gains w.coeff(a) * rho^k.
        if (!w.coeff(a).is_zero())
          mat[static_cast<size_t>(a)][static_cast<size_t>(b)] +=
              Poly::monomial(w.coeff(a), k);
      }
    }
    tb = pmod(tb * Poly::variable(), ind.pi);
  }
  return det_bareiss(std::move(mat));
}

// Synthetic division of the indicial form by (rho - r) in (Q(i)[t]/pi)[rho].
// Returns the quotient coefficients and the remainder Ind(r) mod pi.
std::pair<std::vector<Poly>, Poly> deflate_once(const std::vector<Poly>& c,
                                                const mpq_class& r,
                                                const Poly& pi) {
  int top = static_cast<int>(c.size()) - 1;
  std::vector<Poly> q(static_cast<size_t>(top));
  Poly carry = c[static_cast<size_t>(top)];
  for (int k = top - 1; k >= 0; --k) {
    if (k < top) q[static_cast<size_t>(k)] = carry;
    carry = pmod(c[static_cast<size_t>(k)] + carry * QI(r), pi);
  }
  return {std::move(q), carry};
}

struct PointData {
  Poly pi;
  std::vector<std::pair<mpq_class, int>> exponents;  // verified, multiplicity
  int indicial_degree = 0;
  int nonrational = 0;
};

// Worklist analysis of a set of candidate singular moduli, splitting any
// modulus whose roots do not share one exponent structure.
std::vector<PointData> analyze_points(const std::vector<Poly>& p,
                                      std::vector<Poly> worklist) {
  std::vector<PointData> out;
  int guard = 0;
  while (!worklist.empty()) {
    if (++guard > 4096)
      throw internal_error("analyze_points(): worklist did not terminate");
    Poly pi = worklist.back().monic();
    worklist.pop_back();
    if (pi.deg() < 1) continue;
    auto ios = indicial_at(p, pi);
    if (!ios.ind) {
      worklist.push_back(ios.split);
      worklist.push_back(pi.divrem(ios.split).first);
      continue;
    }
    const IndicialLocal& ind = *ios.ind;
    Poly norm = indicial_norm(ind);
    if (norm.is_zero())
      throw internal_error("analyze_points(): vanishing indicial norm");
    PointData data;
    data.pi = pi;
    data.indicial_degree = ind.degree;
    bool split = false;
    int total = 0;
    for (const auto& [root, nmult] : rational_roots(norm)) {
      (void)nmult;
      // Deflate by (rho - root) while the remainder vanishes mod pi. The
      // leading rho-coefficient is coprime to pi, so full deflation stops
      // cleanly at a unit.
      std::vector<Poly> cur = ind.c;
      int mult = 0;
      while (cur.size() > 1) {
        auto [q, rem] = deflate_once(cur, root, pi);
        if (rem.is_zero()) {
          ++mult;
          cur = std::move(q);
          continue;
        }
        Poly g = poly_gcd(pi, rem);
        if (g.deg() > 0 && g.deg() < pi.deg()) {
          worklist.push_back(g);
          worklist.push_back(pi.divrem(g).first);
          split = true;
        }
        break;
      }
      if (split) break;
      if (mult > 0) {
        data.exponents.emplace_back(root, mult);
        total += mult;
      }
    }
    if (split) continue;
    data.nonrational = data.indicial_degree - total;
    out.push_back(std::move(data));
  }
  std::sort(out.begin(), out.end(), [](const PointData& a, const PointData& b) {
    if (a.pi.deg() != b.pi.deg()) return a.pi.deg() < b.pi.deg();
    return a.pi.str("t") < b.pi.str("t");
  });
  return out;
}

ExponentReport make_report(const PointData& d, bool infinity, int order) {
  ExponentReport rep;
  if (!infinity) rep.point = d.pi;
  for (const auto& [r, m] : d.exponents)
    for (int s = 0; s < m; ++s) rep.exponents.push_back(r);
  std::sort(rep.exponents.begin(), rep.exponents.end());
  rep.indicial_degree = d.indicial_degree;
  rep.nonrational_count = d.nonrational;
  rep.regular = d.indicial_degree == order;
  return rep;
}

// The u-side polynomial coefficients of the operator after t = 1/u,
// d/dt = -u^2 d/du.
std::vector<Poly> infinity_polys(const std::vector<Poly>& p) {
  FieldPtr ku = make_rational_field("u");
  DiffOp x = DiffOp::scalar(fe(ku, QI(-1)) * fe_var(ku) * fe_var(ku)) *
             DiffOp::derivation(ku);
  DiffOp acc(ku);
  DiffOp pw = DiffOp::identity(ku);
  int n = static_cast<int>(p.size()) - 1;
  for (int i = 0; i <= n; ++i) {
    if (!p[static_cast<size_t>(i)].is_zero()) {
      RatFun ci = RatFun(p[static_cast<size_t>(i)]).substitute_inverse();
      acc = acc + DiffOp::scalar(FieldElement(ku, ci)) * pw;
    }
    if (i < n) pw = x * pw;
  }
  return clear_denominators(op_ratfuns(acc));
}

PointData infinity_data(const std::vector<Poly>& p) {
  std::vector<Poly> q = infinity_polys(p);
  auto pts = analyze_points(q, {Poly::variable()});
  if (pts.size() != 1)
    throw internal_error("infinity_data(): unexpected split at infinity");
  return pts[0];
}

// Exponent reports of a denominator-cleared operator: all finite candidate
// moduli (factors of the leading coefficient), then infinity.
std::vector<ExponentReport> all_reports(const std::vector<Poly>& p) {
  int n = static_cast<int>(p.size()) - 1;
  std::vector<Poly> wl;
  for (const Poly& part : squarefree_decomposition(p[static_cast<size_t>(n)]))
    if (part.deg() > 0) wl.push_back(part.monic());
  std::vector<ExponentReport> reps;
  for (const auto& d : analyze_points(p, std::move(wl)))
    reps.push_back(make_report(d, false, n));
  reps.push_back(make_report(infinity_data(p), true, n));
  return reps;
}

struct BaseSolve {
  std::vector<RatFun> basis;
  std::vector<ExponentReport> reports;
};

// Core machine over the plain rational field: exact pole and degree bounds
// from the indicial data, then a polynomial ansatz solved over Q(i).
BaseSolve solve_base(const DiffOp& l, int cap) {
  if (l.is_zero()) throw domain_error("rational_solutions(): zero operator");
  std::vector<Poly> p = clear_denominators(op_ratfuns(l));
  int n = l.order();
  BaseSolve out;
  out.reports = all_reports(p);
  if (n == 0) return out;
  // Denominator bound: at each singular modulus the valuation of a solution
  // must be one of the verified integer exponents.
  Poly delta = Poly(QI(1));
  for (const auto& rep : out.reports) {
    if (!rep.point) continue;
    bool any = false;
    int vmin = 0;
    for (const auto& r : rep.exponents) {
      if (!is_integer(r)) continue;
      int v = to_int_checked(r);
      if (!any || v < vmin) vmin = v;
      any = true;
    }
    if (!any) return out;  // no admissible valuation, trivial space
    for (int s = 0; s < -vmin; ++s) delta *= *rep.point;
    if (delta.deg() > cap)
      throw bound_overflow("denominator bound exceeds the degree cap");
  }
  // Conjugate by 1/delta and bound polynomial degrees at infinity.
  const FieldPtr& k = l.field();
  DiffOp lt = l;
  if (delta.deg() > 0)
    lt = l * DiffOp::scalar(FieldElement(k, RatFun(Poly(QI(1)), delta)));
  std::vector<Poly> pt = clear_denominators(op_ratfuns(lt));
  PointData inf = infinity_data(pt);
  bool any = false;
  int dmax = 0;
  for (const auto& [r, m] : inf.exponents) {
    (void)m;
    if (!is_integer(r)) continue;
    int rho = to_int_checked(r);
    if (rho > 0) continue;
    if (!any || -rho > dmax) dmax = -rho;
    any = true;
  }
  if (!any) return out;  // no admissible polynomial degree
  if (dmax > cap) throw bound_overflow("degree bound exceeds the degree cap");
  // Ansatz z = sum c_j t^j, y = z/delta.
  std::vector<Poly> w(static_cast<size_t>(dmax) + 1);
  int maxdeg = 0;
  for (int j = 0; j <= dmax; ++j) {
    Poly acc;
    for (int i = 0; i <= n && i <= j; ++i) {
      if (pt[static_cast<size_t>(i)].is_zero()) continue;
      mpq_class fall = 1;
      for (int s = 0; s < i; ++s) fall *= (j - s);
      acc += pt[static_cast<size_t>(i)] * Poly::monomial(QI(fall), j - i);
    }
    w[static_cast<size_t>(j)] = acc;
    maxdeg = std::max(maxdeg, acc.deg());
  }
  std::vector<std::vector<QI>> mat(
      static_cast<size_t>(maxdeg) + 1,
      std::vector<QI>(static_cast<size_t>(dmax) + 1));
  for (int j = 0; j <= dmax; ++j)
    for (int a = 0; a <= maxdeg; ++a)
      mat[static_cast<size_t>(a)][static_cast<size_t>(j)] =
          w[static_cast<size_t>(j)].coeff(a);
  for (const auto& vec : nullspace(mat, dmax + 1)) {
    RatFun y(Poly(vec), delta);
    if (!l.apply(FieldElement(k, y)).is_zero())
      throw internal_error("rational_solutions(): candidate fails to verify");
    out.basis.push_back(std::move(y));
  }
  return out;
}

// Restrict a radical-free operator over an extension field to the base
// field.
DiffOp to_base(const DiffOp& l, const FieldPtr& kb) {
  std::vector<FieldElement> c;
  for (int j = 0; j <= l.order(); ++j) {
    FieldElement e = l.coeff(j);
    if (e.has_radical_part())
      throw internal_error("to_base(): radical coefficient");
    c.emplace_back(kb, e.base());
  }
  return DiffOp(kb, std::move(c));
}

bool has_radical_coeff(const DiffOp& l) {
  for (int j = 0; j <= l.order(); ++j)
    if (l.coeff(j).has_radical_part()) return true;
  return false;
}

}  // namespace

std::vector<ExponentReport> local_exponents(const DiffOp& l) {
  if (l.is_zero()) throw domain_error("local_exponents(): zero operator");
  const FieldPtr& k = l.field();
  FieldPtr kp = plain_twin(k);
  DiffOp lp = rebase(l, kp);
  FieldPtr kb = make_rational_field(k->variable);
  if (k->has_extension()) {
    DiffOp m = lp;
    if (has_radical_coeff(lp)) {
      m = lclm(lp, lp.conj_radical());
      if (has_radical_coeff(m))
        throw internal_error("local_exponents(): symmetrization failed");
    }
    lp = to_base(m, kb);
  }
  return all_reports(clear_denominators(op_ratfuns(lp)));
}

RationalSolutionSpace rational_solutions(const DiffOp& l, int degree_cap) {
  if (l.is_zero()) throw domain_error("rational_solutions(): zero operator");
  const FieldPtr& k = l.field();
  FieldPtr kp = plain_twin(k);
  DiffOp lp = rebase(l, kp);
  RationalSolutionSpace out;
  out.degree_cap = degree_cap;
  if (!k->has_extension()) {
    BaseSolve bs = solve_base(lp, degree_cap);
    out.exponents = std::move(bs.reports);
    for (auto& y : bs.basis) out.basis.emplace_back(k, std::move(y));
  } else {
    DiffOp m = lp;
    if (has_radical_coeff(lp)) {
      m = lclm(lp, lp.conj_radical());
      if (has_radical_coeff(m))
        throw internal_error("rational_solutions(): symmetrization failed");
    }
    FieldElement rt = fe_sqrt(kp);
    DiffOp mc = DiffOp::scalar(rt.inverse()) * m * DiffOp::scalar(rt);
    if (has_radical_coeff(mc))
      throw internal_error("rational_solutions(): conjugation left radicals");
    FieldPtr kb = make_rational_field(k->variable);
    BaseSolve a = solve_base(to_base(m, kb), degree_cap);
    BaseSolve b = solve_base(to_base(mc, kb), degree_cap);
    out.exponents = std::move(a.reports);
    // Candidates span ker m; cut down to ker lp over Q(i).
    std::vector<FieldElement> cand;
    for (const auto& y : a.basis) cand.emplace_back(kp, y);
    for (const auto& y : b.basis) cand.push_back(rt * FieldElement(kp, y));
    std::vector<FieldElement> images;
    for (const auto& u : cand) images.push_back(lp.apply(u));
    for (const auto& rel : qi_relations(images)) {
      FieldElement y = fe(kp, 0);
      for (size_t j = 0; j < cand.size(); ++j)
        y += cand[j] * fe(kp, rel[j]);
      if (!y.is_zero()) out.basis.push_back(with_field(y, k));
    }
  }
  for (const auto& y : out.basis)
    if (!l.apply(y).is_zero())
      throw internal_error("rational_solutions(): basis fails to verify");
  return out;
}

std::optional<FieldElement> risch_solve(const FieldElement& f,
                                        const FieldElement& g) {
  const FieldPtr& k = f.field() ? f.field() : g.field();
  if (!k) throw internal_error("risch_solve(): detached elements");
  if (g.is_zero()) return fe(k, 0);
  // Kernel of (d - g'/g)(d - f) collects the y with d(y) - f y in Q(i) g.
  DiffOp first(k, {-f, fe(k, 1)});
  DiffOp killer(k, {-(g.derive() / g), fe(k, 1)});
  RationalSolutionSpace sols = rational_solutions(killer * first);
  if (sols.basis.empty()) return std::nullopt;
  std::vector<QI> c;
  for (const auto& y : sols.basis) {
    FieldElement t = y.derive() - f * y;
    auto coords = express_in_span(t, {g});
    if (!coords)
      throw internal_error("risch_solve(): image escapes the line Q(i) g");
    c.push_back((*coords)[0]);
  }
  std::vector<std::vector<QI>> mat{c};
  std::vector<QI> x;
  if (!solve_linear(mat, {QI(1)}, x)) return std::nullopt;
  FieldElement y = fe(k, 0);
  for (size_t j = 0; j < sols.basis.size(); ++j)
    y += sols.basis[j] * fe(k, x[j]);
  return y;
}

std::optional<FieldElement> exp_membership(const FieldElement& f) {
  const FieldPtr& k = f.field();
  if (!k) throw internal_error("exp_membership(): detached element");
  DiffOp l(k, {-f, fe(k, 1)});
  RationalSolutionSpace sols = rational_solutions(l);
  if (sols.basis.empty()) return std::nullopt;
  return sols.basis[0];
}

std::optional<FieldElement> integrate_in_field(const FieldElement& f) {
  const FieldPtr& k = f.field();
  if (!k) throw internal_error("integrate_in_field(): detached element");
  return risch_solve(fe(k, 0), f);
}

IntegrableCombinations integrable_combinations(
    const std::vector<FieldElement>& f, int degree_cap) {
  if (f.empty())
    throw domain_error("integrable_combinations(): empty family");
  FieldPtr k;
  for (const auto& e : f)
    if (e.field()) k = e.field();
  if (!k) throw internal_error("integrable_combinations(): detached family");
  IntegrableCombinations out;
  // L = lclm_i(d - f_i'/f_i) * d over the nonzero members; its kernel holds
  // every primitive of a Q(i)-combination of the f_i.
  DiffOp m = DiffOp::identity(k);
  bool have = false;
  for (const auto& e : f) {
    if (e.is_zero()) continue;
    DiffOp d(k, {-(e.derive() / e), fe(k, 1)});
    m = have ? lclm(m, d) : d;
    have = true;
  }
  DiffOp l = m * DiffOp::derivation(k);
  out.op = rebase(l, plain_twin(k)).monic();
  if (k->has_extension() && !has_radical_coeff(out.op))
    out.op = to_base(out.op, make_rational_field(k->variable));
  out.exponents = local_exponents(out.op);
  size_t n = f.size();
  std::vector<size_t> nonzero;
  for (size_t j = 0; j < n; ++j)
    if (!f[j].is_zero()) nonzero.push_back(j);
  std::vector<std::vector<QI>> rows;
  std::vector<FieldElement> prims;
  if (!nonzero.empty()) {
    std::vector<FieldElement> family;
    for (size_t j : nonzero) family.push_back(f[j]);
    for (const auto& y : rational_solutions(l, degree_cap).basis) {
      auto coords = express_in_span(y.derive(), family);
      if (!coords)
        throw internal_error(
            "integrable_combinations(): derivative escapes the span");
      std::vector<QI> row(n);
      for (size_t s = 0; s < nonzero.size(); ++s) row[nonzero[s]] = (*coords)[s];
      rows.push_back(std::move(row));
      prims.push_back(y);
    }
  }
  // A Q(i)-relation of the family is achievable with the zero primitive;
  // this also covers zero members through their unit relations.
  for (auto& rel : qi_relations(f)) {
    rows.push_back(std::move(rel));
    prims.push_back(fe(k, 0));
  }
  // Reduce to an independent family of coefficient rows, primitives in step.
  std::vector<std::vector<QI>> kept;
  for (size_t j = 0; j < rows.size(); ++j) {
    bool zero = std::all_of(rows[j].begin(), rows[j].end(),
                            [](const QI& c) { return c.is_zero(); });
    if (zero) continue;
    std::vector<std::vector<QI>> mat(n);
    for (size_t a = 0; a < n; ++a) {
      mat[a].reserve(kept.size());
      for (const auto& kr : kept) mat[a].push_back(kr[a]);
    }
    std::vector<QI> x;
    if (!kept.empty() && solve_linear(mat, rows[j], x)) continue;
    kept.push_back(rows[j]);
    out.coefficient_basis.push_back(rows[j]);
    out.primitives.push_back(prims[j]);
  }
  return out;
}

}  // namespace sp4reduce
