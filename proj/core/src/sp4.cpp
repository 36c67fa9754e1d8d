// Reduction inside sp(4): the five-direction table form, the abelianity
// decision with its certificate, and the integrand simplification of
// reduced forms.
//
// This file is part of sp4reduce, released under the MIT license.

#include "sp4reduce/sp4.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "sp4reduce/errors.hpp"

namespace sp4reduce {

namespace {

MatrixOverField unipotent12(const FieldPtr& k, const FieldElement& y1,
                            const FieldElement& y2) {
  const Sp4Basis& mb = sp4_basis();
  return MatrixOverField::identity(k, 4) + embed(k, mb.m1) * y1 +
         embed(k, mb.m2) * y2;
}

// Read the five slot entries of b into the table and report whether they
// reconstruct b exactly.
bool read_five(const MatrixOverField& b, TableForm& t) {
  const FieldPtr& k = b.field();
  const Sp4Basis& mb = sp4_basis();
  t.a12 = b.at(0, 1);
  t.a13 = b.at(0, 2);
  t.a14 = b.at(0, 3);
  t.a24 = b.at(1, 3);
  t.a22 = b.at(1, 1);
  MatrixOverField rebuilt = embed(k, mb.m1) * t.a12 + embed(k, mb.m2) * t.a14 +
                            embed(k, mb.m3) * t.a13 + embed(k, mb.ma) * t.a24 +
                            embed(k, mb.mm) * t.a22;
  return rebuilt == b;
}

void apply_side_gauge(TableForm& t, const MatrixOverField& q,
                      const MatrixOverField& a_n) {
  if (!is_symplectic(q))
    throw internal_error("table_form(): side gauge escaped Sp(4)");
  t.b = gauge(q, t.b);
  t.gauge_total = t.gauge_total * q;
  if (t.b != gauge(t.gauge_total, a_n))
    throw internal_error("table_form(): gauge composition failed to verify");
  if (!read_five(t.b, t))
    throw internal_error("table_form(): reclassified system left the table span");
}

// Solve for a primitive whose derivative matches the given constant
// coefficient vector inside the achievable space.
FieldElement combine_primitives(const IntegrableCombinations& ic,
                                const std::vector<QI>& target,
                                const FieldPtr& k) {
  size_t n = target.size();
  std::vector<std::vector<QI>> m(n);
  for (size_t r = 0; r < n; ++r) {
    m[r].resize(ic.coefficient_basis.size());
    for (size_t c = 0; c < ic.coefficient_basis.size(); ++c)
      m[r][c] = ic.coefficient_basis[c][r];
  }
  std::vector<QI> x;
  if (!solve_linear(m, target, x))
    throw internal_error("solve_abelian(): target left the achievable space");
  FieldElement out = fe(k, 0);
  for (size_t c = 0; c < x.size(); ++c)
    out += ic.primitives[c] * fe(k, x[c]);
  return out;
}

// Characteristic polynomial of multiplication by c modulo the squarefree q
// on Q(i)[t]/(q); its roots are the values of c at the roots of q.
Poly charpoly_mod(const Poly& c, const Poly& q) {
  int n = q.deg();
  std::vector<std::vector<QI>> a(n, std::vector<QI>(n));
  for (int j = 0; j < n; ++j) {
    Poly col = (c * Poly::monomial(QI(1), j)).divrem(q).second;
    for (int r = 0; r < n; ++r) a[r][j] = col.coeff(r);
  }
  auto mat_mul = [n](const std::vector<std::vector<QI>>& x,
                     const std::vector<std::vector<QI>>& y) {
    std::vector<std::vector<QI>> z(n, std::vector<QI>(n));
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s)
        for (int m = 0; m < n; ++m) z[r][s] += x[r][m] * y[m][s];
    return z;
  };
  // Faddeev-LeVerrier: p(z) = z^n + c_1 z^{n-1} + ... + c_n.
  std::vector<QI> cs(n + 1);
  cs[0] = QI(1);
  std::vector<std::vector<QI>> m = a;
  for (int step = 1; step <= n; ++step) {
    if (step > 1) {
      for (int r = 0; r < n; ++r) m[r][r] += cs[step - 1];
      m = mat_mul(a, m);
    }
    QI tr;
    for (int r = 0; r < n; ++r) tr += m[r][r];
    cs[step] = -(tr / QI(step));
  }
  std::vector<QI> coeffs(n + 1);
  for (int d = 0; d <= n; ++d) coeffs[d] = cs[n - d];
  return Poly(coeffs);
}

enum class CharOrder { Infinite, Finite, Unknown };

struct CharInfo {
  CharOrder kind = CharOrder::Unknown;
  long order = 0;
  std::string note;
};

// Order of the multiplicative character attached to exp(int r). The order
// is finite exactly when some power exp(m int r) lies in K; for a plain
// rational rate this is decided by the Hermite split and the residues,
// which are the eigenvalues of the residue function on the pole divisor.
CharInfo character_order(const FieldElement& r) {
  const FieldPtr& k = r.field();
  CharInfo out;
  if (r.has_radical_part() || !k->is_plain_weight()) {
    for (long m = 1; m <= 8; ++m) {
      if (exp_membership(r * fe(k, m))) {
        out.kind = CharOrder::Finite;
        out.order = m;
        out.note = "membership probe succeeded at order " + std::to_string(m);
        return out;
      }
    }
    out.note =
        "the rate has radical or twisted parts and membership probes up to "
        "order 8 found nothing";
    return out;
  }
  HermiteSplitResult hs = hermite_split(r);
  if (!hs.f.is_constant()) {
    out.kind = CharOrder::Infinite;
    out.note = "the primitive of the rate has a nonconstant rational summand";
    return out;
  }
  const RatFun& g = hs.g.base();
  if (g.is_zero()) {
    out.kind = CharOrder::Finite;
    out.order = 1;
    out.note = "the rate is an exact derivative";
    return out;
  }
  const Poly& q = g.den();
  XgcdResult inv = poly_xgcd(q.derivative(), q);
  if (inv.g != Poly(QI(1)))
    throw internal_error("character_order(): non-squarefree residue divisor");
  Poly residue_fun = (g.num() * inv.s).divrem(q).second;
  Poly rz = charpoly_mod(residue_fun, q);
  try {
    auto roots = rational_roots(rz);
    int total = 0;
    mpz_class m(1);
    for (const auto& root : roots) {
      total += root.second;
      mpz_class den = root.first.get_den();
      mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), den.get_mpz_t());
    }
    if (total == q.deg()) {
      if (!m.fits_slong_p()) {
        out.note = "residue denominators exceed the machine range";
        return out;
      }
      out.kind = CharOrder::Finite;
      out.order = m.get_si();
      out.note = "all residues of the rate are rational";
    } else {
      out.kind = CharOrder::Infinite;
      out.note = "a residue of the rate is not a rational number";
    }
  } catch (const bound_overflow&) {
    out.note = "the residue root search overflowed its bound";
  }
  return out;
}

// Kernel operator of a failed first-order problem d(y) = f y + g, g != 0:
// the rational solutions of (d - g'/g)(d - f) contain every candidate y.
DiffOp first_order_obstruction(const FieldPtr& k, const FieldElement& f,
                               const FieldElement& g) {
  if (g.is_zero())
    throw internal_error("first_order_obstruction(): homogeneous equation");
  DiffOp left(k, {-(g.derive() / g), fe(k, 1)});
  DiffOp right(k, {-f, fe(k, 1)});
  return rebase(left * right, plain_twin(k)).monic();
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Abelian:
      return "Abelian";
    case Verdict::NonAbelian:
      return "NonAbelian";
    default:
      return "Inconclusive";
  }
}

const char* to_string(TableKind k) {
  switch (k) {
    case TableKind::TrivialGN:
      return "TrivialGN";
    case TableKind::Additive:
      return "Additive";
    case TableKind::Multiplicative:
      return "Multiplicative";
    case TableKind::Borel:
      return "Borel";
    default:
      return "FullOrUnknown";
  }
}

const Sp4Basis& sp4_basis() {
  static const Sp4Basis b = [] {
    Sp4Basis s;
    s.m1 = ConstMatrix::unit(4, 0, 1) - ConstMatrix::unit(4, 3, 2);
    s.m2 = ConstMatrix::unit(4, 0, 3) + ConstMatrix::unit(4, 1, 2);
    s.m3 = ConstMatrix::unit(4, 0, 2);
    s.ma = ConstMatrix::unit(4, 1, 3);
    s.mm = ConstMatrix::unit(4, 1, 1) - ConstMatrix::unit(4, 3, 3);
    return s;
  }();
  return b;
}

MatrixOverField lift_reduction(const MatrixOverField& p2) {
  if (p2.rows() != 2 || p2.cols() != 2)
    throw shape_mismatch("lift_reduction(): core gauge must be 2x2");
  const FieldPtr& k = p2.field();
  FieldElement det =
      p2.at(0, 0) * p2.at(1, 1) - p2.at(0, 1) * p2.at(1, 0);
  if (det != fe(k, 1))
    throw domain_error("lift_reduction(): core gauge must have determinant 1");
  MatrixOverField p = MatrixOverField::identity(k, 4);
  p.at(1, 1) = p2.at(0, 0);
  p.at(1, 3) = p2.at(0, 1);
  p.at(3, 1) = p2.at(1, 0);
  p.at(3, 3) = p2.at(1, 1);
  if (!is_symplectic(p))
    throw internal_error("lift_reduction(): lift escaped Sp(4)");
  return p;
}

TableForm table_form(const MatrixOverField& a_n,
                     const ClassificationResult& cls, int degree_cap) {
  // The side-condition solvers are first order and derive their own exact
  // bounds; the cap only governed the classification that produced cls.
  (void)degree_cap;
  if (a_n.rows() != 4 || a_n.cols() != 4)
    throw shape_mismatch("table_form(): expected a normalized 4x4 system");
  const FieldPtr& k = a_n.field();
  const Sp4Basis& mb = sp4_basis();
  TableForm t;
  t.gauge_total = lift_reduction(cls.p);
  t.b = gauge(t.gauge_total, a_n);
  if (!is_hamiltonian(t.b))
    throw internal_error("table_form(): lifted system left sp(4)");
  switch (cls.kind) {
    case NveClassification::Finite:
      t.kind = TableKind::TrivialGN;
      break;
    case NveClassification::Additive:
      t.kind = TableKind::Additive;
      break;
    case NveClassification::Multiplicative:
      t.kind = TableKind::Multiplicative;
      break;
    case NveClassification::Borel:
      t.kind = TableKind::Borel;
      break;
    case NveClassification::FullOrUnknown:
      t.kind = TableKind::FullOrUnknown;
      break;
  }
  if (t.kind == TableKind::FullOrUnknown) {
    // The core block may fall outside the table span; keep the slots as
    // informative entries without claiming a decomposition.
    read_five(t.b, t);
    return t;
  }
  if (!read_five(t.b, t))
    throw internal_error("table_form(): reduced system left the table span");
  if (t.kind == TableKind::Additive) {
    if (t.a24.is_zero())
      throw internal_error("table_form(): additive core with zero a24");
    if (auto s = integrate_in_field(t.a24)) {
      MatrixOverField q =
          MatrixOverField::identity(k, 4) + embed(k, mb.ma) * *s;
      apply_side_gauge(t, q, a_n);
      t.kind = TableKind::TrivialGN;
      t.reclassified = true;
    }
  } else if (t.kind == TableKind::Multiplicative) {
    if (t.a22.is_zero())
      throw internal_error("table_form(): multiplicative core with zero a22");
    if (auto u = exp_membership(t.a22)) {
      MatrixOverField q(k, 4, 4);
      q.at(0, 0) = fe(k, 1);
      q.at(2, 2) = fe(k, 1);
      q.at(1, 1) = *u;
      q.at(3, 3) = u->inverse();
      apply_side_gauge(t, q, a_n);
      t.kind = TableKind::TrivialGN;
      t.reclassified = true;
    }
  }
  if (t.kind == TableKind::TrivialGN &&
      (!t.a24.is_zero() || !t.a22.is_zero()))
    throw internal_error("table_form(): trivial core kept a core coefficient");
  return t;
}

AbelianityCertificate solve_abelian(const TableForm& table, int degree_cap) {
  const FieldPtr& k = table.b.field();
  if (!k) throw domain_error("solve_abelian(): table without field");
  const Sp4Basis& mb = sp4_basis();
  AbelianityCertificate cert;
  cert.kind = table.kind;
  cert.gauge = MatrixOverField::identity(k, 4);
  cert.b_final = table.b;

  auto finish_abelian = [&](const MatrixOverField& p,
                            std::vector<std::string> names,
                            std::vector<ConstMatrix> span,
                            std::string detail) {
    cert.gauge = p;
    cert.b_final = gauge(p, table.b);
    cert.span_names = std::move(names);
    cert.span_basis = std::move(span);
    auto coords = matrix_in_span(cert.b_final, cert.span_basis);
    if (!coords)
      throw internal_error("solve_abelian(): reduced form escapes its span");
    cert.span_coefficients = std::move(*coords);
    for (size_t a = 0; a < cert.span_basis.size(); ++a)
      for (size_t b = a + 1; b < cert.span_basis.size(); ++b)
        if (!bracket(cert.span_basis[a], cert.span_basis[b]).is_zero())
          throw internal_error("solve_abelian(): certified span is not abelian");
    cert.span_abelian = true;
    cert.verdict = Verdict::Abelian;
    cert.detail = std::move(detail);
  };

  auto finish_nonabelian = [&](const DiffOp& op,
                               std::vector<ExponentReport> reports,
                               std::string detail) {
    cert.verdict = Verdict::NonAbelian;
    cert.obstruction = op;
    cert.obstruction_exponents = std::move(reports);
    cert.detail = std::move(detail);
  };

  switch (table.kind) {
    case TableKind::TrivialGN: {
      // The achievable coefficient space is defined over Q(i), so a rational
      // basis decides existence over every constant extension.
      IntegrableCombinations ic =
          integrable_combinations({table.a12, table.a14}, degree_cap);
      size_t dim = ic.coefficient_basis.size();
      if (dim > 2)
        throw internal_error("solve_abelian(): achievable space too large");
      if (dim == 2) {
        FieldElement y1 = combine_primitives(ic, {QI(1), QI(0)}, k);
        FieldElement y2 = combine_primitives(ic, {QI(0), QI(1)}, k);
        if (y1.derive() != table.a12 || y2.derive() != table.a14)
          throw internal_error("solve_abelian(): primitives fail to verify");
        cert.primitives = {y1, y2};
        finish_abelian(unipotent12(k, y1, y2), {"m3"}, {mb.m3},
                       "both unipotent coefficients integrate in K; the "
                       "algebra reduces to the line through m3");
      } else if (dim == 1) {
        const std::vector<QI>& c = ic.coefficient_basis[0];
        const FieldElement& f = ic.primitives[0];
        if (f.derive() !=
            table.a12 * fe(k, c[0]) + table.a14 * fe(k, c[1]))
          throw internal_error("solve_abelian(): primitive fails to verify");
        QI alpha1 = -c[1];
        QI alpha2 = c[0];
        FieldElement y1 = fe(k, 0);
        FieldElement y2 = fe(k, 0);
        if (!c[0].is_zero())
          y1 = f / fe(k, c[0]);
        else
          y2 = f / fe(k, c[1]);
        ConstMatrix d = mb.m1 * alpha1 + mb.m2 * alpha2;
        cert.primitives = {f};
        cert.alphas = {alpha1, alpha2};
        finish_abelian(
            unipotent12(k, y1, y2),
            {"(" + alpha1.str() + ")*m1 + (" + alpha2.str() + ")*m2", "m3"},
            {d, mb.m3},
            "a single constant combination of the unipotent coefficients "
            "integrates in K; one unipotent direction survives next to m3");
      } else {
        finish_nonabelian(
            ic.op, ic.exponents,
            "no nonzero constant combination of a12 and a14 has a primitive "
            "in K, so two unipotent directions persist and bracket to m3");
      }
      break;
    }
    case TableKind::Additive: {
      if (table.a24.is_zero())
        throw internal_error("solve_abelian(): additive table without core");
      if (auto y1 = integrate_in_field(table.a12)) {
        if (y1->derive() != table.a12)
          throw internal_error("solve_abelian(): primitive fails to verify");
        cert.primitives = {*y1};
        finish_abelian(unipotent12(k, *y1, fe(k, 0)), {"m2", "m3", "ma"},
                       {mb.m2, mb.m3, mb.ma},
                       "a12 integrates in K; the reduced form lies in the "
                       "abelian span of m2, m3 and ma");
        break;
      }
      IntegrableCombinations ic1 =
          integrable_combinations({table.a12, table.a24}, degree_cap);
      if (ic1.coefficient_basis.size() > 1 ||
          (ic1.coefficient_basis.size() == 1 &&
           ic1.coefficient_basis[0][0].is_zero()))
        throw internal_error(
            "solve_abelian(): a24 gained a primitive inside an additive table");
      if (ic1.coefficient_basis.empty()) {
        finish_nonabelian(
            ic1.op, ic1.exponents,
            "y1' = a12 - alpha1*a24 has no solution in K for any constant "
            "alpha1, so the unipotent direction m1 cannot be aligned with "
            "the additive core");
        break;
      }
      const std::vector<QI>& c1 = ic1.coefficient_basis[0];
      QI alpha1 = -(c1[1] / c1[0]);
      FieldElement y1 = ic1.primitives[0] / fe(k, c1[0]);
      if (y1.derive() != table.a12 - table.a24 * fe(k, alpha1))
        throw internal_error("solve_abelian(): primitive fails to verify");
      FieldElement rhs = table.a14 - table.a24 * y1;
      IntegrableCombinations ic2 =
          integrable_combinations({rhs, table.a24}, degree_cap);
      if (ic2.coefficient_basis.size() > 1 ||
          (ic2.coefficient_basis.size() == 1 &&
           ic2.coefficient_basis[0][0].is_zero()))
        throw internal_error(
            "solve_abelian(): a24 gained a primitive inside an additive table");
      if (ic2.coefficient_basis.empty()) {
        cert.primitives = {y1};
        cert.alphas = {alpha1};
        finish_nonabelian(
            ic2.op, ic2.exponents,
            "after y1' = a12 - alpha1*a24, the second step y2' = a14 - "
            "a24*y1 - alpha2*a24 has no solution in K for any constant "
            "alpha2");
        break;
      }
      const std::vector<QI>& c2 = ic2.coefficient_basis[0];
      QI alpha2 = -(c2[1] / c2[0]);
      FieldElement y2 = ic2.primitives[0] / fe(k, c2[0]);
      if (y2.derive() != rhs - table.a24 * fe(k, alpha2))
        throw internal_error("solve_abelian(): primitive fails to verify");
      ConstMatrix d = mb.ma + mb.m1 * alpha1 + mb.m2 * alpha2;
      cert.primitives = {y1, y2};
      cert.alphas = {alpha1, alpha2};
      finish_abelian(
          unipotent12(k, y1, y2),
          {"ma + (" + alpha1.str() + ")*m1 + (" + alpha2.str() + ")*m2",
           "m3"},
          {d, mb.m3},
          "two limited integrations align the unipotent block with the "
          "additive core; the reduced form lies in a two-dimensional "
          "abelian span");
      break;
    }
    case TableKind::Multiplicative: {
      if (table.a22.is_zero())
        throw internal_error(
            "solve_abelian(): multiplicative table without core");
      auto y1 = risch_solve(-table.a22, table.a12);
      if (!y1) {
        DiffOp op = first_order_obstruction(k, -table.a22, table.a12);
        finish_nonabelian(op, local_exponents(op),
                          "y1' = -a22*y1 + a12 has no solution in K");
        break;
      }
      auto y2 = risch_solve(table.a22, table.a14);
      if (!y2) {
        DiffOp op = first_order_obstruction(k, table.a22, table.a14);
        cert.primitives = {*y1};
        finish_nonabelian(op, local_exponents(op),
                          "y2' = a22*y2 + a14 has no solution in K");
        break;
      }
      if (y1->derive() != table.a12 - table.a22 * *y1 ||
          y2->derive() != table.a14 + table.a22 * *y2)
        throw internal_error("solve_abelian(): primitives fail to verify");
      cert.primitives = {*y1, *y2};
      finish_abelian(unipotent12(k, *y1, *y2), {"mm", "m3"}, {mb.mm, mb.m3},
                     "both first-order equations solve in K; the reduced "
                     "form lies in the abelian span of mm and m3");
      break;
    }
    case TableKind::Borel: {
      if (table.a22.is_zero())
        throw internal_error("solve_abelian(): triangular table without rate");
      CharInfo ci = character_order(table.a22);
      if (ci.kind == CharOrder::Infinite) {
        DiffOp op =
            rebase(DiffOp(k, {-table.a22, fe(k, 1)}), plain_twin(k)).monic();
        finish_nonabelian(
            op, local_exponents(op),
            "the core is triangular with an exponential direction of "
            "infinite character (" + ci.note +
                "); its semisimple and unipotent directions do not commute");
      } else if (ci.kind == CharOrder::Finite) {
        cert.detail =
            "the exponential core direction is algebraic over K (character "
            "order " + std::to_string(ci.order) +
            "); deciding abelianity needs the reduction over the matching "
            "radical extension, which is not part of the declared field";
      } else {
        cert.detail =
            "the character order of the core rate could not be decided: " +
            ci.note;
      }
      break;
    }
    case TableKind::FullOrUnknown: {
      cert.detail =
          "the core was not reduced: the search either proved "
          "irreducibility over K or stopped incomplete, and the "
          "system-level algebra stays undecided";
      break;
    }
  }
  return cert;
}

std::vector<SubalgebraFamily> subalgebra_report() {
  const Sp4Basis& mb = sp4_basis();
  std::vector<SubalgebraFamily> out;
  {
    SubalgebraFamily f;
    f.description =
        "trivial core: span(alpha1*m1 + alpha2*m2, m3), one family per "
        "constant ratio (alpha1 : alpha2)";
    f.names = {"alpha1*m1 + alpha2*m2", "m3"};
    f.basis = {mb.m1 + mb.m2, mb.m3};
    out.push_back(std::move(f));
  }
  {
    SubalgebraFamily f;
    f.description =
        "additive core with an integrable a12: span(m2, m3, ma)";
    f.names = {"m2", "m3", "ma"};
    f.basis = {mb.m2, mb.m3, mb.ma};
    out.push_back(std::move(f));
  }
  {
    SubalgebraFamily f;
    f.description =
        "additive core: span(ma + alpha1*m1 + alpha2*m2, m3)";
    f.names = {"ma + alpha1*m1 + alpha2*m2", "m3"};
    f.basis = {mb.ma + mb.m1 + mb.m2, mb.m3};
    out.push_back(std::move(f));
  }
  {
    SubalgebraFamily f;
    f.description =
        "multiplicative core: span(mm + alpha1*m1 + alpha2*m2, m3), "
        "conjugate to span(mm, m3) by id + alpha1*m1 - alpha2*m2";
    f.names = {"mm + alpha1*m1 + alpha2*m2", "m3"};
    f.basis = {mb.mm + mb.m1 + mb.m2, mb.m3};
    out.push_back(std::move(f));
  }
  return out;
}

SimplifyResult simplify_reduced(const MatrixOverField& b,
                                const std::vector<ConstMatrix>& span_basis) {
  const FieldPtr& k = b.field();
  if (!k) throw domain_error("simplify_reduced(): matrix without field");
  if (b.rows() != b.cols())
    throw shape_mismatch("simplify_reduced(): expected a square matrix");
  SimplifyResult out{b, MatrixOverField::identity(k, b.rows()), false};
  auto coords = matrix_in_span(b, span_basis);
  if (!coords)
    throw degenerate_input(
        "simplify_reduced(): matrix is not in the span of the given "
        "directions");
  // The gauge id + sum f_i n_i inverts to id - sum f_i n_i and shifts each
  // coefficient by an exact derivative only when all products of span
  // directions vanish; brackets alone would leave quadratic corrections.
  for (const auto& x : span_basis)
    for (const auto& y : span_basis)
      if (!(x * y).is_zero()) return out;
  std::vector<FieldElement> shifts;
  bool any = false;
  for (const auto& c : *coords) {
    FieldElement h = fe(k, 0);
    try {
      HermiteSplitResult hs = hermite_split(c);
      if (!hs.f.is_constant()) {
        h = hs.f;
        any = true;
      }
    } catch (const unsupported_field&) {
      // Radical or twisted coefficients keep their integrand untouched.
    }
    shifts.push_back(h);
  }
  if (!any) return out;
  MatrixOverField q = MatrixOverField::identity(k, b.rows());
  for (size_t j = 0; j < span_basis.size(); ++j)
    q = q + embed(k, span_basis[j]) * shifts[j];
  out.gauge = q;
  out.b = gauge(q, b);
  out.changed = true;
  auto after = matrix_in_span(out.b, span_basis);
  if (!after)
    throw internal_error("simplify_reduced(): gauge left the span");
  for (size_t j = 0; j < span_basis.size(); ++j)
    if ((*after)[j] != (*coords)[j] - shifts[j].derive())
      throw internal_error("simplify_reduced(): split failed to verify");
  return out;
}

}  // namespace sp4reduce
