#include "kuelsh/verify.hpp"

#include <sstream>

#include "kuelsh/errors.hpp"

namespace kuelsh {

namespace {

std::string fp_string(const QuotientInvariants& q) {
  std::ostringstream s;
  s << "dim " << q.total_dim << ", rad [";
  for (size_t i = 0; i < q.radical_power_dims.size(); ++i)
    s << (i ? " " : "") << q.radical_power_dims[i];
  s << "], socle " << q.socle_dim << ", nilpotency " << q.nilpotency_index;
  return s.str();
}

std::string matrix_string(const IntMatrix& m) {
  std::ostringstream s;
  for (size_t i = 0; i < m.rows; ++i) {
    s << (i ? " [" : "[");
    for (size_t j = 0; j < m.cols; ++j) s << (j ? " " : "") << m(i, j);
    s << "]";
  }
  return s.str();
}

}  // namespace

Analysis analyze(StructureAlgebra algebra, unsigned n_max) {
  Analysis an{std::move(algebra), {}, {}, {}, {}, 0};
  an.form = build_trace_form(an.algebra);
  an.ladder = kulshammer_ladder(an.algebra, an.form, n_max);
  for (const auto& step : an.ladder.steps)
    an.quotients.push_back(quotient_invariants(an.algebra, an.ladder.center, step.t_perp));
  IntMatrix cartan = an.algebra.cartan_matrix();
  an.cartan_divisors = smith_normal_form(cartan);
  an.cartan_det = 1;
  for (const auto& d : an.cartan_divisors) an.cartan_det *= d;
  if (an.cartan_divisors.size() < std::min(cartan.rows, cartan.cols)) an.cartan_det = 0;
  return an;
}

std::vector<ExpectationCheck> compare_expected(const Analysis& an, const Expectation& e) {
  std::vector<ExpectationCheck> checks;
  const StructureAlgebra& A = an.algebra;
  auto add = [&](const std::string& name, const std::string& expected,
                 const std::string& computed) {
    checks.push_back({name, expected, computed, expected == computed});
  };

  if (e.structural_covered) {
    add("dim", std::to_string(e.dim), std::to_string(A.dim()));
    add("cartan", matrix_string(e.cartan), matrix_string(A.cartan_matrix()));
    {
      std::ostringstream ex, co;
      ex << e.cartan_det;
      co << an.cartan_det;
      add("cartan_det", ex.str(), co.str());
    }
    add("center_dim", std::to_string(e.center_dim), std::to_string(an.ladder.center.dim()));
  }
  if (e.t1_covered && an.ladder.steps.size() > 1) {
    size_t computed = an.ladder.steps[1].t.dim() - an.ladder.steps[0].t.dim();
    add("dim_t1_mod_comm [" + e.t1_case + "]", std::to_string(e.dim_t1_mod_comm),
        std::to_string(computed));
  }
  if (e.t1_perp_covered && an.ladder.steps.size() > 1) {
    const auto& step = an.ladder.steps[1];
    add("t1_perp_dim", std::to_string(e.t1_perp_dim), std::to_string(step.t_perp.dim()));
    // span comparison of the closed-form basis against the computed ideal
    std::vector<std::vector<FieldElement>> rows;
    for (const auto& sum : e.t1_perp_basis) rows.push_back(eval_terms(A, sum));
    Subspace span = Subspace::span(A.spec(), A.dim(), rows);
    bool equal = span == step.t_perp;
    checks.push_back({"t1_perp_span", "closed-form basis spans the computed ideal",
                      equal ? "equal" : "different subspace", equal});
    add("quotient_fp [" + e.quotient_tag + "]", fp_string(e.quotient_fp),
        fp_string(an.quotients[1]));
  }
  if (e.t1perp_mod_reynolds_dim >= 0 && an.ladder.steps.size() > 1) {
    add("t1perp_mod_reynolds_dim", std::to_string(e.t1perp_mod_reynolds_dim),
        std::to_string(an.ladder.steps[1].t_perp.dim() - an.ladder.reynolds.dim()));
  }
  return checks;
}

namespace {

AnalysisReport report_from_analysis(const Analysis& an, const Expectation* e) {
  const StructureAlgebra& A = an.algebra;
  AnalysisReport r;
  r.field = A.spec().description();
  r.p = A.spec().characteristic();
  r.dim = A.dim();
  r.cartan = A.cartan_matrix();
  r.cartan_divisors = an.cartan_divisors;
  r.cartan_det = an.cartan_det;
  r.center_dim = an.ladder.center.dim();
  for (size_t i = 0; i < an.ladder.center.dim(); ++i)
    r.center_basis.push_back(A.element_to_string(an.ladder.center.basis().row(i)));
  Subspace comm = an.ladder.steps.empty() ? A.commutator_subspace() : an.ladder.steps[0].t;
  r.commutator_dim = comm.dim();
  for (const auto& sv : an.form.socle_elements())
    r.form_socle_values.emplace_back(A.element_to_string(sv), an.form.apply(sv).to_string());
  for (size_t i = 0; i < an.ladder.steps.size(); ++i) {
    const auto& step = an.ladder.steps[i];
    LadderEntry entry;
    entry.n = step.n;
    entry.t_dim = step.t.dim();
    entry.t_mod_comm_dim = step.t.dim() - comm.dim();
    entry.tperp_dim = step.t_perp.dim();
    for (size_t b = 0; b < step.t_perp.dim(); ++b)
      entry.tperp_basis.push_back(A.element_to_string(step.t_perp.basis().row(b)));
    entry.quotient = an.quotients[i];
    r.ladder.push_back(std::move(entry));
  }
  r.reynolds_dim = an.ladder.reynolds.dim();
  if (an.ladder.steps.size() > 1)
    r.t1perp_mod_reynolds_dim =
        (int)(an.ladder.steps[1].t_perp.dim() - an.ladder.reynolds.dim());
  r.loewy_length = A.loewy_length();
  if (e) {
    r.small_params = e->small_params;
    r.notes = e->notes;
  }
  return r;
}

}  // namespace

AnalysisReport analyze_family_instance(const FamilyParams& params, unsigned n_max,
                                       Analysis* out) {
  params.validate();
  StructureAlgebra A = build_family(params);
  if (n_max == 0) n_max = default_ladder_depth(A);
  Analysis an = analyze(std::move(A), n_max);
  Expectation e = expected(params);
  AnalysisReport r = report_from_analysis(an, &e);
  r.family = params.family == Family::Q2B ? "2B" : "3A";
  if (params.family == Family::Q2B) {
    r.k = params.k;
    r.s = params.s;
    r.a = params.a.to_string();
    r.c = params.c.to_string();
  } else {
    r.d = params.d.to_string();
  }
  r.checks = compare_expected(an, e);
  bool any = false, allok = true;
  for (const auto& c : r.checks) {
    any = true;
    allok = allok && c.ok;
  }
  if (!any)
    r.expectation_status = "uncovered";
  else
    r.expectation_status = allok ? "match" : "mismatch";
  if (!e.uncovered_reason.empty()) r.notes.push_back(e.uncovered_reason);
  if (out) *out = std::move(an);
  return r;
}

AnalysisReport analyze_custom_instance(const QuiverPresentation& q, size_t loewy_bound,
                                       unsigned n_max) {
  StructureAlgebra A = build_quotient(q, loewy_bound);
  if (n_max == 0) n_max = default_ladder_depth(A);
  Analysis an = analyze(std::move(A), n_max);
  AnalysisReport r = report_from_analysis(an, nullptr);
  r.family = "custom";
  r.expectation_status = "uncovered";
  return r;
}

std::vector<FamilyParams> verification_grid(bool full) {
  std::vector<FamilyParams> grid;
  FieldSpec gf2 = FieldSpec::prime(2);
  FieldSpec gf4 = FieldSpec::extension(2, Poly{{1, 1, 1}});
  FieldSpec rat = FieldSpec::rational_function(2);

  auto add2b = [&](int k, int s, const FieldSpec& K, const std::string& a,
                   const std::string& c) {
    FamilyParams p;
    p.family = Family::Q2B;
    p.k = k;
    p.s = s;
    p.field = K;
    p.a = parse_element(K, a);
    p.c = parse_element(K, c);
    grid.push_back(std::move(p));
  };
  std::vector<std::pair<int, int>> ks;
  if (full) {
    for (int k = 1; k <= 3; ++k)
      for (int s = 3; s <= 5; ++s) ks.emplace_back(k, s);
  } else {
    ks = {{1, 3}, {1, 4}, {2, 3}, {2, 4}};
  }
  for (auto [k, s] : ks) {
    for (const char* c : {"0", "1"}) add2b(k, s, gf2, "1", c);
    if (full) {
      for (const char* a : {"1", "g"})
        for (const char* c : {"0", "1"}) add2b(k, s, gf4, a, c);
      for (const char* a : {"1", "t"})
        for (const char* c : {"0", "1", "t"}) add2b(k, s, rat, a, c);
    } else {
      add2b(k, s, gf4, "g", "1");
      add2b(k, s, rat, "t", "t");
    }
  }
  auto add3a = [&](const FieldSpec& K, const std::string& d) {
    FamilyParams p;
    p.family = Family::Q3A;
    p.field = K;
    p.d = parse_element(K, d);
    grid.push_back(std::move(p));
  };
  add3a(gf4, "g");
  add3a(gf4, "g+1");
  add3a(rat, "t");
  return grid;
}

}  // namespace kuelsh
