// Acceptance suite: runs every verification criterion at its stated tolerance
// (everything here is exact) and prints one PASS/FAIL line per criterion.
// Returns the number of failing criteria.

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "kuelsh/errors.hpp"
#include "kuelsh/verify.hpp"

using namespace kuelsh;

namespace {

FieldSpec gf2() { return FieldSpec::prime(2); }
FieldSpec gf4() { return FieldSpec::extension(2, Poly{{1, 1, 1}}); }
FieldSpec rat2() { return FieldSpec::rational_function(2); }
FieldSpec rat3() { return FieldSpec::rational_function(3); }

FamilyParams q2b(int k, int s, const FieldSpec& K, const std::string& a, const std::string& c) {
  FamilyParams p;
  p.family = Family::Q2B;
  p.k = k;
  p.s = s;
  p.field = K;
  p.a = parse_element(K, a);
  p.c = parse_element(K, c);
  return p;
}

FamilyParams q3a(const FieldSpec& K, const std::string& d) {
  FamilyParams p;
  p.family = Family::Q3A;
  p.field = K;
  p.d = parse_element(K, d);
  return p;
}

struct Criterion {
  int number;
  std::string name;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  bool passed() const { return failures.empty(); }
};

std::vector<std::pair<int, int>> ks_grid() {
  std::vector<std::pair<int, int>> g;
  for (int k = 1; k <= 3; ++k)
    for (int s = 3; s <= 5; ++s) g.emplace_back(k, s);
  return g;
}

// criterion 1: structural oracle over GF(2) and GF(4)
Criterion criterion1() {
  Criterion c{1, "structural oracle for the two-loop family", {}};
  for (const auto& K : {gf2(), gf4()}) {
    for (auto [k, s] : ks_grid()) {
      for (const char* cc : {"0", "1"}) {
        auto p = q2b(k, s, K, "1", cc);
        StructureAlgebra A = build_family(p);
        std::string tag = p.describe();
        c.expect(A.dim() == (size_t)(9 * k + s), tag + ": dim");
        auto cm = A.cartan_matrix();
        c.expect(cm(0, 0) == 4 * k && cm(0, 1) == 2 * k && cm(1, 0) == 2 * k &&
                     cm(1, 1) == k + s,
                 tag + ": cartan");
        auto divisors = smith_normal_form(cm);
        cpp_int det = 1;
        for (const auto& d : divisors) det *= d;
        c.expect(divisors.size() == 2 && det == 4 * k * s, tag + ": cartan det");
        c.expect(A.center().dim() == (size_t)(k + s + 2), tag + ": center dim");
        bool assoc = true;
        try {
          A.verify_associativity();
        } catch (const Error&) {
          assoc = false;
        }
        c.expect(assoc, tag + ": associativity");
      }
    }
  }
  return c;
}

// criterion 2: the closed-form center basis spans the computed center
Criterion criterion2() {
  Criterion c{2, "center basis of the two-loop family", {}};
  for (const auto& K : {gf2(), gf4()}) {
    for (auto [k, s] : ks_grid()) {
      auto p = q2b(k, s, K, "1", "1");
      StructureAlgebra A = build_family(p);
      auto Z = A.center();
      std::vector<std::vector<FieldElement>> elems;
      bool members = true;
      auto push = [&](const std::string& expr) {
        auto v = eval_path_expr(A, expr);
        members = members && Z.contains(v);
        elems.push_back(std::move(v));
      };
      push("eta - (alpha.beta.gamma)^" + std::to_string(k - 1) + ".alpha");
      for (int t = 2; t <= s; ++t) push("eta^" + std::to_string(t));
      for (int u = 1; u <= k - 1; ++u) {
        std::string uu = std::to_string(u);
        push("(alpha.beta.gamma)^" + uu + " + (beta.gamma.alpha)^" + uu +
             " + (gamma.alpha.beta)^" + uu);
      }
      push("1");
      push("(alpha.beta.gamma)^" + std::to_string(k));
      push("alpha^2");
      std::string tag = p.describe();
      c.expect(members, tag + ": listed elements central");
      auto span = Subspace::span(K, A.dim(), elems);
      c.expect(span.dim() == (size_t)(k + s + 2), tag + ": rank k+s+2");
      c.expect(span == Z, tag + ": spans the center");
    }
  }
  return c;
}

struct GridRecord {
  FamilyParams params;
  size_t t1perp_dim = 0;
  QuotientInvariants q1;
  std::vector<size_t> deep_perp_dims;  // n >= 2
};

// criteria 3 and 7 share one sweep over the characteristic-2 grid
void sweep_grid(Criterion& c3, Criterion& c7, std::vector<GridRecord>& records) {
  std::vector<FamilyParams> grid;
  for (auto [k, s] : ks_grid()) {
    for (const char* c : {"0", "1"}) grid.push_back(q2b(k, s, gf2(), "1", c));
    for (const char* a : {"1", "g"})
      for (const char* c : {"0", "1"}) grid.push_back(q2b(k, s, gf4(), a, c));
    for (const char* a : {"1", "t"})
      for (const char* c : {"0", "1", "t"}) grid.push_back(q2b(k, s, rat2(), a, c));
  }
  for (const auto& p : grid) {
    std::string tag = p.describe();
    Analysis analysis;
    const Analysis* an = &analysis;
    AnalysisReport r = analyze_family_instance(p, 0, &analysis);
    for (const auto& chk : r.checks)
      c3.expect(chk.ok,
                tag + ": " + chk.name + " expected " + chk.expected + " got " + chk.computed);
    c3.expect(r.expectation_status == "match", tag + ": overall status");

    // ladder properties (the library re-verifies most of these on build)
    const auto& L = an->ladder;
    const auto& A = an->algebra;
    for (size_t i = 0; i < L.steps.size(); ++i) {
      c7.expect(L.steps[i].t.dim() + L.steps[i].t_perp.dim() == A.dim(),
                tag + ": duality at n=" + std::to_string(i));
      if (i) {
        c7.expect(L.steps[i].t.contains(L.steps[i - 1].t), tag + ": ascending chain");
        c7.expect(L.steps[i - 1].t_perp.contains(L.steps[i].t_perp), tag + ": descending chain");
        for (size_t zi = 0; zi < L.center.dim(); ++zi)
          for (size_t ti = 0; ti < L.steps[i].t_perp.dim(); ++ti)
            c7.expect(L.steps[i].t_perp.contains(A.multiply(L.center.basis().row(zi),
                                                            L.steps[i].t_perp.basis().row(ti))),
                      tag + ": ideal property at n=" + std::to_string(i));
      }
    }
    c7.expect(L.steps.back().t_perp == L.reynolds, tag + ": stabilization at the Reynolds ideal");
    c7.expect(L.reynolds == L.center.intersect(A.socle()), tag + ": Reynolds ideal shape");
    const auto& G = an->form.gram();
    bool sym = true;
    for (size_t i = 0; i < G.rows() && sym; ++i)
      for (size_t j = i + 1; j < G.cols() && sym; ++j) sym = G(i, j) == G(j, i);
    c7.expect(sym, tag + ": form symmetric");
    auto [rr, rank] = rref(G);
    c7.expect(rank == A.dim(), tag + ": form nondegenerate");
    bool vanishes = true;
    for (size_t i = 0; i < L.steps[0].t.dim(); ++i)
      vanishes = vanishes && an->form.apply(L.steps[0].t.basis().row(i)).is_zero();
    c7.expect(vanishes, tag + ": form vanishes on commutators");

    GridRecord rec;
    rec.params = p;
    rec.t1perp_dim = L.steps[1].t_perp.dim();
    rec.q1 = an->quotients[1];
    for (size_t n = 2; n < L.steps.size(); ++n)
      rec.deep_perp_dims.push_back(L.steps[n].t_perp.dim());
    records.push_back(std::move(rec));
  }

  // deep rungs do not depend on (a, c)
  std::map<std::string, std::vector<std::pair<std::string, std::vector<size_t>>>> by_ks_field;
  for (const auto& rec : records) {
    std::string key = std::to_string(rec.params.k) + "," + std::to_string(rec.params.s) + "," +
                      rec.params.field.description();
    by_ks_field[key].emplace_back(rec.params.describe(), rec.deep_perp_dims);
  }
  for (const auto& [key, entries] : by_ks_field)
    for (size_t i = 1; i < entries.size(); ++i)
      c7.expect(entries[i].second == entries[0].second,
                "deep rungs differ between " + entries[0].first + " and " + entries[i].first);
}

// criterion 4: parameter separation over GF(2) per the dimension casework
Criterion criterion4(const std::vector<GridRecord>& records) {
  Criterion c{4, "parameter separation between c=1 and c=0 over GF(2)", {}};
  for (auto [k, s] : ks_grid()) {
    const GridRecord* rec0 = nullptr;
    const GridRecord* rec1 = nullptr;
    for (const auto& r : records) {
      if (r.params.k != k || r.params.s != s) continue;
      if (r.params.field.kind() != FieldKind::Prime) continue;
      if (r.params.c.is_zero())
        rec0 = &r;
      else
        rec1 = &r;
    }
    if (!rec0 || !rec1) {
      c.expect(false, "missing grid records");
      continue;
    }
    size_t diff = rec0->q1.total_dim > rec1->q1.total_dim
                      ? rec0->q1.total_dim - rec1->q1.total_dim
                      : rec1->q1.total_dim - rec0->q1.total_dim;
    // over GF(2) both a and c are squares: the dimensions differ exactly when
    // the alpha coordinate leaves T_1, which happens for odd k with odd s;
    // for even k the square-c solution keeps the dimension equal
    size_t want = (k % 2 == 1 && s % 2 == 1) ? 1 : 0;
    std::ostringstream tag;
    tag << "(k=" << k << ",s=" << s << "): |dim difference| = " << diff << ", stated " << want;
    c.expect(diff == want, tag.str());
  }
  return c;
}

// criterion 5: the three-simple values as printed in the classification
Criterion criterion5(Criterion& c7) {
  Criterion c{5, "three simple modules", {}};
  for (const char* d : {"g", "g+1"}) {
    auto p = q3a(gf4(), d);
    Analysis analysis;
    const Analysis* an = &analysis;
    analyze_family_instance(p, 0, &analysis);
    size_t rel = an->ladder.steps[1].t_perp.dim() - an->ladder.reynolds.dim();
    c.expect(rel == 1,
             p.describe() + ": dim T_1^perp/R = " + std::to_string(rel) + ", stated 1");
    c.expect(an->quotients[1].total_dim == 2 && an->quotients[1].socle_dim == 1,
             p.describe() + ": quotient fingerprint K[y]/y^2");
    c7.expect(an->ladder.steps.back().t_perp == an->ladder.reynolds,
              p.describe() + ": stabilization");
  }
  {
    auto p = q3a(rat2(), "t");
    Analysis analysis;
    const Analysis* an = &analysis;
    analyze_family_instance(p, 0, &analysis);
    size_t rel = an->ladder.steps[1].t_perp.dim() - an->ladder.reynolds.dim();
    // stated value 0; the computed value is 2 because T_1 always contains the
    // socle class (see the analysis notes shipped with this repository)
    c.expect(rel == 0,
             p.describe() + ": dim T_1^perp/R = " + std::to_string(rel) + ", stated 0");
    c7.expect(an->ladder.steps.back().t_perp == an->ladder.reynolds,
              p.describe() + ": stabilization");
  }
  return c;
}

// criterion 6: the cube detection over GF(3)(t)
Criterion criterion6(Criterion& c7) {
  Criterion c{6, "cube detection at p=3", {}};
  std::vector<size_t> dims;
  for (const char* a : {"t", "1"}) {
    auto p = q2b(1, 3, rat3(), a, "0");
    Analysis analysis;
    const Analysis* an = &analysis;
    analyze_family_instance(p, 0, &analysis);
    dims.push_back(an->ladder.steps[1].t.dim() - an->ladder.steps[0].t.dim());
    c7.expect(an->ladder.steps.back().t_perp == an->ladder.reynolds,
              p.describe() + ": stabilization");
    c7.expect(an->ladder.steps[1].t.dim() + an->ladder.steps[1].t_perp.dim() ==
                  an->algebra.dim(),
              p.describe() + ": duality");
  }
  c.expect(dims[1] == dims[0] + 1, "dim T_1/[A,A] for a=1 vs a=t differs by " +
                                       std::to_string(dims[1] - dims[0]) + ", stated 1");
  return c;
}

// criterion 8: rescaling witnesses over GF(4)
Criterion criterion8() {
  Criterion c{8, "arrow rescaling witnesses over GF(4)", {}};
  for (auto [k, s] : {std::pair{1, 4}, std::pair{2, 3}}) {
    for (const char* a : {"1", "g", "g+1"}) {
      auto from = q2b(k, s, gf4(), a, "0");
      auto to = q2b(k, s, gf4(), "1", "0");
      auto w = arrow_rescaling(from, to);
      std::ostringstream tag;
      tag << "(k=" << k << ",s=" << s << ",a=" << a << "): witness "
          << (w ? "found and verified" : "not found");
      c.expect(w.has_value(), tag.str());
    }
  }
  return c;
}

// criterion 9: a perturbed c coefficient must break a criterion-3 comparison.
// A perturbation that lands in the same branch of the case table with the
// same data is an equivalent mutant (k=1 with even s, or a non-square c
// staying non-square): no comparison can see it, so those are skipped.
bool same_expectation_data(const Expectation& x, const Expectation& y) {
  if (x.t1_case != y.t1_case || x.dim_t1_mod_comm != y.dim_t1_mod_comm) return false;
  if (x.t1_perp_dim != y.t1_perp_dim || !(x.quotient_fp == y.quotient_fp)) return false;
  if (x.t1_perp_basis.size() != y.t1_perp_basis.size()) return false;
  for (size_t i = 0; i < x.t1_perp_basis.size(); ++i) {
    if (x.t1_perp_basis[i].size() != y.t1_perp_basis[i].size()) return false;
    for (size_t j = 0; j < x.t1_perp_basis[i].size(); ++j)
      if (x.t1_perp_basis[i][j] != y.t1_perp_basis[i][j]) return false;
  }
  return true;
}

Criterion criterion9() {
  Criterion c{9, "oracle sensitivity to a perturbed relation", {}};
  size_t detected = 0, equivalent = 0;
  for (auto [k, s] : ks_grid()) {
    for (const auto& [K, a, cc] : std::vector<std::tuple<FieldSpec, const char*, const char*>>{
             {gf2(), "1", "1"}, {gf4(), "g", "1"}, {rat2(), "1", "t"}}) {
      auto p = q2b(k, s, K, a, cc);
      auto mutated = p;
      mutated.c = p.c + FieldElement::one(K);
      if (same_expectation_data(expected(p), expected(mutated))) {
        ++equivalent;
        continue;
      }
      auto A = build_family_with_perturbed_c(p);
      unsigned depth = default_ladder_depth(A);
      auto an = analyze(std::move(A), depth);
      auto checks = compare_expected(an, expected(p));
      bool any_fail = false;
      for (const auto& chk : checks) any_fail = any_fail || !chk.ok;
      if (any_fail) ++detected;
      c.expect(any_fail, p.describe() + ": mutation not detected");
    }
  }
  c.expect(detected > 0, "no mutation was detected at all");
  c.name += " (" + std::to_string(detected) + " mutants detected, " +
            std::to_string(equivalent) + " equivalent skipped)";
  return c;
}

}  // namespace

int main() {
  std::vector<Criterion> results;
  Criterion c7{7, "ladder properties on every instance", {}};
  std::vector<GridRecord> records;

  results.push_back(criterion1());
  results.push_back(criterion2());
  Criterion c3{3, "characteristic-2 case table across the grid", {}};
  sweep_grid(c3, c7, records);
  results.push_back(std::move(c3));
  results.push_back(criterion4(records));
  results.push_back(criterion5(c7));
  results.push_back(criterion6(c7));
  results.push_back(std::move(c7));
  results.push_back(criterion8());
  results.push_back(criterion9());

  std::sort(results.begin(), results.end(),
            [](const Criterion& a, const Criterion& b) { return a.number < b.number; });
  int failed = 0;
  for (const auto& c : results) {
    bool ok = c.passed();
    std::printf("criterion %d: %s (%s)\n", c.number, ok ? "PASS" : "FAIL", c.name.c_str());
    if (!ok) {
      ++failed;
      size_t shown = 0;
      for (const auto& f : c.failures) {
        std::printf("    %s\n", f.c_str());
        if (++shown == 8 && c.failures.size() > 8) {
          std::printf("    ... and %zu more\n", c.failures.size() - 8);
          break;
        }
      }
    }
  }
  std::printf("%d of %zu criteria failing\n", failed, results.size());
  return failed;
}
