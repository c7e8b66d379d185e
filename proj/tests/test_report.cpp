#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kuelsh/verify.hpp"

using namespace kuelsh;

namespace {

FamilyParams q2b_1310() {
  FamilyParams p;
  p.family = Family::Q2B;
  p.k = 1;
  p.s = 3;
  p.field = FieldSpec::prime(2);
  p.a = FieldElement::one(p.field);
  p.c = FieldElement::zero(p.field);
  return p;
}

}  // namespace

TEST_CASE("empty report is valid json") {
  AnalysisReport r;
  r.family = "custom";
  r.expectation_status = "uncovered";
  auto text = render(r, ReportFormat::Json);
  auto back = parse_report_json(text);
  CHECK(back.ladder.empty());
  CHECK(render(back, ReportFormat::Json) == text);
}

TEST_CASE("cartan determinant appears in the rendered report") {
  auto r = analyze_family_instance(q2b_1310());
  auto text = render(r, ReportFormat::Json);
  CHECK(text.find("\"cartan_det\": 12") != std::string::npos);
  CHECK(text.find("\"schema\": \"kuelsh/1\"") != std::string::npos);
  CHECK(r.expectation_status == "match");
}

TEST_CASE("three-line nonsquare report carries the quotient dimension") {
  FamilyParams p;
  p.family = Family::Q3A;
  p.field = FieldSpec::rational_function(2);
  p.d = FieldElement::generator(p.field);
  auto r = analyze_family_instance(p);
  auto text = render(r, ReportFormat::Json);
  CHECK(text.find("\"t1perp_mod_reynolds_dim\": 2") != std::string::npos);
  CHECK(r.expectation_status == "match");
}

TEST_CASE("json round-trips losslessly") {
  auto r = analyze_family_instance(q2b_1310());
  auto text = render(r, ReportFormat::Json);
  auto back = parse_report_json(text);
  CHECK(render(back, ReportFormat::Json) == text);
  // and rendering is deterministic
  CHECK(render(r, ReportFormat::Json) == text);
}

TEST_CASE("text rendering mentions the headline numbers") {
  auto r = analyze_family_instance(q2b_1310());
  auto text = render(r, ReportFormat::Text);
  CHECK(text.find("dim 12") != std::string::npos);
  CHECK(text.find("center 6") != std::string::npos);
  CHECK(text.find("expectation: match") != std::string::npos);
}
