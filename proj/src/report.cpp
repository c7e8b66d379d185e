#include "kuelsh/report.hpp"

#include <json.hpp>
#include <sstream>

#include "kuelsh/errors.hpp"

namespace kuelsh {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json invariants_json(const QuotientInvariants& q) {
  ordered_json j;
  j["total_dim"] = q.total_dim;
  j["radical_power_dims"] = q.radical_power_dims;
  j["socle_dim"] = q.socle_dim;
  j["nilpotency_index"] = q.nilpotency_index;
  return j;
}

QuotientInvariants invariants_from_json(const ordered_json& j) {
  QuotientInvariants q;
  q.total_dim = j.at("total_dim").get<size_t>();
  q.radical_power_dims = j.at("radical_power_dims").get<std::vector<size_t>>();
  q.socle_dim = j.at("socle_dim").get<size_t>();
  q.nilpotency_index = j.at("nilpotency_index").get<size_t>();
  return q;
}

}  // namespace

std::string render(const AnalysisReport& r, ReportFormat format) {
  if (format == ReportFormat::Json) {
    ordered_json j;
    j["schema"] = r.schema;
    ordered_json params;
    params["family"] = r.family;
    if (r.family == "2B") {
      params["k"] = r.k;
      params["s"] = r.s;
      params["a"] = r.a;
      params["c"] = r.c;
    } else if (r.family == "3A") {
      params["d"] = r.d;
    }
    j["params"] = params;
    j["field"] = r.field;
    j["p"] = r.p;
    j["dim"] = r.dim;
    ordered_json cart = ordered_json::array();
    for (size_t i = 0; i < r.cartan.rows; ++i) {
      ordered_json row = ordered_json::array();
      for (size_t jj = 0; jj < r.cartan.cols; ++jj)
        row.push_back((int64_t)r.cartan(i, jj));
      cart.push_back(row);
    }
    j["cartan"] = cart;
    {
      ordered_json divs = ordered_json::array();
      for (const auto& d : r.cartan_divisors) divs.push_back((int64_t)d);
      j["cartan_divisors"] = divs;
    }
    j["cartan_det"] = (int64_t)r.cartan_det;
    j["center_dim"] = r.center_dim;
    j["center_basis"] = r.center_basis;
    j["commutator_dim"] = r.commutator_dim;
    ordered_json socle = ordered_json::array();
    for (const auto& [lbl, val] : r.form_socle_values) {
      ordered_json e;
      e["element"] = lbl;
      e["value"] = val;
      socle.push_back(e);
    }
    j["form_socle_values"] = socle;
    ordered_json ladder = ordered_json::array();
    for (const auto& step : r.ladder) {
      ordered_json e;
      e["n"] = step.n;
      e["t_dim"] = step.t_dim;
      e["t_mod_comm_dim"] = step.t_mod_comm_dim;
      e["tperp_dim"] = step.tperp_dim;
      e["tperp_basis"] = step.tperp_basis;
      e["quotient"] = invariants_json(step.quotient);
      ladder.push_back(e);
    }
    j["ladder"] = ladder;
    j["reynolds_dim"] = r.reynolds_dim;
    j["t1perp_mod_reynolds_dim"] = r.t1perp_mod_reynolds_dim;
    j["loewy_length"] = r.loewy_length;
    j["small_params"] = r.small_params;
    j["expectation_status"] = r.expectation_status;
    ordered_json checks = ordered_json::array();
    for (const auto& c : r.checks) {
      ordered_json e;
      e["name"] = c.name;
      e["expected"] = c.expected;
      e["computed"] = c.computed;
      e["ok"] = c.ok;
      checks.push_back(e);
    }
    j["checks"] = checks;
    j["notes"] = r.notes;
    return j.dump(2) + "\n";
  }

  std::ostringstream out;
  out << "instance: " << r.family;
  if (r.family == "2B")
    out << "(k=" << r.k << ", s=" << r.s << ", a=" << r.a << ", c=" << r.c << ")";
  else if (r.family == "3A")
    out << "(d=" << r.d << ")";
  out << " over " << r.field << "\n";
  out << "dim " << r.dim << ", center " << r.center_dim << ", commutators " << r.commutator_dim
      << ", loewy length " << r.loewy_length << "\n";
  out << "cartan:";
  for (size_t i = 0; i < r.cartan.rows; ++i) {
    out << " [";
    for (size_t jj = 0; jj < r.cartan.cols; ++jj)
      out << (jj ? " " : "") << r.cartan(i, jj);
    out << "]";
  }
  out << "  det " << r.cartan_det << "  divisors";
  for (const auto& d : r.cartan_divisors) out << " " << d;
  out << "\n";
  out << "form socle values:";
  for (const auto& [lbl, val] : r.form_socle_values) out << "  psi(" << lbl << ")=" << val;
  out << "\n";
  for (const auto& step : r.ladder) {
    out << "n=" << step.n << ": dim T_n=" << step.t_dim << " (mod commutators "
        << step.t_mod_comm_dim << "), dim T_n^perp=" << step.tperp_dim << ", quotient dim "
        << step.quotient.total_dim << " socle " << step.quotient.socle_dim << "\n";
    out << "  T_n^perp basis:";
    for (const auto& b : step.tperp_basis) out << "  " << b;
    out << "\n";
  }
  out << "reynolds dim " << r.reynolds_dim << ", T_1^perp/R dim " << r.t1perp_mod_reynolds_dim
      << "\n";
  if (r.small_params) out << "note: (k,s)=(1,3) carries no normalization claims\n";
  for (const auto& n : r.notes) out << "note: " << n << "\n";
  out << "expectation: " << r.expectation_status << "\n";
  for (const auto& c : r.checks)
    if (!c.ok)
      out << "  MISMATCH " << c.name << ": expected " << c.expected << ", computed " << c.computed
          << "\n";
  return out.str();
}

AnalysisReport parse_report_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  AnalysisReport r;
  r.schema = j.at("schema").get<std::string>();
  if (r.schema != "kuelsh/1") fail(Errc::BadInput, "unknown report schema");
  const auto& params = j.at("params");
  r.family = params.at("family").get<std::string>();
  if (r.family == "2B") {
    r.k = params.at("k").get<int>();
    r.s = params.at("s").get<int>();
    r.a = params.at("a").get<std::string>();
    r.c = params.at("c").get<std::string>();
  } else if (r.family == "3A") {
    r.d = params.at("d").get<std::string>();
  }
  r.field = j.at("field").get<std::string>();
  r.p = j.at("p").get<int64_t>();
  r.dim = j.at("dim").get<size_t>();
  const auto& cart = j.at("cartan");
  r.cartan = IntMatrix(cart.size(), cart.empty() ? 0 : cart[0].size());
  for (size_t i = 0; i < cart.size(); ++i)
    for (size_t jj = 0; jj < cart[i].size(); ++jj) r.cartan(i, jj) = cart[i][jj].get<int64_t>();
  for (const auto& d : j.at("cartan_divisors")) r.cartan_divisors.push_back(d.get<int64_t>());
  r.cartan_det = j.at("cartan_det").get<int64_t>();
  r.center_dim = j.at("center_dim").get<size_t>();
  r.center_basis = j.at("center_basis").get<std::vector<std::string>>();
  r.commutator_dim = j.at("commutator_dim").get<size_t>();
  for (const auto& e : j.at("form_socle_values"))
    r.form_socle_values.emplace_back(e.at("element").get<std::string>(),
                                     e.at("value").get<std::string>());
  for (const auto& e : j.at("ladder")) {
    LadderEntry step;
    step.n = e.at("n").get<unsigned>();
    step.t_dim = e.at("t_dim").get<size_t>();
    step.t_mod_comm_dim = e.at("t_mod_comm_dim").get<size_t>();
    step.tperp_dim = e.at("tperp_dim").get<size_t>();
    step.tperp_basis = e.at("tperp_basis").get<std::vector<std::string>>();
    step.quotient = invariants_from_json(e.at("quotient"));
    r.ladder.push_back(std::move(step));
  }
  r.reynolds_dim = j.at("reynolds_dim").get<size_t>();
  r.t1perp_mod_reynolds_dim = j.at("t1perp_mod_reynolds_dim").get<int>();
  r.loewy_length = j.at("loewy_length").get<size_t>();
  r.small_params = j.at("small_params").get<bool>();
  r.expectation_status = j.at("expectation_status").get<std::string>();
  for (const auto& e : j.at("checks")) {
    ExpectationCheck c;
    c.name = e.at("name").get<std::string>();
    c.expected = e.at("expected").get<std::string>();
    c.computed = e.at("computed").get<std::string>();
    c.ok = e.at("ok").get<bool>();
    r.checks.push_back(std::move(c));
  }
  r.notes = j.at("notes").get<std::vector<std::string>>();
  return r;
}

}  // namespace kuelsh
