#include <doctest.h>

#include <json.hpp>

#include "kslice/certificate.hpp"
#include "kslice/matspace.hpp"

using namespace kslice;
using nlohmann::json;

namespace {

VerifyOptions quick(std::uint64_t seed = 0) {
  VerifyOptions o;
  o.seed = seed;
  o.trials = 5;
  o.conjugation_trials = 3;
  o.equivariance_trials = 3;
  o.jacobian_points = 2;
  return o;
}

bool check_named(const json& cert, const std::string& name) {
  for (const auto& c : cert["checks"])
    if (c["name"] == name) return c["pass"].get<bool>();
  return false;
}

}  // namespace

TEST_CASE("verify") {
  auto r = cmd_verify(Family::GL, 2, 1, quick());
  CHECK(r.exit_code == kExitPass);
  json cert = json::parse(r.out);
  CHECK(cert["centralizer_dim"] == 1);
  CHECK(cert["passing"] == true);
  CHECK(cert["tool_version"] == "0.1.0");
  for (const char* name : {"e_in_g_minus", "e_nilpotent", "centralizer_dim_eq_rank",
                           "closed_form_match", "triple_relations", "f_regular", "h_in_g_plus",
                           "equivariance", "invariant_conjugation", "roundtrip", "separation"}) {
    CHECK_MESSAGE(check_named(cert, name), name);
  }

  r = cmd_verify(Family::SP, 3, 2, quick());
  CHECK(r.exit_code == kExitInputError);
  cert = json::parse(r.out);
  CHECK(cert["error"] == "ConstraintViolation");
  CHECK(cert["message"].get<std::string>().find("even") != std::string::npos);

  r = cmd_verify(Family::ORTH, 3, 3, quick());
  CHECK(r.exit_code == kExitPass);
  CHECK(json::parse(r.out)["centralizer_dim"] == 3);
}

TEST_CASE("o(1,1) has no sl2-triple and its certificate says so") {
  const Certificate c = run_verify(Family::ORTH, 1, 1, quick());
  CHECK_FALSE(c.passing());
  for (const auto& [name, ok] : c.checks) {
    const bool triple_check = name == "triple_relations" || name == "h_in_g_plus" || name == "f_regular";
    CHECK_MESSAGE(ok != triple_check, name);
  }
  CHECK(c.roundtrip_passes == c.roundtrip_trials);
}

TEST_CASE("certificates are deterministic") {
  const auto a = certificate_json(run_verify(Family::SP, 4, 2, quick(7)));
  const auto b = certificate_json(run_verify(Family::SP, 4, 2, quick(7)));
  CHECK(a == b);
  CHECK(a.find("\"checks\"") < a.find("\"e\""));  // keys are sorted
  CHECK(case_seed(7, Family::SP, 4, 2) != case_seed(8, Family::SP, 4, 2));
  CHECK(case_seed(7, Family::SP, 4, 2) != case_seed(7, Family::SP, 2, 2));
}

TEST_CASE("report") {
  CHECK(report_cases(4, 0, 0).size() == 10);
  CHECK(report_cases(0, 8, 0).size() == 15);
  CHECK(report_cases(0, 0, 8).size() == 10);
  CHECK(report_cases(0, 0, 0).empty());

  auto r = cmd_report(0, 0, 0, quick(), 4);
  CHECK(r.exit_code == kExitPass);
  json summary = json::parse(r.out);
  CHECK(summary["total"] == 0);
  CHECK(summary["certificates"].empty());

  const auto one = cmd_report(3, 0, 2, quick(), 1);
  const auto many = cmd_report(3, 0, 2, quick(), 8);
  CHECK(one.exit_code == kExitPass);
  CHECK(one.out == many.out);
  summary = json::parse(one.out);
  CHECK(summary["total"] == 7);
  CHECK(summary["passed"] == 7);
}

TEST_CASE("slice-rep") {
  auto r = cmd_slice_rep(Family::GL, 1, 1, R"(["-5","0"])");
  CHECK(r.exit_code == kExitPass);
  CHECK(parse_matrix(r.out) == RatMatrix::from_ints({{0, 5}, {1, 0}}));

  const KostantSlice s = standard_slice(Family::ORTH, 3, 2);
  r = cmd_slice_rep(Family::ORTH, 3, 2, invariants_to_json(invariants(s.pair(), s.triple().f)));
  CHECK(r.exit_code == kExitPass);
  CHECK(parse_matrix(r.out) == s.triple().f);

  r = cmd_slice_rep(Family::GL, 1, 1, R"(["-5"])");
  CHECK(r.exit_code == kExitInputError);
  CHECK(json::parse(r.out)["error"] == "DimensionError");
  CHECK(cmd_slice_rep(Family::GL, 1, 1, "not json").exit_code == kExitInputError);
  CHECK(cmd_slice_rep(Family::SP, 1, 1, R"(["0","0"])").exit_code == kExitInputError);

  // A vector no element of g(-1) has: the odd coefficient must vanish.
  r = cmd_slice_rep(Family::GL, 1, 1, R"(["0","1"])");
  CHECK(r.exit_code == kExitNotFound);
  CHECK(json::parse(r.out)["error"] == "NotFound");
}

TEST_CASE("canonicalize") {
  const KostantSlice s = standard_slice(Family::ORTH, 4, 3);
  const RatVector a{1, make_rat(-2, 3), 5};
  const RatMatrix x = slice_point(s, a);

  auto r = cmd_canonicalize(Family::ORTH, 4, 3, format_matrix(x));
  REQUIRE(r.exit_code == kExitPass);
  json out = json::parse(r.out);
  CHECK(out["coordinates"] == json::array({"1", "-2/3", "5"}));

  const GroupElement g = random_group_element(s.pair(), 42, 2);
  r = cmd_canonicalize(Family::ORTH, 4, 3, format_matrix(act(s.pair(), g, x)));
  REQUIRE(r.exit_code == kExitPass);
  out = json::parse(r.out);
  CHECK(out["coordinates"] == json::array({"1", "-2/3", "5"}));
  REQUIRE(out["representative"].size() == 7);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j)
      CHECK(parse_rat(out["representative"][i][j].get<std::string>()) == x(i, j));

  CHECK(cmd_canonicalize(Family::GL, 2, 1, format_matrix(RatMatrix(3, 3))).exit_code ==
        kExitNonRegular);
  CHECK(cmd_canonicalize(Family::GL, 2, 1, format_matrix(RatMatrix::identity(3))).exit_code ==
        kExitInputError);
  CHECK(cmd_canonicalize(Family::GL, 2, 1, "3 3\n1 2").exit_code == kExitInputError);
}
