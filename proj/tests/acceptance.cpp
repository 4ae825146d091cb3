// Prints one PASS/FAIL line per acceptance criterion and exits nonzero if any
// criterion fails.

#include "fixtures.hpp"
#include "http_fixture.hpp"

#include <algorithm>
#include <functional>
#include <iostream>

using namespace tc_test;

namespace {

// Pinned sample sizes and tolerances.
constexpr int kMatcherOracleCases = 500;
constexpr int kRoundTripCases = 500;
constexpr int kFreshIndexCases = 200;
constexpr int kAllowedDiscrepancies = 0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome sentence_fixture() {
  const auto r = enumerate_candidates(sentence_sofpa(), sentence_factors());
  std::vector<std::string> got;
  for (const auto& c : r.values) got.push_back(matched_words(c));
  auto sorted_got = got;
  auto sorted_expected = sentence_expected();
  std::sort(sorted_got.begin(), sorted_got.end());
  std::sort(sorted_expected.begin(), sorted_expected.end());
  const bool ok = got.size() == 5 && sorted_got == sorted_expected && got == sentence_expected();
  return {ok, std::to_string(got.size()) + " candidates" + (got == sentence_expected() ? ", order as enumerated" : "")};
}

Outcome nested_choice_fixture() {
  const auto r = amb::all_values([] {
    const int inner = amb::choose({2, 3});
    const int x = amb::choose({1, inner});
    const int y = 100 + amb::choose({10, 20, 30});
    return std::pair{x, y};
  });
  std::vector<std::pair<int, int>> expected{{1, 110}, {1, 120}, {1, 130}, {2, 110}, {2, 120}, {2, 130},
                                            {1, 110}, {1, 120}, {1, 130}, {3, 110}, {3, 120}, {3, 130}};
  auto got = r.values;
  std::sort(got.begin(), got.end());
  std::sort(expected.begin(), expected.end());
  return {got == expected, std::to_string(r.values.size()) + " results"};
}

Outcome normal_ordering() {
  const auto scalar = batch_apply("a adag", standard_rules(), "normal-ordering", std::nullopt);
  const auto indexed = batch_apply("a_mu adag_nu", standard_rules(), "normal-ordering-indexed", std::nullopt);
  const std::string s = scalar.size() == 1 ? ascii(scalar[0]) : "<" + std::to_string(scalar.size()) + " results>";
  const std::string i = indexed.size() == 1 ? ascii(indexed[0]) : "<" + std::to_string(indexed.size()) + " results>";
  return {s == "adag a + 1" && i == "adag_nu a_mu + eta_mu_nu", s + "; " + i};
}

Outcome epsilon_delta() {
  const auto out = batch_apply("eps_i_j_k X eps_i_m_n", standard_rules(), "epsilon-delta", std::nullopt);
  if (out.size() != 1) return {false, std::to_string(out.size()) + " sites"};
  const Term& t = out[0];
  const bool ok = t.summands.size() == 2 && t.summands[0] == T("delta_j_m X delta_k_n").summands[0] &&
                  t.summands[1] == T("-delta_j_n X delta_k_m").summands[0];
  return {ok, ascii(t)};
}

Outcome fierz() {
  const SofpaRule* rule = standard_rules().find("fierz");
  if (!rule) return {false, "rule missing"};
  const auto out = batch_apply("psi Gamma^mu phi lambda Gamma_mu eta", standard_rules(), "fierz", std::nullopt);
  if (out.size() != 1) return {false, std::to_string(out.size()) + " sites"};
  std::vector<std::string> coefficients;
  for (const auto& s : out[0].summands) coefficients.push_back(s.coefficient.to_string());
  const bool ok = coefficients == std::vector<std::string>{"1", "-1/2", "-1/2", "-1"};
  std::string detail = std::to_string(coefficients.size()) + " summands, coefficients";
  for (const auto& c : coefficients) detail += " " + c;
  return {ok, detail};
}

Outcome leibniz() {
  const std::vector<std::string> inputs{"a", "a b", "a b c"};
  bool ok = true;
  std::string detail;
  for (std::size_t n = 1; n <= 3; ++n) {
    const std::size_t got = vary_leibniz(T(inputs[n - 1]), "delta").summands.size();
    ok = ok && got == n;
    detail += "n=" + std::to_string(n) + ":" + std::to_string(got) + " ";
  }
  const Term two = vary_leibniz(T("a b"), "delta");
  ok = ok && two == T("delta[a] b + a delta[b]");
  return {ok, detail + "| " + ascii(two)};
}

Outcome parser_fixture() {
  const std::string text = "-7/2 e**4 X_a_b Q^a^b_alpha + 5 Z_alpha";
  const Term t = T(text);
  bool ok = t.summands.size() == 2 && t.summands[0].coefficient == Rational::parse("-7/2") &&
            t.summands[0].factors.size() == 3 && t.summands[0].factors[0] == Factor::power("e", 4) &&
            t.summands[0].factors[1] == Factor::indexed("X", {IndexRef::down("a"), IndexRef::down("b")}) &&
            t.summands[0].factors[2] ==
                Factor::indexed("Q", {IndexRef::up("a"), IndexRef::up("b"), IndexRef::down("alpha")}) &&
            t.summands[1].coefficient == Rational(5) &&
            t.summands[1].factors == std::vector<Factor>{Factor::indexed("Z", {IndexRef::down("alpha")})};
  const std::string back = ascii(t);
  ok = ok && back == text;
  return {ok, "rendered back as \"" + back + "\""};
}

Outcome matcher_oracle() {
  Gen g(8);
  int discrepancies = 0;
  for (int k = 0; k < kMatcherOracleCases; ++k) {
    const LiteralInstance inst = random_literal_instance(g);
    if (matcher_placements(inst) != brute_force_placements(inst)) ++discrepancies;
  }
  return {discrepancies <= kAllowedDiscrepancies,
          std::to_string(kMatcherOracleCases) + " cases, " + std::to_string(discrepancies) + " discrepancies"};
}

Outcome round_trip() {
  Gen g(9);
  int failures = 0;
  for (int k = 0; k < kRoundTripCases; ++k) {
    const Term t = g.term();
    try {
      if (T(ascii(t)) != t) ++failures;
    } catch (const ParseError&) {
      ++failures;
    }
  }
  return {failures <= kAllowedDiscrepancies,
          std::to_string(kRoundTripCases) + " terms, " + std::to_string(failures) + " failures"};
}

Outcome fresh_indices() {
  Gen g(10);
  int failures = 0;
  std::string first;
  for (int k = 0; k < kFreshIndexCases; ++k) {
    const std::string why = fresh_index_violation(random_fresh_instance(g));
    if (!why.empty()) {
      ++failures;
      if (first.empty()) first = why;
    }
  }
  return {failures <= kAllowedDiscrepancies, std::to_string(kFreshIndexCases) + " applications, " +
                                                 std::to_string(failures) + " violations" +
                                                 (first.empty() ? "" : " (" + first + ")")};
}

Outcome service_contract() {
  TestServer server;
  auto client = server.client();
  const auto failures = scripted_http_session(client, TERMCLAMP_STANDARD_RULES);
  std::string detail = failures.empty() ? "create, submit, list, apply, stale apply, undo" : "";
  for (const auto& f : failures) detail += (detail.empty() ? "" : "; ") + f;
  return {failures.empty(), detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"sentence fixture", sentence_fixture},
      {"nested amb program", nested_choice_fixture},
      {"normal ordering", normal_ordering},
      {"epsilon-delta rule", epsilon_delta},
      {"fierz rule", fierz},
      {"leibniz variation", leibniz},
      {"parser fixture", parser_fixture},
      {"matcher oracle", matcher_oracle},
      {"ascii round trip", round_trip},
      {"fresh indices", fresh_indices},
      {"service contract", service_contract},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (k + 1) << " " << criteria[k].first << ": " << o.detail << "\n";
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
