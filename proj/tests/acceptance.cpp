// One PASS/FAIL line per acceptance criterion. Each criterion runs the
// matching verify suites with seed 7 and also checks that no suite loosened
// its tolerance or dropped samples below the required count.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "weilcalc/error.hpp"
#include "weilcalc/verify.hpp"

using namespace weilcalc;

namespace {

struct Need {
  std::string suite;   // report suite name
  double max_tol;      // the report's tolerance must not exceed this
  std::size_t min_samples;
};

// Runs the suites, then checks every report whose name is listed.
bool reports_ok(const std::vector<std::string>& suites, const std::vector<Need>& needs, std::string& why) {
  VerifyOptions o;
  o.seed = 7;
  std::vector<Report> all;
  for (const auto& s : suites) {
    auto r = run_suite(s, o);
    all.insert(all.end(), r.begin(), r.end());
  }
  for (const auto& n : needs) {
    bool seen = false;
    for (const auto& r : all) {
      if (r.suite != n.suite) continue;
      seen = true;
      if (!r.passed()) {
        why = r.suite + " [" + r.algebra + "] max_error " + std::to_string(r.max_error);
        return false;
      }
      if (r.tolerance > n.max_tol) {
        why = r.suite + " tolerance " + std::to_string(r.tolerance) + " looser than required";
        return false;
      }
      if (r.samples < n.min_samples) {
        why = r.suite + " [" + r.algebra + "] only " + std::to_string(r.samples) + " samples";
        return false;
      }
    }
    if (!seen) {
      why = "no report named " + n.suite;
      return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    std::function<bool(std::string&)> run;
  };

  const std::vector<Criterion> criteria = {
      {"sigma formula and homomorphism on S",
       [](std::string& w) { return reports_ok({"sigma"}, {{"sigma", 0.0, 25}}, w); }},
      {"strong-difference bracket vs Jacobian bracket (20 pairs x 20 points, 1e-6)",
       [](std::string& w) { return reports_ok({"bracket"}, {{"bracket", 1e-6, 400}}, w); }},
      {"field prolongation commutes with brackets, manifold case (5 algebras, 1e-7)",
       [](std::string& w) { return reports_ok({"prolong"}, {{"prolong", 1e-7, 500}}, w); }},
      {"exchange square commutes and K preserves membership (100 pairs, 1e-12)",
       [](std::string& w) { return reports_ok({"exchange-square"}, {{"exchange-square", 1e-12, 100}}, w); }},
      {"exchange lemma and companion identities exact",
       [](std::string& w) { return reports_ok({"exchange-lemma"}, {{"exchange-lemma", 0.0, 8}}, w); }},
      {"iterated functor law T^B T^A = T^(B(x)A) (20 programs, 1e-10)",
       [](std::string& w) { return reports_ok({"iterated"}, {{"iterated", 1e-10, 20}}, w); }},
      {"jet group axioms and canonical action homomorphism (200 pairs, 1e-10)",
       [](std::string& w) {
         return reports_ok({"jet-group"}, {{"jet-group", 1e-12, 1}, {"jet-action", 1e-10, 200}}, w);
       }},
      {"frame prolongation vs flow finite differences (20 samples, 1e-5)",
       [](std::string& w) { return reports_ok({"frame-prolong"}, {{"frame-prolong", 1e-5, 20}}, w); }},
      {"G commutes with brackets for jet functors, classical prolongation (1e-6, 1e-8)",
       [](std::string& w) { return reports_ok({"g-bracket"}, {{"g-bracket", 1e-6, 1}, {"jet-classical", 1e-8, 1}}, w); }},
      {"functional bundles: prolongations and polynomial-family reduction (1e-6, 1e-7)",
       [](std::string& w) {
         return reports_ok({"prolong-functional", "g-functional", "fd-reduction"},
                           {{"prolong-functional", 1e-6, 30}, {"g-functional", 1e-6, 30}, {"fd-reduction", 1e-7, 50}},
                           w);
       }},
      {"order-r locality under (y - y0)^(r+1) perturbations (1e-10)",
       [](std::string& w) { return reports_ok({"locality"}, {{"locality", 1e-10, 1}}, w); }},
      {"verify --suite all --seed 7 twice gives identical reports",
       [](std::string& w) {
         VerifyOptions o;
         o.seed = 7;
         const auto a = run_document("all", o, run_suite("all", o)).dump(2);
         const auto b = run_document("all", o, run_suite("all", o)).dump(2);
         if (a != b) w = "reports differ";
         return a == b;
       }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string why;
    bool ok = false;
    try {
      ok = criteria[i].run(why);
    } catch (const std::exception& e) {
      why = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2zu %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].name.c_str(), secs,
                why.empty() ? "" : ": ", why.c_str());
    if (!ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
