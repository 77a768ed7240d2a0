#include <atomic>
#include <cstdlib>

#include "doctest.h"
#include "weilcalc/algebra_io.hpp"
#include "weilcalc/error.hpp"
#include "weilcalc/report.hpp"
#include "weilcalc/verify.hpp"

using namespace weilcalc;

namespace {
std::string fixture(const std::string& name) { return std::string(WEILCALC_FIXTURES) + "/" + name; }

Error error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  FAIL("no Error thrown");
  return Error(ErrorKind::ParseError, "");
}
}  // namespace

TEST_CASE("algebra files and expressions") {
  CHECK(load_algebra(fixture("dual.json"))->same_structure(*dual()));
  CHECK(load_algebra("truncated(2,2)")->dim() == 6);

  const auto bad = error_of([] { load_algebra(fixture("malformed_algebra.json")); });
  CHECK(bad.kind() == ErrorKind::ParseError);
  CHECK(bad.detail().find("line") != std::string::npos);

  const auto shape = error_of([] { load_algebra(fixture("bad_shape_algebra.json")); });
  CHECK(shape.kind() == ErrorKind::ParseError);
  CHECK(shape.detail().find("structure") != std::string::npos);

  const auto corrupt = error_of([] { load_algebra(fixture("corrupted_algebra.json")); });
  CHECK(corrupt.kind() == ErrorKind::InvalidAlgebra);
  CHECK(corrupt.detail().find("not commutative") != std::string::npos);

  CHECK(error_of([] { read_json_file(fixture("missing.json")); }).kind() == ErrorKind::ParseError);
}

TEST_CASE("describe lists width and height") {
  const auto text = describe(*tensor(dual(), dual()));
  CHECK(text.find("width 2") != std::string::npos);
  CHECK(text.find("height 2") != std::string::npos);
}

TEST_CASE("sample seeds depend on run seed, suite and index only") {
  CHECK(sample_seed(7, "prolong", 3) == sample_seed(7, "prolong", 3));
  CHECK(sample_seed(7, "prolong", 3) != sample_seed(8, "prolong", 3));
  CHECK(sample_seed(7, "prolong", 3) != sample_seed(7, "g-bracket", 3));
  CHECK(sample_seed(7, "prolong", 3) != sample_seed(7, "prolong", 4));
}

TEST_CASE("parallel_for visits every index and rethrows the first error") {
  std::vector<std::atomic<int>> hits(100);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) CHECK(h.load() == 1);
  const auto e = error_of([] {
    parallel_for(50, [](std::size_t i) {
      if (i == 7 || i == 31) throw Error(ErrorKind::DomainError, std::to_string(i));
    });
  });
  CHECK(e.detail() == "7");
}

TEST_CASE("reports") {
  Report r("s", "dual", 1e-3);
  r.record(0, 1e-4);
  CHECK(r.passed());
  r.record(1, std::nan(""));
  CHECK_FALSE(r.passed());
  const auto j = r.to_json();
  CHECK(j["status"] == "fail");
  CHECK(j["samples"] == 2);
}

TEST_CASE("verify documents are deterministic and carry the options") {
  VerifyOptions o;
  o.seed = 7;
  o.samples = 3;
  const auto a = run_document("prolong", o, run_suite("prolong", o));
  const auto b = run_document("prolong", o, run_suite("prolong", o));
  CHECK(a.dump() == b.dump());
  CHECK(a["format"] == "weilcalc-report/1");
  CHECK(a["seed"] == 7);
  CHECK(a["samples_override"] == 3);
  CHECK(a["status"] == "pass");
  CHECK(a["reports"].size() == 5);
  CHECK(suite_names().front() == "sigma");
  CHECK_FALSE(is_suite("all-the-things"));
}

TEST_CASE("tolerance override can fail a suite") {
  VerifyOptions o;
  o.tol = 1e-14;
  const auto rs = run_suite("frame-prolong", o);
  bool any_failed = false;
  for (const auto& r : rs) any_failed = any_failed || !r.passed();
  CHECK(any_failed);
}

TEST_CASE("field files feed the suites") {
  VerifyOptions o;
  o.fields = read_json_file(fixture("manifold_pair.json"));
  o.samples = 5;
  for (const auto& r : run_suite("bracket", o)) CHECK(r.passed());
  o.fields = nlohmann::json{{"X", 3}};
  CHECK_THROWS_AS(run_suite("bracket", o), Error);
}
