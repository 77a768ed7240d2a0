#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

namespace weilcalc {

struct Failure {
  std::size_t sample = 0;
  double error = 0.0;
  std::string detail;
};

/// Outcome of one verification suite. Serialized as
/// {"suite", "algebra", "samples", "max_error", "status", "failures", ...extra}.
struct Report {
  std::string suite;
  std::string algebra;
  std::size_t samples = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
  std::vector<Failure> failures;
  nlohmann::json extra = nlohmann::json::object();

  Report() = default;
  Report(std::string suite_name, std::string algebra_name, double tol)
      : suite(std::move(suite_name)), algebra(std::move(algebra_name)), tolerance(tol) {}

  [[nodiscard]] bool passed() const noexcept { return failures.empty(); }
  /// Counts one sample; it fails when `error` exceeds the tolerance or is not finite.
  void record(std::size_t sample, double error, const std::string& detail = {});
  void fail(std::size_t sample, const std::string& detail);
  /// Folds another report's samples, failures and missing extra keys into this one.
  void absorb(const Report& other);

  [[nodiscard]] nlohmann::json to_json() const;
};

/// Seed for sample `index` of `suite`: FNV-1a of both, mixed with the run
/// seed through splitmix64. Independent of scheduling.
std::uint64_t sample_seed(std::uint64_t run_seed, const std::string& suite, std::size_t index);
std::mt19937_64 sample_rng(std::uint64_t run_seed, const std::string& suite, std::size_t index);

/// Worker count: WEILCALC_THREADS if set (>= 1), else hardware concurrency.
std::size_t worker_count();

/// Runs fn(0..n-1) on up to worker_count() threads. The first exception (by
/// index) is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace weilcalc
