#include "weilcalc/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace weilcalc {

void Report::record(std::size_t sample, double error, const std::string& detail) {
  ++samples;
  if (!std::isfinite(error)) {
    max_error = error;
    failures.push_back({sample, error, detail.empty() ? "non-finite error" : detail});
    return;
  }
  if (std::isfinite(max_error)) max_error = std::max(max_error, error);
  if (error > tolerance) failures.push_back({sample, error, detail});
}

void Report::fail(std::size_t sample, const std::string& detail) {
  ++samples;
  failures.push_back({sample, 0.0, detail});
}

void Report::absorb(const Report& other) {
  samples += other.samples;
  if (!std::isfinite(other.max_error) || other.max_error > max_error) max_error = other.max_error;
  for (const auto& f : other.failures)
    failures.push_back({f.sample, f.error, other.suite + "/" + other.algebra + (f.detail.empty() ? "" : ": ") + f.detail});
  // keys already set here win
  for (const auto& [k, v] : other.extra.items())
    if (!extra.contains(k)) extra[k] = v;
}

nlohmann::json Report::to_json() const {
  nlohmann::json fails = nlohmann::json::array();
  for (const auto& f : failures) {
    nlohmann::json j = {{"sample", f.sample}, {"error", std::isfinite(f.error) ? nlohmann::json(f.error) : nullptr}};
    if (!f.detail.empty()) j["detail"] = f.detail;
    fails.push_back(std::move(j));
  }
  nlohmann::json out = extra;
  out["suite"] = suite;
  out["algebra"] = algebra;
  out["samples"] = samples;
  out["max_error"] = std::isfinite(max_error) ? nlohmann::json(max_error) : nullptr;
  out["tolerance"] = tolerance;
  out["status"] = passed() ? "pass" : "fail";
  out["failures"] = std::move(fails);
  return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t sample_seed(std::uint64_t run_seed, const std::string& suite, std::size_t index) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto eat = [&](unsigned char c) {
    h ^= c;
    h *= 0x100000001b3ULL;
  };
  for (char c : suite) eat(static_cast<unsigned char>(c));
  eat(0);
  for (int b = 0; b < 8; ++b) eat(static_cast<unsigned char>((static_cast<std::uint64_t>(index) >> (8 * b)) & 0xff));
  return splitmix64(h ^ splitmix64(run_seed));
}

std::mt19937_64 sample_rng(std::uint64_t run_seed, const std::string& suite, std::size_t index) {
  return std::mt19937_64(sample_seed(run_seed, suite, index));
}

std::size_t worker_count() {
  if (const char* env = std::getenv("WEILCALC_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t error_index = n;
  std::exception_ptr error;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace weilcalc
