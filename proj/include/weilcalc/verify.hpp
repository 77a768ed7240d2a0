#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "weilcalc/algebra.hpp"
#include "weilcalc/report.hpp"

namespace weilcalc {

struct VerifyOptions {
  std::uint64_t seed = 7;
  std::optional<double> tol;           // replaces every suite's own tolerance
  std::optional<std::size_t> samples;  // points per check
  std::vector<AlgebraRef> algebras;    // replaces the suite's algebra list
  // Optional extra fields, as read from a field file:
  //   {"X": program, "Y": program}               manifold pair (bracket, prolong)
  //   {"m": int, "X": program, "Y": program}     projectable pair (g-bracket)
  //   {"X1": functional, "X2": functional}       functional pair
  std::optional<nlohmann::json> fields;
};

/// Suite names in run order, without "all".
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

/// Runs one suite, or every suite for "all". Malformed input (field files,
/// shapes) propagates as Error; failures while sampling end up in reports.
std::vector<Report> run_suite(const std::string& name, const VerifyOptions& options);

/// The document written by `verify`: options, the reports in run order and
/// an overall status. No timestamps, so equal options give equal bytes.
nlohmann::json run_document(const std::string& suite, const VerifyOptions& options, const std::vector<Report>& reports);

}  // namespace weilcalc
