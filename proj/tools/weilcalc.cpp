// weilcalc: verification suites, brackets and algebra tables from the command line.
//
// Exit codes: 0 success, 1 a check failed, 2 malformed input or usage.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "weilcalc/algebra_io.hpp"
#include "weilcalc/error.hpp"
#include "weilcalc/functional.hpp"
#include "weilcalc/strong_difference.hpp"
#include "weilcalc/verify.hpp"

using namespace weilcalc;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kBadInput = 2;

bool is_input_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError:
    case ErrorKind::ArityMismatch:
    case ErrorKind::ShapeMismatch:
    case ErrorKind::AlgebraMismatch:
    case ErrorKind::NonProjectable:
    case ErrorKind::InvalidAlgebra:
      return true;
    default:
      return false;
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ParseError, path + ": cannot open for writing");
  out << text;
  if (!out) throw Error(ErrorKind::ParseError, path + ": write failed");
}

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used == 0 || used != item.size()) throw Error(ErrorKind::ParseError, "--at: cannot read '" + item + "' as a number");
    out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorKind::ParseError, "--at: empty point");
  return out;
}

std::string show_program(const Program& p, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < p.arity_out(); ++i) {
    if (i) out += ", ";
    out += to_string(expand_polynomial(p.output(i)), names);
  }
  return "[" + out + "]";
}

// --- verify ---------------------------------------------------------------

struct VerifyArgs {
  std::string suite = "all";
  std::uint64_t seed = 7;
  std::optional<double> tol;
  std::optional<std::size_t> samples;
  std::string report;
  std::vector<std::string> algebras;
  std::string field;
};

int cmd_verify(const VerifyArgs& a) {
  if (!is_suite(a.suite)) {
    std::string known = "all";
    for (const auto& n : suite_names()) known += ", " + n;
    throw Error(ErrorKind::ParseError, "unknown suite '" + a.suite + "' (known: " + known + ")");
  }
  VerifyOptions o;
  o.seed = a.seed;
  if (a.tol) {
    if (!(*a.tol > 0.0)) throw Error(ErrorKind::ParseError, "--tol must be positive");
    o.tol = a.tol;
  }
  if (a.samples) {
    if (*a.samples < 1) throw Error(ErrorKind::ParseError, "--samples must be at least 1");
    o.samples = a.samples;
  }
  for (const auto& spec : a.algebras) o.algebras.push_back(load_algebra(spec));
  if (!a.field.empty()) o.fields = read_json_file(a.field);

  const auto reports = run_suite(a.suite, o);
  const auto doc = run_document(a.suite, o, reports);
  const std::string text = doc.dump(2) + "\n";
  if (a.report.empty()) {
    std::cout << text;
  } else {
    write_text(a.report, text);
  }
  for (const auto& r : reports) {
    std::cerr << (r.passed() ? "PASS " : "FAIL ") << r.suite << " [" << r.algebra << "] samples=" << r.samples
              << " max_error=" << r.max_error << " tol=" << r.tolerance << "\n";
    if (!r.failures.empty()) {
      const auto& f = r.failures.front();
      std::cerr << "     first failure: sample " << f.sample << " error " << f.error
                << (f.detail.empty() ? "" : " (" + f.detail + ")") << "\n";
    }
  }
  return doc["status"] == "pass" ? kOk : kCheckFailed;
}

// --- bracket --------------------------------------------------------------

int cmd_bracket(const std::vector<std::string>& files, const std::string& at, bool as_json) {
  std::vector<nlohmann::json> docs;
  for (const auto& f : files) docs.push_back(read_json_file(f));
  nlohmann::json first;
  nlohmann::json second;
  if (docs.size() == 1) {
    const auto& d = docs[0];
    if (d.contains("X1") && d.contains("X2")) {
      first = d["X1"];
      second = d["X2"];
    } else if (d.contains("X") && d.contains("Y")) {
      first = d["X"];
      second = d["Y"];
    } else {
      throw Error(ErrorKind::ParseError, files[0] + ": a single field file must hold a pair (X, Y) or (X1, X2)");
    }
  } else if (docs.size() == 2) {
    first = docs[0];
    second = docs[1];
  } else {
    throw Error(ErrorKind::ParseError, "bracket takes one pair file or two field files");
  }

  const bool functional = first.is_object() && first.contains("q1");
  if (functional != (second.is_object() && second.contains("q1")))
    throw Error(ErrorKind::ArityMismatch, "cannot bracket a functional field with a manifold field");

  if (functional) {
    if (!at.empty()) throw Error(ErrorKind::ParseError, "--at applies to manifold fields only");
    const auto x1 = functional_field_from_json(first);
    const auto x2 = functional_field_from_json(second);
    const auto b = functional_bracket(x1, x2);
    if (as_json) {
      std::cout << to_json(b).dump(2) << "\n";
      return kOk;
    }
    const auto names = jet_names(b.signature(), b.order());
    const std::vector<std::string> xnames(names.begin(), names.begin() + static_cast<std::ptrdiff_t>(b.m()));
    std::cout << "order: " << b.order() << "\n";
    std::cout << "base: " << show_program(b.xi(), xnames) << "\n";
    std::cout << "vertical: " << show_program(b.D(), names) << "\n";
    return kOk;
  }

  const VectorField x(program_from_json(first));
  const VectorField y(program_from_json(second));
  if (x.components().arity_out() != x.dim() || y.components().arity_out() != y.dim())
    throw Error(ErrorKind::ArityMismatch, "a vector field on R^n needs n inputs and n outputs");
  const auto b = bracket(x, y);
  if (as_json) {
    nlohmann::json out = {{"bracket", to_json(b.components())}};
    if (!at.empty()) {
      const auto p = parse_point(at);
      if (p.size() != b.dim()) throw Error(ErrorKind::ArityMismatch, "--at needs " + std::to_string(b.dim()) + " values");
      out["at"] = p;
      out["value"] = b(p);
    }
    std::cout << out.dump(2) << "\n";
    return kOk;
  }
  const auto names = default_names(b.dim());
  std::cout << show_program(b.components(), names) << "\n";
  if (!at.empty()) {
    const auto p = parse_point(at);
    if (p.size() != b.dim()) throw Error(ErrorKind::ArityMismatch, "--at needs " + std::to_string(b.dim()) + " values");
    const auto v = b(p);
    std::cout << "at (";
    for (std::size_t i = 0; i < p.size(); ++i) std::cout << (i ? ", " : "") << p[i];
    std::cout << "): [";
    for (std::size_t i = 0; i < v.size(); ++i) std::cout << (i ? ", " : "") << v[i];
    std::cout << "]\n";
  }
  return kOk;
}

// --- algebra --------------------------------------------------------------

// S also gets its sigma row.
void print_table(const AlgebraRef& a) {
  std::cout << describe(*a);
  const auto& sb = make_S();
  if (!a->same_structure(*sb.algebra) || a->basis() != sb.algebra->basis()) return;
  std::cout << "sigma to dual";
  for (std::size_t k = 0; k < a->dim(); ++k) {
    const auto img = sb.sigma(AlgebraElement::basis(sb.algebra, k));
    std::cout << (k ? ", " : " ") << a->basis()[k] << " -> " << to_string(img);
  }
  std::cout << "\n";
}

int cmd_algebra_show(const std::string& spec) {
  print_table(load_algebra(spec));
  return kOk;
}

int cmd_algebra_check(const std::string& spec) {
  try {
    const auto a = load_algebra(spec);
    std::cout << "ok: " << a->name() << " (dim " << a->dim() << ", width " << a->width() << ", height "
              << a->height() << ")\n";
    return kOk;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InvalidAlgebra) throw;
    std::cout << "fail: " << e.detail() << "\n";
    return kCheckFailed;
  }
}

int cmd_algebra_build(const std::string& expr, bool show, const std::string& out) {
  const auto a = parse_algebra_expr(expr);
  const std::string json = to_json(*a).dump(2) + "\n";
  if (!out.empty()) write_text(out, json);
  if (show) {
    print_table(a);
  } else if (out.empty()) {
    std::cout << json;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weil algebras, prolongations and the strong difference: checks and calculators"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run verification suites and write a JSON report");
  verify->add_option("--suite", va.suite, "suite name or 'all'");
  verify->add_option("--seed", va.seed, "run seed");
  verify->add_option("--tol", va.tol, "tolerance for every suite");
  verify->add_option("--samples", va.samples, "points per check");
  verify->add_option("--report", va.report, "write the report here instead of stdout");
  verify->add_option("--algebra", va.algebras, "algebra file or expression; repeatable");
  verify->add_option("--field", va.field, "field file (JSON)");

  std::vector<std::string> field_files;
  std::string at;
  bool as_json = false;
  auto* br = app.add_subcommand("bracket", "bracket of two vector fields");
  br->add_option("--field", field_files, "field file; give two, or one holding a pair")->required();
  br->add_option("--at", at, "evaluate at this point, comma separated");
  br->add_flag("--json", as_json, "print JSON");

  auto* alg = app.add_subcommand("algebra", "inspect, check or build Weil algebras");
  alg->require_subcommand(1);
  std::string spec;
  bool show = false;
  std::string out_path;
  auto* a_show = alg->add_subcommand("show", "print basis, products, width and height");
  a_show->add_option("spec", spec, "algebra file or expression")->required();
  auto* a_check = alg->add_subcommand("check", "validate the Weil algebra axioms");
  a_check->add_option("spec", spec, "algebra file or expression")->required();
  auto* a_build = alg->add_subcommand("build", "evaluate a constructor expression");
  a_build->add_option("expr", spec, "e.g. tensor(dual,dual), sum(dual,dual), S()")->required();
  a_build->add_flag("--show", show, "print the table instead of JSON");
  a_build->add_option("--out", out_path, "write the JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*verify) return cmd_verify(va);
    if (*br) return cmd_bracket(field_files, at, as_json);
    if (*a_show) return cmd_algebra_show(spec);
    if (*a_check) return cmd_algebra_check(spec);
    if (*a_build) return cmd_algebra_build(spec, show, out_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_input_error(e.kind()) ? kBadInput : kCheckFailed;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: ParseError: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}
