#include "weilcalc/algebra_io.hpp"

#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "weilcalc/error.hpp"
#include "weilcalc/strong_difference.hpp"

namespace weilcalc {

namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::ParseError, where + ": " + what);
}

double parse_coefficient(const nlohmann::json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (!v.is_string()) parse_fail(where, "coefficient must be a number or a string");
  const std::string s = v.get<std::string>();
  const auto slash = s.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const double out = std::stod(s, &used);
      if (used != s.size()) parse_fail(where, "bad coefficient '" + s + "'");
      return out;
    }
    const std::string num = s.substr(0, slash);
    const std::string den = s.substr(slash + 1);
    const double p = std::stod(num, &used);
    if (used != num.size()) parse_fail(where, "bad numerator in '" + s + "'");
    const double q = std::stod(den, &used);
    if (used != den.size() || q == 0.0) parse_fail(where, "bad denominator in '" + s + "'");
    return p / q;
  } catch (const std::logic_error&) {
    parse_fail(where, "bad coefficient '" + s + "'");
  }
}

std::size_t get_index(const nlohmann::json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0) parse_fail(where, "expected a non-negative integer");
  return v.get<std::size_t>();
}

void check_stored(const nlohmann::json& j, const char* key, std::size_t computed) {
  if (!j.contains(key) || j[key].is_null()) return;
  if (j[key].is_string() && j[key].get<std::string>() == "unspecified") return;
  const std::size_t stored = get_index(j[key], std::string("$.") + key);
  if (stored != computed)
    throw Error(ErrorKind::InvalidAlgebra, std::string(key) + " is " + std::to_string(stored) + " but computes to " +
                                               std::to_string(computed));
}

// Recursive descent over the constructor grammar.
class ExprParser {
 public:
  explicit ExprParser(std::string text) : s_(std::move(text)) {}

  AlgebraRef parse() {
    auto out = term();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw Error(ErrorKind::ParseError, "algebra expression '" + s_ + "' at column " + std::to_string(pos_ + 1) +
                                           ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::string ident() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected a name");
    return s_.substr(start, pos_ - start);
  }
  std::size_t number() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a non-negative integer");
    return std::stoul(s_.substr(start, pos_ - start));
  }

  AlgebraRef term() {
    const std::string name = ident();
    if (name == "reals" || name == "R") return reals();
    if (name == "dual" || name == "D") return dual();
    if (name == "S") {
      expect('(');
      expect(')');
      return make_S().algebra;
    }
    if (name == "truncated") {
      expect('(');
      const auto k = number();
      expect(',');
      const auto r = number();
      expect(')');
      if (binomial(k + r, r) > 4096) fail("truncated algebra too large");
      return truncated(k, r);
    }
    if (name == "tensor" || name == "sum") {
      expect('(');
      auto a = term();
      expect(',');
      auto b = term();
      expect(')');
      return name == "tensor" ? tensor(a, b) : sum(a, b);
    }
    fail("unknown algebra '" + name + "'");
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

nlohmann::json to_json(const WeilAlgebra& a) {
  nlohmann::json structure = nlohmann::json::array();
  for (const auto& e : a.entries()) structure.push_back({e.i, e.j, e.k, e.c});
  return {{"name", a.name()},           {"dim", a.dim()},       {"basis", a.basis()},
          {"unit_index", a.unit_index()}, {"structure", structure}, {"width", a.width()},
          {"height", a.height()}};
}

AlgebraRef algebra_from_json(const nlohmann::json& j) {
  if (!j.is_object()) parse_fail("$", "algebra must be an object");
  for (const char* key : {"dim", "basis", "structure"})
    if (!j.contains(key)) parse_fail("$", std::string("missing '") + key + "'");
  const std::size_t d = get_index(j["dim"], "$.dim");
  if (d == 0) parse_fail("$.dim", "must be positive");
  if (!j["basis"].is_array() || j["basis"].size() != d) parse_fail("$.basis", "needs dim labels");
  std::vector<std::string> basis;
  for (std::size_t i = 0; i < d; ++i) {
    if (!j["basis"][i].is_string()) parse_fail("$.basis[" + std::to_string(i) + "]", "label must be a string");
    basis.push_back(j["basis"][i].get<std::string>());
  }
  const std::size_t unit = j.contains("unit_index") ? get_index(j["unit_index"], "$.unit_index") : 0;
  if (unit >= d) parse_fail("$.unit_index", "out of range");
  if (!j["structure"].is_array()) parse_fail("$.structure", "must be an array");
  std::vector<double> s(d * d * d, 0.0);
  for (std::size_t n = 0; n < j["structure"].size(); ++n) {
    const std::string where = "$.structure[" + std::to_string(n) + "]";
    const auto& entry = j["structure"][n];
    if (!entry.is_array() || entry.size() != 4) parse_fail(where, "entry must be [i, j, k, coeff]");
    const std::size_t a = get_index(entry[0], where + "[0]");
    const std::size_t b = get_index(entry[1], where + "[1]");
    const std::size_t c = get_index(entry[2], where + "[2]");
    if (a >= d || b >= d || c >= d) parse_fail(where, "index out of range for dim " + std::to_string(d));
    s[(a * d + b) * d + c] = parse_coefficient(entry[3], where + "[3]");
  }
  const std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "algebra";
  auto alg = WeilAlgebra::create(name, std::move(basis), unit, std::move(s));
  check_stored(j, "width", alg->width());
  check_stored(j, "height", alg->height());
  return alg;
}

AlgebraRef parse_algebra_expr(const std::string& text) { return ExprParser(text).parse(); }

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, path + ": cannot open");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, path + ": byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

AlgebraRef load_algebra(const std::string& file_or_expr) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(file_or_expr, ec)) {
    try {
      return algebra_from_json(read_json_file(file_or_expr));
    } catch (const Error& e) {
      if (e.detail().rfind(file_or_expr, 0) == 0) throw;
      throw Error(e.kind(), file_or_expr + ": " + e.detail());
    }
  }
  return parse_algebra_expr(file_or_expr);
}

std::string describe(const WeilAlgebra& a) {
  std::ostringstream os;
  os << "algebra " << a.name() << "\n";
  os << "dim " << a.dim() << ", width " << a.width() << ", height " << a.height() << "\n";
  os << "basis";
  for (const auto& l : a.basis()) os << " " << l;
  os << "\nproducts\n";
  const auto u = a.unit_index();
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i; j < a.dim(); ++j) {
      if (i == u || j == u) continue;
      AlgebraElement p(std::shared_ptr<const WeilAlgebra>(std::shared_ptr<const WeilAlgebra>{}, &a));
      for (std::size_t k = 0; k < a.dim(); ++k) p[k] = a.c(i, j, k);
      os << "  " << a.basis()[i] << " * " << a.basis()[j] << " = " << to_string(p) << "\n";
    }
  return os.str();
}

nlohmann::json to_json(const AlgebraElement& a) { return a.coeffs(); }

AlgebraElement element_from_json(const AlgebraRef& algebra, const nlohmann::json& j) {
  if (!j.is_array() || j.size() != algebra->dim())
    throw Error(ErrorKind::ShapeMismatch, "element of " + algebra->name() + " needs " +
                                              std::to_string(algebra->dim()) + " coefficients");
  std::vector<double> c;
  for (std::size_t i = 0; i < j.size(); ++i) c.push_back(parse_coefficient(j[i], "[" + std::to_string(i) + "]"));
  return AlgebraElement(algebra, std::move(c));
}

}  // namespace weilcalc
