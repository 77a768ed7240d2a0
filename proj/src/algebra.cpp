#include "weilcalc/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "weilcalc/element.hpp"
#include "weilcalc/error.hpp"
#include "weilcalc/linalg.hpp"

namespace weilcalc {

namespace {

std::string triple_text(const std::vector<std::string>& basis, std::size_t i, std::size_t j, std::size_t l) {
  std::ostringstream os;
  os << "(" << basis[i] << ", " << basis[j] << ", " << basis[l] << ") [" << i << "," << j << "," << l << "]";
  return os.str();
}

// Dense product of two coefficient vectors through a dense structure tensor.
std::vector<double> multiply(std::span<const double> s, std::size_t d, std::span<const double> a,
                             std::span<const double> b) {
  std::vector<double> out(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (b[j] == 0.0) continue;
      const double ab = a[i] * b[j];
      for (std::size_t k = 0; k < d; ++k) {
        const double c = s[(i * d + j) * d + k];
        if (c != 0.0) out[k] += ab * c;
      }
    }
  }
  return out;
}

// Row-echelon span of a set of vectors; used for ideal powers.
class Span {
 public:
  Span(std::size_t d, double tol) : d_(d), tol_(tol) {}

  // Adds v if independent of the current span.
  bool add(std::vector<double> v) {
    for (const auto& [piv, row] : rows_) {
      const double f = v[piv];
      if (f == 0.0) continue;
      for (std::size_t k = 0; k < d_; ++k) v[k] -= f * row[k];
    }
    std::size_t piv = d_;
    double best = tol_;
    for (std::size_t k = 0; k < d_; ++k)
      if (std::abs(v[k]) > best) {
        best = std::abs(v[k]);
        piv = k;
      }
    if (piv == d_) return false;
    const double p = v[piv];
    for (auto& x : v) x /= p;
    for (auto& [opiv, row] : rows_) {
      const double f = row[piv];
      if (f == 0.0) continue;
      for (std::size_t k = 0; k < d_; ++k) row[k] -= f * v[k];
    }
    rows_.emplace_back(piv, std::move(v));
    return true;
  }

  [[nodiscard]] std::size_t size() const { return rows_.size(); }
  [[nodiscard]] std::vector<std::vector<double>> vectors() const {
    std::vector<std::vector<double>> out;
    for (const auto& r : rows_) out.push_back(r.second);
    return out;
  }

 private:
  std::size_t d_;
  double tol_;
  std::vector<std::pair<std::size_t, std::vector<double>>> rows_;
};

bool is_integer(double v) { return std::isfinite(v) && std::floor(v) == v; }

}  // namespace

AlgebraRef WeilAlgebra::create(std::string name, std::vector<std::string> basis, std::size_t unit_index,
                               std::vector<double> structure, double tol) {
  const std::size_t d = basis.size();
  if (d == 0) throw Error(ErrorKind::InvalidAlgebra, name + ": dimension must be positive");
  if (unit_index >= d) throw Error(ErrorKind::InvalidAlgebra, name + ": unit index out of range");
  if (structure.size() != d * d * d)
    throw Error(ErrorKind::InvalidAlgebra, name + ": structure tensor must have dim^3 entries");
  for (double v : structure)
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidAlgebra, name + ": non-finite structure constant");

  auto at = [&](std::size_t i, std::size_t j, std::size_t k) { return structure[(i * d + j) * d + k]; };
  const std::size_t u = unit_index;

  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      const double expect = i == k ? 1.0 : 0.0;
      if (std::abs(at(u, i, k) - expect) > tol || std::abs(at(i, u, k) - expect) > tol)
        throw Error(ErrorKind::InvalidAlgebra,
                    name + ": unit law fails at " + triple_text(basis, u, i, k));
    }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        if (std::abs(at(i, j, k) - at(j, i, k)) > tol)
          throw Error(ErrorKind::InvalidAlgebra, name + ": not commutative at " + triple_text(basis, i, j, k));

  // Associativity on basis triples: (b_i b_j) b_l = b_i (b_j b_l).
  std::vector<std::vector<double>> unit_vectors(d, std::vector<double>(d, 0.0));
  for (std::size_t i = 0; i < d; ++i) unit_vectors[i][i] = 1.0;
  std::vector<std::vector<double>> prod(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) prod[i * d + j] = multiply(structure, d, unit_vectors[i], unit_vectors[j]);
  std::vector<double> left(d);
  std::vector<double> right(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t l = 0; l < d; ++l) {
        std::fill(left.begin(), left.end(), 0.0);
        std::fill(right.begin(), right.end(), 0.0);
        for (std::size_t k = 0; k < d; ++k) {
          const double cij = at(i, j, k);
          if (cij != 0.0)
            for (std::size_t q = 0; q < d; ++q) left[q] += cij * prod[k * d + l][q];
          const double cjl = at(j, l, k);
          if (cjl != 0.0)
            for (std::size_t q = 0; q < d; ++q) right[q] += cjl * prod[i * d + k][q];
        }
        if (max_abs_diff(left, right) > tol)
          throw Error(ErrorKind::InvalidAlgebra, name + ": not associative at " + triple_text(basis, i, j, l));
      }

  // The non-unit basis must span an ideal: products of nilpotent basis
  // vectors have no unit component.
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (i != u && j != u && std::abs(at(i, j, u)) > tol)
        throw Error(ErrorKind::InvalidAlgebra,
                    name + ": non-unit basis is not an ideal at " + triple_text(basis, i, j, u));

  // Height by iterated ideal powers N^1 = N, N^{p+1} = N^p N.
  std::vector<std::vector<double>> nil;
  for (std::size_t i = 0; i < d; ++i)
    if (i != u) nil.push_back(unit_vectors[i]);
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<std::vector<double>> power = nil;
  while (!power.empty()) {
    ++height;
    if (height > d)
      throw Error(ErrorKind::InvalidAlgebra, name + ": non-unit basis does not span a nilpotent ideal");
    Span next(d, tol);
    for (const auto& v : power)
      for (const auto& n : nil) next.add(multiply(structure, d, v, n));
    if (height == 1) width = nil.size() - next.size();
    power = next.vectors();
  }

  auto alg = std::shared_ptr<WeilAlgebra>(new WeilAlgebra());
  alg->name_ = std::move(name);
  alg->basis_ = std::move(basis);
  alg->unit_ = u;
  alg->structure_ = std::move(structure);
  alg->width_ = width;
  alg->height_ = height;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        const double c = alg->structure_[(i * d + j) * d + k];
        if (c == 0.0) continue;
        alg->entries_.push_back({i, j, k, c});
        if (!is_integer(c)) alg->exact_ = false;
      }
  return alg;
}

bool WeilAlgebra::same_structure(const WeilAlgebra& other) const noexcept {
  return dim() == other.dim() && unit_ == other.unit_ && structure_ == other.structure_;
}

bool same_algebra(const AlgebraRef& a, const AlgebraRef& b) noexcept {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_structure(*b);
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t out = 1;
  for (std::size_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

std::vector<std::vector<int>> monomial_exponents(std::size_t k, std::size_t r) {
  std::vector<std::vector<int>> out;
  for (std::size_t deg = 0; deg <= r; ++deg) {
    // Lexicographically descending exponent vectors of total degree `deg`.
    std::vector<int> e(k, 0);
    auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
      if (pos + 1 == k || k == 0) {
        if (k > 0) e[pos] = left;
        if (k > 0 || left == 0) out.push_back(e);
        return;
      }
      for (int v = left; v >= 0; --v) {
        e[pos] = v;
        self(self, pos + 1, left - v);
      }
      e[pos] = 0;
    };
    rec(rec, 0, static_cast<int>(deg));
  }
  return out;
}

std::size_t monomial_index(std::span<const int> exponents, std::size_t r) {
  const std::size_t k = exponents.size();
  int deg = 0;
  for (int v : exponents) deg += v;
  if (deg < 0 || static_cast<std::size_t>(deg) > r) throw Error(ErrorKind::ShapeMismatch, "monomial degree out of range");
  const auto all = monomial_exponents(k, r);
  for (std::size_t i = 0; i < all.size(); ++i)
    if (std::equal(all[i].begin(), all[i].end(), exponents.begin())) return i;
  throw Error(ErrorKind::ShapeMismatch, "monomial not found");
}

AlgebraRef reals() {
  static const AlgebraRef alg = WeilAlgebra::create("reals", {"1"}, 0, {1.0});
  return alg;
}

AlgebraRef dual() {
  static const AlgebraRef alg = [] {
    std::vector<double> s(8, 0.0);
    auto at = [&](std::size_t i, std::size_t j, std::size_t k) -> double& { return s[(i * 2 + j) * 2 + k]; };
    at(0, 0, 0) = 1.0;
    at(0, 1, 1) = 1.0;
    at(1, 0, 1) = 1.0;
    return WeilAlgebra::create("dual", {"1", "e"}, 0, std::move(s));
  }();
  return alg;
}

AlgebraRef truncated(std::size_t k, std::size_t r) {
  const auto mons = monomial_exponents(k, r);
  const std::size_t d = mons.size();
  std::vector<std::string> labels;
  for (const auto& e : mons) {
    std::string label;
    for (std::size_t v = 0; v < k; ++v) {
      if (e[v] == 0) continue;
      if (!label.empty()) label += "*";
      label += k == 1 ? "x" : "x" + std::to_string(v + 1);
      if (e[v] > 1) label += "^" + std::to_string(e[v]);
    }
    labels.push_back(label.empty() ? "1" : label);
  }
  std::vector<double> s(d * d * d, 0.0);
  std::vector<int> sum_e(k);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      int deg = 0;
      for (std::size_t v = 0; v < k; ++v) {
        sum_e[v] = mons[i][v] + mons[j][v];
        deg += sum_e[v];
      }
      if (static_cast<std::size_t>(deg) > r) continue;
      const std::size_t idx = monomial_index(sum_e, r);
      s[(i * d + j) * d + idx] = 1.0;
    }
  return WeilAlgebra::create("truncated(" + std::to_string(k) + "," + std::to_string(r) + ")", std::move(labels), 0,
                             std::move(s));
}

namespace {

std::set<std::string> nonunit_labels(const WeilAlgebra& a) {
  std::set<std::string> out;
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (i != a.unit_index()) out.insert(a.basis()[i]);
  return out;
}

bool labels_collide(const WeilAlgebra& a, const WeilAlgebra& b) {
  const auto la = nonunit_labels(a);
  for (const auto& l : nonunit_labels(b))
    if (la.count(l)) return true;
  return false;
}

}  // namespace

AlgebraRef tensor(const AlgebraRef& a, const AlgebraRef& b) {
  const std::size_t da = a->dim();
  const std::size_t db = b->dim();
  const std::size_t d = da * db;
  const bool collide = labels_collide(*a, *b);
  std::vector<std::string> labels(d);
  for (std::size_t j = 0; j < db; ++j)
    for (std::size_t i = 0; i < da; ++i) {
      const bool ua = i == a->unit_index();
      const bool ub = j == b->unit_index();
      std::string la = a->basis()[i];
      std::string lb = b->basis()[j];
      if (collide) {
        la += "_1";
        lb += "_2";
      }
      std::string label;
      if (ua && ub) label = "1";
      else if (ua) label = lb;
      else if (ub) label = la;
      else label = la + "*" + lb;
      labels[i + da * j] = label;
    }
  std::vector<double> s(d * d * d, 0.0);
  for (const auto& ea : a->entries())
    for (const auto& eb : b->entries()) {
      const std::size_t i = ea.i + da * eb.i;
      const std::size_t j = ea.j + da * eb.j;
      const std::size_t k = ea.k + da * eb.k;
      s[(i * d + j) * d + k] += ea.c * eb.c;
    }
  return WeilAlgebra::create("tensor(" + a->name() + "," + b->name() + ")", std::move(labels),
                             a->unit_index() + da * b->unit_index(), std::move(s));
}

AlgebraRef sum(const AlgebraRef& a, const AlgebraRef& b) {
  const std::size_t da = a->dim();
  const std::size_t db = b->dim();
  const std::size_t d = da + db - 1;
  // Index maps: unit -> 0, N_A -> 1..da-1, N_B -> da..d-1.
  std::vector<std::size_t> ia(da);
  std::vector<std::size_t> ib(db);
  std::size_t next = 1;
  for (std::size_t i = 0; i < da; ++i) ia[i] = i == a->unit_index() ? 0 : next++;
  for (std::size_t j = 0; j < db; ++j) ib[j] = j == b->unit_index() ? 0 : next++;

  const bool collide = labels_collide(*a, *b);
  std::vector<std::string> labels(d);
  labels[0] = "1";
  for (std::size_t i = 0; i < da; ++i)
    if (ia[i] != 0) labels[ia[i]] = a->basis()[i];
  for (std::size_t j = 0; j < db; ++j) {
    if (ib[j] == 0) continue;
    std::string l = b->basis()[j];
    if (collide) {
      std::string upper = l;
      for (auto& ch : upper) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
      l = upper != l ? upper : l + "'";
    }
    labels[ib[j]] = l;
  }
  std::vector<double> s(d * d * d, 0.0);
  auto at = [&](std::size_t i, std::size_t j, std::size_t k) -> double& { return s[(i * d + j) * d + k]; };
  for (const auto& e : a->entries()) at(ia[e.i], ia[e.j], ia[e.k]) += e.c;
  for (const auto& e : b->entries()) {
    // Unit products are already present from A.
    if (ib[e.i] == 0 && ib[e.j] == 0) continue;
    at(ib[e.i], ib[e.j], ib[e.k]) += e.c;
  }
  return WeilAlgebra::create("sum(" + a->name() + "," + b->name() + ")", std::move(labels), 0, std::move(s));
}

double max_abs_diff(const AlgebraElement& a, const AlgebraElement& b) {
  a.check_same(b);
  return max_abs_diff(std::span<const double>(a.coeffs()), std::span<const double>(b.coeffs()));
}

std::string to_string(const AlgebraElement& a) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double c = a[i];
    if (c == 0.0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    const double mag = std::abs(c);
    const bool is_unit = i == a.algebra()->unit_index();
    if (is_unit) os << mag;
    else if (mag == 1.0) os << a.algebra()->basis()[i];
    else os << mag << "*" << a.algebra()->basis()[i];
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace weilcalc
