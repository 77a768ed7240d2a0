#include "weilcalc/prolongation.hpp"

#include "weilcalc/strong_difference.hpp"

namespace weilcalc {

ProlongedField::ProlongedField(AlgebraRef algebra, VectorField x)
    : algebra_(std::move(algebra)), x_(std::move(x)), rendered_(render_lift(algebra_, x_.components())) {}

WeilPoint ProlongedField::operator()(const WeilPoint& a) const { return lift(algebra_, x_.components())(a); }

ProlongedField field_prolong(const AlgebraRef& algebra, const VectorField& x) { return ProlongedField(algebra, x); }

Report check_prolong_bracket(const AlgebraRef& algebra, const VectorField& x, const VectorField& y, std::size_t samples,
                          std::uint64_t seed, double tol) {
  Report report("prolong", algebra->name(), tol);
  const auto lhs = field_prolong(algebra, bracket(x, y)).rendered();
  const auto rhs = bracket(field_prolong(algebra, x).rendered(), field_prolong(algebra, y).rendered());
  const std::size_t n = lhs.dim();
  std::vector<double> errors(samples);
  parallel_for(samples, [&](std::size_t s) {
    auto rng = sample_rng(seed, "prolong/" + algebra->name(), s);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> p(n);
    for (auto& v : p) v = u(rng);
    errors[s] = max_abs_diff(lhs(p), rhs(p));
  });
  for (std::size_t s = 0; s < samples; ++s) report.record(s, errors[s]);
  return report;
}

}  // namespace weilcalc
