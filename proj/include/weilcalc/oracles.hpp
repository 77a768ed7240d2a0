#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "weilcalc/functional.hpp"
#include "weilcalc/jet.hpp"
#include "weilcalc/program.hpp"

// Independent reference computations used by the verifiers. None of these
// calls the routine it is compared against; they work from flows, finite
// differences and plain polynomial arithmetic.
namespace weilcalc::oracle {

/// Tangent of the frame flow at (x, g): integrates the flow of xi from
/// x + g(Y) over truncated(m, r) with RK4 (step <= `step`) for times +-tau
/// and takes the central difference.
FrameTangent frame_flow(const Program& xi, std::size_t r, std::span<const double> x, const JetGroupElement& g,
                        double step = 1e-3, double tau = 1e-4);

/// Classical first prolongation of the vertical field phi(x, u) d/du on
/// R x R: returns (phi, phi_x + u1 phi_u) at (x, u, u1), by central differences.
std::array<double, 2> classical_prolongation(const Program& phi, double x, double u, double u1, double h = 1e-5);

/// A field on F(R x R, R x R) that maps polynomials of degree <= d to
/// themselves: xi(x) on the base and D = p0(x) + p1(x) z0 + p2(x) y z1 + p3(x) z1.
struct PolyFamilyField {
  Program xi;                // 1 -> 1
  std::array<Program, 4> p;  // each 1 -> 1
};

/// The matching functional field of order 1.
FunctionalVectorField to_functional(const PolyFamilyField& f);

/// Nodes used to read a degree-d polynomial off its values.
std::vector<double> nodes(std::size_t degree);
/// Monomial coefficients of the degree-d polynomial through f at nodes(d).
std::vector<double> vandermonde_coefficients(const std::function<double(double)>& f, std::size_t degree);

/// The field on (x, c_0..c_d), h(y) = sum c_k y^k.
std::vector<double> coefficient_field(const PolyFamilyField& f, std::size_t degree, std::span<const double> state);
/// DY.X - DX.Y of the coefficient fields by Richardson-extrapolated central differences.
std::vector<double> coefficient_bracket(const PolyFamilyField& a, const PolyFamilyField& b, std::size_t degree,
                                        std::span<const double> state, double h = 1e-3);

}  // namespace weilcalc::oracle
