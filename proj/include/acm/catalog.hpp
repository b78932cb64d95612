#pragma once

// The warped family g = e^{−2θ(z)}(dx² + dy²) + dz² on (x, y, z), the ODE
// ξ(f) + f² = c that makes f̃ constant on it, and named scenarios with their
// expected verdicts.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "acm/contact.hpp"
#include "acm/soliton.hpp"

namespace acm {

/// The chart (x, y, z).
const Chart& xyz_chart();

/// Throws std::invalid_argument unless θ depends on z alone.
AlmostContactStructure warped_example(const Expr& theta);
AlmostContactStructure warped_example(std::string_view theta);

/// e1 = e^θ ∂x, e2 = e^θ ∂y, e3 = ∂z.
std::vector<VectorField> warped_frame(const Expr& theta);

enum class OdeBranch {
  Positive,  // c = a² > 0: f = a tanh(a(z − z0))
  Constant,  // c = a² ≥ 0: f ≡ a
  Zero,      // c = 0: f = 1/(z − z0), right of the pole
  Negative,  // c = −a² < 0: f = −a tan(a(z − z0)), one period
};

const char* to_string(OdeBranch b);

inline constexpr double kPoleMargin = 0.1;

struct OdeSolution {
  double c = 0.0;
  OdeBranch branch = OdeBranch::Positive;
  double z0 = 0.0;
  double additive = 0.0;  // constant added to θ
  Expr theta;
  Expr f;  // −θ′
  std::pair<double, double> interval;  // open validity interval, poles excluded with kPoleMargin

  /// The interval clipped to [−1, 1], or a unit-length window at its start
  /// when they do not meet.
  std::pair<double, double> sample_range() const;
};

/// Default branch: Positive for c > 0, Constant for c = 0, Negative for c < 0.
/// Throws std::invalid_argument when the branch does not fit the sign of c.
OdeSolution ode_closed_form(double c, double z0 = 0.0, std::optional<OdeBranch> branch = std::nullopt,
                            double additive = 0.0);

struct OdeTable {
  std::vector<double> z, f, df;  // df = c − f²
  bool blew_up = false;
};

/// Classical fourth-order Runge–Kutta for f′ = c − f² from f(z_begin) = f0.
/// Stops with blew_up set once |f| exceeds `bound`. Throws on step ≤ 0.
OdeTable ode_integrate(double c, double f0, double z_begin, double z_end, double step, double bound = 1e8);

/// Golden verdicts for a scenario.
struct Expectations {
  std::string label;
  std::optional<double> f_tilde;            // constant value of f̃
  std::optional<double> soliton_lambda;     // λ of the attached soliton
  std::optional<LambdaType> lambda_type;
  bool contact_soliton = false;             // whether solve_contact_lambda finds λ
  std::optional<double> einstein_constant;
  std::optional<double> scalar_curvature;   // R when constant
};

struct Scenario {
  std::string name;
  Expr theta;
  AlmostContactStructure structure;
  std::optional<SolitonSpec> soliton;
  std::vector<std::pair<double, double>> ranges;  // sample box; empty means default
  Expectations expected;
};

struct BuiltinParams {
  std::optional<double> c;       // fcosy_tanh, default 1
  std::optional<double> alpha;   // kenmotsu_*, default 1
  std::optional<double> lambda;  // gaussian_soliton_flat, default 1
};

const std::vector<std::string>& builtin_names();

/// Throws std::invalid_argument on an unknown name or out-of-range parameter.
Scenario builtin(const std::string& name, const BuiltinParams& params = {});

/// Scenario for an arbitrary θ(z) with no soliton and no expectations.
Scenario theta_scenario(const Expr& theta);

}  // namespace acm
