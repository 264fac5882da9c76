#pragma once

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace permanence {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Built-in per-capita growth laws f(r, y), where r is the intrinsic rate
/// and y the aggregated competition load. All built-ins satisfy
/// f(r, r) = 0, df/dy < 0 and y*f(r, y) -> 0 as y -> 0+.
enum class FamilyTag { LotkaVolterra, Gompertz, LeslieGower, Ricker, Custom };

struct GrowthFamily {
  FamilyTag tag = FamilyTag::LotkaVolterra;
  // Custom evaluators; unused for built-ins. dfdy may be empty, in which
  // case derivatives fall back to central finite differences.
  std::function<double(double, double)> f;
  std::function<double(double, double)> dfdy;

  static GrowthFamily lotka_volterra() { return {FamilyTag::LotkaVolterra, {}, {}}; }
  static GrowthFamily gompertz() { return {FamilyTag::Gompertz, {}, {}}; }
  static GrowthFamily leslie_gower() { return {FamilyTag::LeslieGower, {}, {}}; }
  static GrowthFamily ricker() { return {FamilyTag::Ricker, {}, {}}; }
  static GrowthFamily custom(std::function<double(double, double)> f,
                             std::function<double(double, double)> dfdy = {}) {
    return {FamilyTag::Custom, std::move(f), std::move(dfdy)};
  }
};

std::string family_name(FamilyTag tag);
std::optional<FamilyTag> family_from_name(const std::string& name);

/// A competitive Kolmogorov system x_i' = x_i f(c_i, (B x)_i) with
/// strictly positive interaction matrix B and rate vector c.
struct SystemSpec {
  int n = 0;
  Mat B;
  Vec c;
  GrowthFamily family;
};

/// f(r, y) for the given family. r must be positive and finite; y must be
/// nonnegative (strictly positive for Gompertz).
double growth_rate(const GrowthFamily& family, double r, double y);

/// d f(r, y) / dy; finite differences for Custom families without an
/// analytic derivative.
double growth_rate_dy(const GrowthFamily& family, double r, double y);

/// Component i equals f(c_i, (B x)_i).
Vec per_capita(const SystemSpec& spec, const Vec& x);

/// Component i equals x_i * f_i(x); exactly 0 whenever x_i == 0 (faces are
/// invariant, and the product limit y f -> 0 makes the short-circuit the
/// continuous extension).
Vec vector_field(const SystemSpec& spec, const Vec& x);

/// Jacobian of the vector field: J_ij = delta_ij f_i + x_i f_i' b_ij.
Mat jacobian(const SystemSpec& spec, const Vec& x);

/// All structural violations of the spec (positivity, shapes, finiteness,
/// growth-law axioms for Custom families, checked on a log-spaced sample
/// grid). Empty result means the spec is usable.
std::vector<std::string> validate(const SystemSpec& spec);

}  // namespace permanence
