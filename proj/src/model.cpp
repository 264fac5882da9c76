#include "permanence/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace permanence {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

}  // namespace

std::string family_name(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::LotkaVolterra: return "lotka_volterra";
    case FamilyTag::Gompertz: return "gompertz";
    case FamilyTag::LeslieGower: return "leslie_gower";
    case FamilyTag::Ricker: return "ricker";
    case FamilyTag::Custom: return "custom";
  }
  return "unknown";
}

std::optional<FamilyTag> family_from_name(const std::string& name) {
  if (name == "lotka_volterra") return FamilyTag::LotkaVolterra;
  if (name == "gompertz") return FamilyTag::Gompertz;
  if (name == "leslie_gower") return FamilyTag::LeslieGower;
  if (name == "ricker") return FamilyTag::Ricker;
  return std::nullopt;
}

double growth_rate(const GrowthFamily& family, double r, double y) {
  require_finite(r, "r");
  require_finite(y, "y");
  if (r <= 0.0) throw std::invalid_argument("r must be strictly positive");
  if (y < 0.0) throw std::invalid_argument("y must be nonnegative");
  switch (family.tag) {
    case FamilyTag::LotkaVolterra:
      return r - y;
    case FamilyTag::Gompertz:
      if (y <= 0.0) throw std::domain_error("gompertz growth rate undefined at y = 0");
      return std::log(r / y);
    case FamilyTag::LeslieGower:
      return (1.0 + r) / (1.0 + y) - 1.0;
    case FamilyTag::Ricker:
      return std::exp(r - y) - 1.0;
    case FamilyTag::Custom: {
      if (!family.f) throw std::invalid_argument("custom family has no evaluator");
      double v = family.f(r, y);
      if (!std::isfinite(v)) {
        throw std::domain_error("custom family evaluator returned a non-finite value");
      }
      return v;
    }
  }
  throw std::logic_error("unreachable family tag");
}

double growth_rate_dy(const GrowthFamily& family, double r, double y) {
  require_finite(r, "r");
  require_finite(y, "y");
  switch (family.tag) {
    case FamilyTag::LotkaVolterra:
      return -1.0;
    case FamilyTag::Gompertz:
      if (y <= 0.0) throw std::domain_error("gompertz derivative undefined at y = 0");
      return -1.0 / y;
    case FamilyTag::LeslieGower:
      return -(1.0 + r) / ((1.0 + y) * (1.0 + y));
    case FamilyTag::Ricker:
      return -std::exp(r - y);
    case FamilyTag::Custom: {
      if (family.dfdy) {
        double v = family.dfdy(r, y);
        if (!std::isfinite(v)) {
          throw std::domain_error("custom family derivative returned a non-finite value");
        }
        return v;
      }
      // Central difference with a relative step.
      double h = 1e-6 * std::max(1.0, std::abs(y));
      double lo = y - h, hi = y + h;
      if (lo <= 0.0) lo = y;  // one-sided near the domain edge
      double v = (growth_rate(family, r, hi) - growth_rate(family, r, lo)) / (hi - lo);
      if (!std::isfinite(v)) {
        throw std::domain_error("custom family derivative evaluation failed");
      }
      return v;
    }
  }
  throw std::logic_error("unreachable family tag");
}

Vec per_capita(const SystemSpec& spec, const Vec& x) {
  if (x.size() != spec.n) throw std::invalid_argument("state dimension mismatch");
  for (int i = 0; i < spec.n; ++i) {
    if (!(x[i] >= 0.0)) throw std::invalid_argument("state must be componentwise nonnegative");
  }
  Vec load = spec.B * x;
  Vec f(spec.n);
  for (int i = 0; i < spec.n; ++i) {
    if (spec.family.tag == FamilyTag::Gompertz && load[i] <= 0.0) {
      std::ostringstream os;
      os << "gompertz per-capita rate undefined: (Bx)_" << i + 1 << " = 0";
      throw std::domain_error(os.str());
    }
    f[i] = growth_rate(spec.family, spec.c[i], load[i]);
  }
  return f;
}

Vec vector_field(const SystemSpec& spec, const Vec& x) {
  if (x.size() != spec.n) throw std::invalid_argument("state dimension mismatch");
  Vec load = spec.B * x;
  Vec v = Vec::Zero(spec.n);
  for (int i = 0; i < spec.n; ++i) {
    if (!(x[i] >= 0.0)) throw std::invalid_argument("state must be componentwise nonnegative");
    if (x[i] == 0.0) continue;  // faces are exactly invariant
    v[i] = x[i] * growth_rate(spec.family, spec.c[i], load[i]);
  }
  return v;
}

Mat jacobian(const SystemSpec& spec, const Vec& x) {
  Vec f = per_capita(spec, x);
  Vec load = spec.B * x;
  Mat J = Mat::Zero(spec.n, spec.n);
  for (int i = 0; i < spec.n; ++i) {
    double fp = x[i] > 0.0 ? growth_rate_dy(spec.family, spec.c[i], load[i]) : 0.0;
    for (int j = 0; j < spec.n; ++j) {
      J(i, j) = x[i] * fp * spec.B(i, j);
    }
    J(i, i) += f[i];
  }
  return J;
}

std::vector<std::string> validate(const SystemSpec& spec) {
  std::vector<std::string> errors;
  auto fail = [&errors](const std::string& msg) { errors.push_back(msg); };

  if (spec.n < 1) {
    fail("n must be at least 1");
    return errors;
  }
  if (spec.B.rows() != spec.n || spec.B.cols() != spec.n) {
    fail("B must be a square matrix of size n");
    return errors;
  }
  if (spec.c.size() != spec.n) {
    fail("c must have length n");
    return errors;
  }
  for (int i = 0; i < spec.n; ++i) {
    for (int j = 0; j < spec.n; ++j) {
      double b = spec.B(i, j);
      if (!std::isfinite(b)) {
        std::ostringstream os;
        os << "b[" << i + 1 << "][" << j + 1 << "] must be finite";
        fail(os.str());
      } else if (b <= 0.0) {
        std::ostringstream os;
        os << "b[" << i + 1 << "][" << j + 1 << "] must be strictly positive";
        fail(os.str());
      }
    }
    if (!std::isfinite(spec.c[i])) {
      std::ostringstream os;
      os << "c[" << i + 1 << "] must be finite";
      fail(os.str());
    } else if (spec.c[i] <= 0.0) {
      std::ostringstream os;
      os << "c[" << i + 1 << "] must be strictly positive";
      fail(os.str());
    }
  }

  if (spec.family.tag == FamilyTag::Custom) {
    if (!spec.family.f) {
      fail("custom family requires an evaluator");
      return errors;
    }
    // Axiom sampling on a log grid; the axioms are analytic so sampling is
    // the only general test available.
    const std::vector<double> grid = {1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3};
    for (double r : grid) {
      double frr;
      try {
        frr = growth_rate(spec.family, r, r);
      } catch (const std::exception& e) {
        fail(std::string("custom family evaluation failed at (r, r): ") + e.what());
        continue;
      }
      if (std::abs(frr) > 1e-12) {
        std::ostringstream os;
        os << "custom family violates f(r, r) = 0 at r = " << r << " (got " << frr << ")";
        fail(os.str());
      }
      for (double y : grid) {
        double d;
        try {
          d = growth_rate_dy(spec.family, r, y);
        } catch (const std::exception& e) {
          fail(std::string("custom family derivative failed: ") + e.what());
          continue;
        }
        if (!(d < 0.0)) {
          std::ostringstream os;
          os << "custom family violates df/dy < 0 at (r, y) = (" << r << ", " << y << ")";
          fail(os.str());
        }
      }
      // y f(r, y) must vanish as y -> 0+.
      try {
        double y = 1e-9;
        double yf = y * growth_rate(spec.family, r, y);
        if (std::abs(yf) > 1e-6 * (1.0 + r)) {
          std::ostringstream os;
          os << "custom family violates y f(r, y) -> 0 at r = " << r << " (|y f| = "
             << std::abs(yf) << ")";
          fail(os.str());
        }
      } catch (const std::exception& e) {
        fail(std::string("custom family evaluation failed near y = 0: ") + e.what());
      }
    }
  }
  return errors;
}

}  // namespace permanence
