#include "berezin/space.hpp"

#include <cmath>

namespace berezin {

std::string to_string(SpaceKind kind) {
  return kind == SpaceKind::Hardy ? "hardy" : "bergman";
}

SpaceKind space_kind_from_string(const std::string& name) {
  if (name == "hardy" || name == "Hardy") return SpaceKind::Hardy;
  if (name == "bergman" || name == "Bergman") return SpaceKind::Bergman;
  throw ConfigError("unknown space kind '" + name + "' (expected hardy or bergman)");
}

SpaceSpec make_space(SpaceKind kind, int dim, double r_max) {
  if (dim < 2)
    throw ConfigError("space dimension must be at least 2, got " + std::to_string(dim));
  if (!(r_max > 0.0 && r_max < 1.0))
    throw ConfigError("r_max must lie in (0, 1), got " + std::to_string(r_max));
  return SpaceSpec{kind, dim, r_max};
}

KernelVector kernel_vector(const SpaceSpec& space, Complex lambda) {
  const double mod = std::abs(lambda);
  if (mod >= 1.0)
    throw DomainError("kernel point |lambda| = " + std::to_string(mod) +
                      " lies outside the open unit disk");
  if (mod > space.r_max * (1.0 + 1e-12))  // ulp slack: grid corners reconstruct r e^{i theta}
    throw DomainError("kernel point |lambda| = " + std::to_string(mod) +
                      " exceeds the evaluation cap r_max = " + std::to_string(space.r_max));

  const int n = space.dim;
  KernelVector k;
  k.lambda = lambda;
  k.coeffs.resize(n);
  const Complex lbar = std::conj(lambda);
  Complex power{1.0, 0.0};
  double norm_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    Complex c = power;
    if (space.kind == SpaceKind::Bergman) c *= std::sqrt(static_cast<double>(i + 1));
    k.coeffs(i) = c;
    norm_sq += std::norm(c);
    power *= lbar;
  }
  k.norm_sq = norm_sq;
  k.normalized = false;
  return k;
}

KernelVector normalize(const KernelVector& k) {
  KernelVector out = k;
  out.coeffs /= std::sqrt(k.norm_sq);  // norm_sq >= 1 since c_0 = 1
  out.normalized = true;
  return out;
}

Complex inner_product(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
  if (u.size() != v.size())
    throw UsageError("inner_product length mismatch: " + std::to_string(u.size()) +
                     " vs " + std::to_string(v.size()));
  return v.dot(u);  // Eigen's dot conjugates its first argument
}

Complex evaluate_poly(const SpaceSpec& space, const Eigen::VectorXcd& coeffs,
                      Complex z) {
  Complex acc{0.0, 0.0};
  Complex power{1.0, 0.0};
  for (int i = 0; i < coeffs.size(); ++i) {
    Complex basis = power;
    if (space.kind == SpaceKind::Bergman) basis *= std::sqrt(static_cast<double>(i + 1));
    acc += coeffs(i) * basis;
    power *= z;
  }
  return acc;
}

}  // namespace berezin
