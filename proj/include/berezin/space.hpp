#pragma once

#include <Eigen/Core>
#include <complex>
#include <string>

#include "berezin/errors.hpp"

namespace berezin {

using Complex = std::complex<double>;

enum class SpaceKind { Hardy, Bergman };

std::string to_string(SpaceKind kind);
SpaceKind space_kind_from_string(const std::string& name);

/// Finite polynomial model P_{N-1} of a kernel space on the unit disk.
/// Basis convention: Hardy e_n(z) = z^n, Bergman e_n(z) = sqrt(n+1) z^n,
/// orthonormal by construction (coefficient vectors are unit vectors).
struct SpaceSpec {
  SpaceKind kind = SpaceKind::Hardy;
  int dim = 2;
  double r_max = 0.995;  // kernel evaluation cap, strictly inside the disk

  friend bool operator==(const SpaceSpec& a, const SpaceSpec& b) {
    return a.kind == b.kind && a.dim == b.dim && a.r_max == b.r_max;
  }
};

SpaceSpec make_space(SpaceKind kind, int dim, double r_max = 0.995);

/// Coefficient vector of the reproducing kernel at a disk point.
struct KernelVector {
  Complex lambda{};
  Eigen::VectorXcd coeffs;
  bool normalized = false;
  double norm_sq = 0.0;  // squared norm of the unnormalized kernel
};

/// Unnormalized kernel: Hardy c_n = conj(lambda)^n,
/// Bergman c_n = sqrt(n+1) conj(lambda)^n. Requires |lambda| <= r_max.
KernelVector kernel_vector(const SpaceSpec& space, Complex lambda);

KernelVector normalize(const KernelVector& k);

/// Hermitian pairing sum_n u_n conj(v_n); conjugate-linear in the second slot.
Complex inner_product(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v);

/// Evaluate the polynomial with basis coefficients `coeffs` at a disk point
/// (used by the reproducing-property checks).
Complex evaluate_poly(const SpaceSpec& space, const Eigen::VectorXcd& coeffs,
                      Complex z);

}  // namespace berezin
