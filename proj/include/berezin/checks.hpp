#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "berezin/calculus.hpp"
#include "berezin/operators.hpp"

namespace berezin {

enum class Certification { Exact, OperatorNormBound, GridEstimate };

std::string to_string(Certification c);

struct Hypothesis {
  std::string name;
  double value = 0.0;
  bool satisfied = true;
  Certification cert = Certification::Exact;
};

/// One inequality check. `pass` holds exactly when `slack >= -tol` and the
/// trial is not vacuous; a trial with any unsatisfied hypothesis is vacuous,
/// never failed. Two-sided checks report the binding link (the side with the
/// smaller slack), named in `detail`.
struct InequalityReport {
  std::string check_id;
  std::uint64_t seed = 0;
  std::vector<Hypothesis> hypotheses;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double tol = 1e-8;
  bool pass = false;
  bool vacuous = false;
  std::string detail;
  std::vector<std::string> warnings;
  std::string instance_a;  // file references for serialized operators
  std::string instance_b;
};

// Every checker certifies the hypothesis radius as r = ||A - B|| (operator
// norm; it dominates the ber-norm reading of the hypothesis) and cross-checks
// that the grid value of ||A - B||_ber stays below it. ||B|| and ||B^{-1}||
// come from singular values. All ber / Berezin-norm terms are evaluated over
// one shared point set per check (base grid plus the union of refinement
// probes of every quantity involved), which keeps each grid-restricted
// statement an exact theorem. Singular B throws SingularityError; unsatisfied
// hypothesis windows yield vacuous reports.

InequalityReport check_prop_2_1(const OperatorMatrix& a, const OperatorMatrix& b,
                                const GridEval& ev, double tol = 1e-8);

enum class Cor21Variant { I, II };
InequalityReport check_cor_2_1(const OperatorMatrix& a, Complex mu, const GridEval& ev,
                               Cor21Variant variant, double tol = 1e-8);

InequalityReport check_prop_2_2(const OperatorMatrix& a, const OperatorMatrix& b,
                                const GridEval& ev, double tol = 1e-8);

InequalityReport check_prop_2_3(const OperatorMatrix& a, const OperatorMatrix& b,
                                const GridEval& ev, double tol = 1e-8);

InequalityReport check_eq_2_17(const OperatorMatrix& a, Complex mu, const GridEval& ev,
                               double tol = 1e-8);

InequalityReport check_prop_2_4(const OperatorMatrix& a, const OperatorMatrix& b,
                                const GridEval& ev, double tol = 1e-8);

InequalityReport check_rem_2_1a(const OperatorMatrix& a, Complex mu, const GridEval& ev,
                                double tol = 1e-8);

InequalityReport check_rem_2_1b(const OperatorMatrix& a, Complex mu, const GridEval& ev,
                                double tol = 1e-8);

InequalityReport check_thm_2_1(const OperatorMatrix& a, const OperatorMatrix& b,
                               const GridEval& ev, double tol = 1e-8);

InequalityReport check_eq_2_29(const OperatorMatrix& a, Complex mu, const GridEval& ev,
                               double tol = 1e-8);

InequalityReport check_eq_2_30(const OperatorMatrix& a, const GridEval& ev,
                               double tol = 1e-8);

InequalityReport check_thm_2_2(const OperatorMatrix& a, const OperatorMatrix& b,
                               const GridEval& ev, double tol = 1e-8);

InequalityReport check_eq_2_35(const OperatorMatrix& a, Complex mu, const GridEval& ev,
                               double tol = 1e-8);

InequalityReport check_eq_2_36(const OperatorMatrix& a, Complex mu, const GridEval& ev,
                               double tol = 1e-8);

/// Normal-operator power bound; even n checks ber(N^n) <= ||N^{n/2}||_ber^2,
/// odd n checks ber(N^n) <= ||N|| ||N^{(n-1)/2}||_ber^2.
InequalityReport check_prop_3_1(const OperatorMatrix& nop, int n, const GridEval& ev,
                                double tol = 1e-8);

/// Gate: the self-commutator must be PSD up to 1e-9 (on the finite model this
/// forces near-normality). Always verifies the pointwise identity
/// <[T*,T] khat, khat> = ||T khat||^2 - ||T* khat||^2 at every node.
InequalityReport check_hyponormal_facts(const OperatorMatrix& t, const GridEval& ev,
                                        double tol = 1e-8);

InequalityReport check_thm_3_1(const OperatorMatrix& a, const GridEval& ev,
                               double tol = 1e-10);

InequalityReport check_basic_chain(const OperatorMatrix& a, const GridEval& ev,
                                   double tol = 1e-9);

/// Vacuous unless inf-defect is grid-certified strictly positive beyond tol;
/// then asserts the strict gap ber < ||A||_ber.
InequalityReport check_cor_3_1(const OperatorMatrix& a, const GridEval& ev,
                               double tol = 1e-8);

}  // namespace berezin
