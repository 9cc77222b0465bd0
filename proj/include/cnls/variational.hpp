#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cnls/functionals.hpp"

namespace cnls {

// One sample of the scaling path j(lambda) = E(phi^lambda): the energy, its
// lambda-derivative K, and the second derivative computed two ways (the ODE
// for j'' against a centered finite difference of j').
struct ScalingPathPoint {
  double lambda = 0.0;
  double j = 0.0;
  double jp = 0.0;
  double jpp_formula = 0.0;
  double jpp_fd = 0.0;
};

enum class BoundBranch { Negative, NonNegative };

struct BoundReport {
  double k = 0.0;
  double e = 0.0;
  double m = 0.0;
  BoundBranch branch = BoundBranch::NonNegative;
  double bound_value = 0.0;
  bool satisfied = false;
};

enum class InfimumConstraint { K_le_0, Kc_le_0 };

std::vector<ScalingPathPoint> scaling_path(const FieldSpec& spec, int dim,
                                           std::span<const double> lambdas);

// Root of K along the scaling path. For K(phi) < 0 the root is bracketed in
// [-20, 0]; for K(phi) > 0 a forward root is searched in [0, 20] and
// std::nullopt reports honestly that none exists there.
std::optional<double> find_lambda0(const FieldSpec& spec, int dim);

// Lower/upper bounds on K for fields with E < m.
BoundReport check_lemma_3_9(const FunctionalReport& rep, double m, int dim);

// min of H over the family members satisfying the constraint, skipping zero
// fields; std::nullopt when no member qualifies.
std::optional<double> sampled_infimum(std::span<const FieldSpec> family, int dim,
                                      InfimumConstraint constraint);

}  // namespace cnls
