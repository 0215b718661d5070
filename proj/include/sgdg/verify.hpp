#pragma once

#include <string>
#include <vector>

#include "sgdg/ops1d.hpp"

namespace sgdg {

struct CheckResult {
  std::string name;
  double value = 0.0;
  double tol = 0.0;
  bool pass = false;
};

// max |w_k D_kl + w_l D_lk - B_kl| with B = diag(-1, 0, ..., 0, 1).
double sbp_residual(const LobattoOperator& op);
// max_k |sum_l D_kl|.
double row_sum_residual(const LobattoOperator& op);

// Operator, mesh, free-stream and interface-flux property checks.
std::vector<CheckResult> verify_suite(int hllc_samples = 20000, unsigned seed = 7);

}  // namespace sgdg
