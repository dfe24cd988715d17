#include "cutmg/report.hpp"

namespace cutmg {

std::optional<Scalar> estimate_rho_star(const std::vector<Scalar>& energy_diffs) {
  if (energy_diffs.size() < 2) return std::nullopt;
  const Scalar denominator = energy_diffs[energy_diffs.size() - 2];
  if (!(denominator > 1e-300)) return std::nullopt;
  return energy_diffs.back() / denominator;
}

}  // namespace cutmg
