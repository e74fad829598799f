#pragma once

#include <span>
#include <vector>

#include "ctmhd/grid.hpp"

namespace ctmhd::detail {

// Trapezoidal centred update of the weakly hyperbolic component along a row.
// wold, cold, cnew, uc carry two ghost cells per side; out has the interior length.
inline void weak_row(const std::vector<double>& wold, const std::vector<double> (&cold)[2],
                     const std::vector<double> (&cnew)[2], const std::vector<double> (&uc)[2], double dtau,
                     double dx, std::span<double> out) {
  const double h = 0.5 * dtau / (2.0 * dx);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::size_t p = i + 2;
    double s = 0.0;
    for (int t = 0; t < 2; ++t)
      s += uc[t][p] * ((cold[t][p + 1] - cold[t][p - 1]) + (cnew[t][p + 1] - cnew[t][p - 1]));
    out[i] = wold[p] + h * s;
  }
}

double max_courant(const Field& u, int axis, double dtau);
void check_courant(const Field& u, int axis, double dtau);

}  // namespace ctmhd::detail
