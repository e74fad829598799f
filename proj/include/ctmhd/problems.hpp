#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ctmhd/ct.hpp"

namespace ctmhd {

struct AlfvenSpec {
  double phi = 0.4636476090008061;  // atan(0.5)
  double theta = 0.0;
  double amplitude = 0.1;
  double rho = 1.0;
  double press = 0.1;

  Vec3 normal() const;   // n, also the mean field
  Vec3 tangent() const;  // t
  Vec3 binormal() const; // r = n x t
  bool planar() const { return theta == 0.0; }
};

struct RotationSpec {
  double alpha = 0.0;
  double beta = 0.0;

  Mat3 forward() const;              // (x, y, z) -> (xi, eta, zeta)
  Mat3 vector_to_cartesian() const;  // rotated components -> Cartesian components
  Vec3 to_rotated(const Vec3& x) const;
  Vec3 to_cartesian(const Vec3& v) const;
};

struct ProblemSetup {
  std::string name;
  GridSpec grid;
  BoundarySpec q_bc;
  BoundarySpec a_bc;
  Field q0;
  PotentialField a0;
  double end_time = 0.0;
  LimiterKind limiter = LimiterKind::mc;
  double nu = 0.0;
  std::vector<double> output_times;
};

// Alfven wave; nz == 1 selects the planar (theta = 0) variant.
GridSpec alfven_grid(const AlfvenSpec& spec, int nx, int ny, int nz);
ProblemSetup alfven_init(const AlfvenSpec& spec, const GridSpec& grid);

struct AlfvenExact {
  Field q;             // conserved state, interior
  Field b;             // magnetic field, interior
  PotentialField a;    // Weyl-gauge potential, interior
};
AlfvenExact alfven_exact(const AlfvenSpec& spec, double t, const GridSpec& grid);

RotationSpec shock_tube_rotation();
// 768s x 8s x 8s cells on [-0.75, 0.75] x [0, 0.015625]^2.
GridSpec rotated_shock_tube_grid(int scale = 1);
ProblemSetup rotated_shock_tube_init(const GridSpec& grid);
// Mesh-aligned 1D version of the same Riemann problem, x playing the role of xi.
ProblemSetup shock_tube_1d_init(int cells);

GridSpec orszag_tang_grid(int n);
ProblemSetup orszag_tang_init(const GridSpec& grid);

// Unit cube (full) or [0,1] x [0.5,1]^2 (quarter) with nx cells along x.
GridSpec cloud_shock_grid(int nx, bool quarter);
ProblemSetup cloud_shock_init(const GridSpec& grid, bool quarter);

// (xi(center), value) for every interior cell, sorted by xi.
std::vector<std::pair<double, double>> project_xi(const GridSpec& grid, const RotationSpec& rot, const Field& field,
                                                  int comp);

CtState initial_state(const ProblemSetup& setup);

}  // namespace ctmhd
