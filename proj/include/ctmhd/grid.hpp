#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "ctmhd/errors.hpp"

namespace ctmhd {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

struct GridSpec {
  int nx = 1, ny = 1, nz = 1;
  double x0 = 0.0, y0 = 0.0, z0 = 0.0;
  double dx = 1.0, dy = 1.0, dz = 1.0;
  int ghost = 2;

  int n(int axis) const { return axis == 0 ? nx : (axis == 1 ? ny : nz); }
  double d(int axis) const { return axis == 0 ? dx : (axis == 1 ? dy : dz); }
  double origin(int axis) const { return axis == 0 ? x0 : (axis == 1 ? y0 : z0); }
  double center(int axis, int idx) const { return origin(axis) + (idx + 0.5) * d(axis); }
  Vec3 center(int i, int j, int k) const { return {center(0, i), center(1, j), center(2, k)}; }
  double min_spacing() const;
  std::size_t cells() const { return std::size_t(nx) * ny * nz; }
  void validate() const;

  bool operator==(const GridSpec&) const = default;
};

// Interior cell centers, x-fastest.
std::vector<Vec3> cell_centers(const GridSpec& spec);

// Multi-component cell data with ghost layers. Component outermost, then z, y, x.
class Field {
 public:
  Field() = default;
  Field(const GridSpec& spec, int ncomp, double fill = 0.0);

  const GridSpec& spec() const { return spec_; }
  int ncomp() const { return ncomp_; }
  int ghost() const { return spec_.ghost; }

  std::ptrdiff_t stride(int axis) const { return axis == 0 ? 1 : (axis == 1 ? px_ : px_ * py_); }
  int padded(int axis) const { return axis == 0 ? px_ : (axis == 1 ? py_ : pz_); }
  std::size_t component_size() const { return std::size_t(px_) * py_ * pz_; }

  // Offset of cell (i,j,k) inside one component; indices may be negative (ghosts).
  std::size_t offset(int i, int j, int k) const {
    const int g = spec_.ghost;
    return (std::size_t(k + g) * py_ + std::size_t(j + g)) * px_ + std::size_t(i + g);
  }

  double& operator()(int c, int i, int j, int k) { return values_[c * component_size() + offset(i, j, k)]; }
  double operator()(int c, int i, int j, int k) const {
    return values_[c * component_size() + offset(i, j, k)];
  }

  double* component(int c) { return values_.data() + c * component_size(); }
  const double* component(int c) const { return values_.data() + c * component_size(); }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  // New field holding components [first, first+count) of this one.
  Field extract(int first, int count) const;
  // Copy of interior values of component c, x-fastest.
  std::vector<double> interior(int c) const;
  bool interior_finite() const;

 private:
  GridSpec spec_{};
  int ncomp_ = 0;
  int px_ = 0, py_ = 0, pz_ = 0;
  std::vector<double> values_;
};

enum class BcKind { periodic, extrapolate0, extrapolate1, reflect_wall, shifted_shock_tube };

struct FaceBc {
  BcKind kind = BcKind::periodic;
  std::vector<int> negate;           // reflect_wall: components that flip sign
  std::array<int, 3> shift{0, 0, 0}; // shifted_shock_tube: source offset for the high face
};

// Faces ordered x_lo, x_hi, y_lo, y_hi, z_lo, z_hi.
struct BoundarySpec {
  std::array<FaceBc, 6> face{};

  static BoundarySpec uniform(BcKind kind);
  FaceBc& lo(int axis) { return face[2 * axis]; }
  FaceBc& hi(int axis) { return face[2 * axis + 1]; }
  const FaceBc& lo(int axis) const { return face[2 * axis]; }
  const FaceBc& hi(int axis) const { return face[2 * axis + 1]; }
  bool periodic(int axis) const { return lo(axis).kind == BcKind::periodic; }
  void validate() const;
};

// Gradient of the affine part of a field: linear[c][d] = d(comp c)/d(x_d).
// Ghosts filled by wrapping (periodic or shifted) receive linear * (x_ghost - x_source).
struct AffinePart {
  std::vector<Vec3> linear;
  bool empty() const;
};

void fill_ghost(Field& field, const BoundarySpec& bc, const AffinePart* affine = nullptr);

// An axis with one cell and periodic ends carries no variation and is skipped by the sweeps.
bool axis_active(const GridSpec& spec, const BoundarySpec& bc, int axis);

}  // namespace ctmhd
