#include "ctmhd/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ctmhd {

double GridSpec::min_spacing() const { return std::min({dx, dy, dz}); }

void GridSpec::validate() const {
  if (nx < 1 || ny < 1 || nz < 1) throw ConfigError("grid: cell counts must be >= 1");
  if (!(dx > 0.0 && dy > 0.0 && dz > 0.0)) throw ConfigError("grid: cell widths must be > 0");
  if (ghost < 2) throw ConfigError("grid: ghost width must be >= 2");
}

std::vector<Vec3> cell_centers(const GridSpec& spec) {
  std::vector<Vec3> out;
  out.reserve(spec.cells());
  for (int k = 0; k < spec.nz; ++k)
    for (int j = 0; j < spec.ny; ++j)
      for (int i = 0; i < spec.nx; ++i) out.push_back(spec.center(i, j, k));
  return out;
}

Field::Field(const GridSpec& spec, int ncomp, double fill)
    : spec_(spec),
      ncomp_(ncomp),
      px_(spec.nx + 2 * spec.ghost),
      py_(spec.ny + 2 * spec.ghost),
      pz_(spec.nz + 2 * spec.ghost) {
  spec.validate();
  values_.assign(std::size_t(ncomp) * component_size(), fill);
}

Field Field::extract(int first, int count) const {
  Field out(spec_, count);
  std::copy(values_.begin() + first * component_size(),
            values_.begin() + (first + count) * component_size(), out.values_.begin());
  return out;
}

std::vector<double> Field::interior(int c) const {
  std::vector<double> out;
  out.reserve(spec_.cells());
  for (int k = 0; k < spec_.nz; ++k)
    for (int j = 0; j < spec_.ny; ++j)
      for (int i = 0; i < spec_.nx; ++i) out.push_back((*this)(c, i, j, k));
  return out;
}

bool Field::interior_finite() const {
  for (int c = 0; c < ncomp_; ++c)
    for (int k = 0; k < spec_.nz; ++k)
      for (int j = 0; j < spec_.ny; ++j)
        for (int i = 0; i < spec_.nx; ++i)
          if (!std::isfinite((*this)(c, i, j, k))) return false;
  return true;
}

BoundarySpec BoundarySpec::uniform(BcKind kind) {
  BoundarySpec bc;
  for (auto& f : bc.face) f.kind = kind;
  return bc;
}

void BoundarySpec::validate() const {
  for (int a = 0; a < 3; ++a) {
    const bool lp = lo(a).kind == BcKind::periodic;
    const bool hp = hi(a).kind == BcKind::periodic;
    if (lp != hp) throw ConfigError("boundary: periodic faces must be paired on axis " + std::to_string(a));
    for (const FaceBc* f : {&lo(a), &hi(a)}) {
      if (f->kind == BcKind::shifted_shock_tube) {
        const int s = f->shift[a];
        if (s == 0) throw ConfigError("boundary: shifted face needs a nonzero shift along its axis");
        if ((f == &lo(a)) != (s > 0)) throw ConfigError("boundary: shift must point into the domain");
      }
    }
  }
}

bool AffinePart::empty() const {
  for (const auto& g : linear)
    for (double v : g)
      if (v != 0.0) return false;
  return true;
}

bool axis_active(const GridSpec& spec, const BoundarySpec& bc, int axis) {
  return !(spec.n(axis) == 1 && bc.periodic(axis));
}

namespace {

struct Range {
  int lo, hi;  // inclusive
};

void fill_axis(Field& f, const BoundarySpec& bc, const AffinePart* affine, int axis) {
  const GridSpec& s = f.spec();
  const int g = s.ghost;
  const int n = s.n(axis);
  std::array<Range, 3> range;
  for (int b = 0; b < 3; ++b)
    range[b] = b < axis ? Range{-g, s.n(b) + g - 1} : Range{0, s.n(b) - 1};
  const int nc = f.ncomp();
  const bool use_affine = affine != nullptr && !affine->empty();

  for (int side = 0; side < 2; ++side) {
    const FaceBc& fb = side == 0 ? bc.lo(axis) : bc.hi(axis);
    std::vector<double> sign(nc, 1.0);
    if (fb.kind == BcKind::reflect_wall)
      for (int c : fb.negate) sign.at(c) = -1.0;

    for (int m = 1; m <= g; ++m) {
      const int gidx = side == 0 ? -m : n - 1 + m;
      const int b1 = (axis + 1) % 3, b2 = (axis + 2) % 3;
      for (int v2 = range[b2].lo; v2 <= range[b2].hi; ++v2) {
        for (int v1 = range[b1].lo; v1 <= range[b1].hi; ++v1) {
          std::array<int, 3> dst{};
          dst[axis] = gidx;
          dst[b1] = v1;
          dst[b2] = v2;
          std::array<int, 3> src = dst;
          bool linear_extrap = false;
          switch (fb.kind) {
            case BcKind::periodic:
              src[axis] = ((gidx % n) + n) % n;
              break;
            case BcKind::extrapolate0:
              src[axis] = side == 0 ? 0 : n - 1;
              break;
            case BcKind::extrapolate1:
              src[axis] = side == 0 ? 0 : n - 1;
              linear_extrap = n > 1;
              break;
            case BcKind::reflect_wall:
              src[axis] = std::clamp(side == 0 ? m - 1 : n - m, 0, n - 1);
              break;
            case BcKind::shifted_shock_tube:
              while (src[axis] < 0 || src[axis] >= n)
                for (int d = 0; d < 3; ++d) src[d] += fb.shift[d];
              for (int d = 0; d < 3; ++d)
                if (d != axis) src[d] = std::clamp(src[d], -g, s.n(d) + g - 1);
              break;
          }
          const std::size_t od = f.offset(dst[0], dst[1], dst[2]);
          const std::size_t os = f.offset(src[0], src[1], src[2]);
          if (linear_extrap) {
            std::array<int, 3> in = src;
            in[axis] += side == 0 ? 1 : -1;
            const std::size_t oi = f.offset(in[0], in[1], in[2]);
            for (int c = 0; c < nc; ++c) {
              const double* p = f.component(c);
              f.component(c)[od] = p[os] + m * (p[os] - p[oi]);
            }
            continue;
          }
          for (int c = 0; c < nc; ++c) f.component(c)[od] = sign[c] * f.component(c)[os];
          if (use_affine &&
              (fb.kind == BcKind::periodic || fb.kind == BcKind::shifted_shock_tube)) {
            Vec3 disp{};
            for (int d = 0; d < 3; ++d) disp[d] = (dst[d] - src[d]) * s.d(d);
            for (int c = 0; c < nc && c < int(affine->linear.size()); ++c) {
              const Vec3& gr = affine->linear[c];
              f.component(c)[od] += gr[0] * disp[0] + gr[1] * disp[1] + gr[2] * disp[2];
            }
          }
        }
      }
    }
  }
}

}  // namespace

void fill_ghost(Field& field, const BoundarySpec& bc, const AffinePart* affine) {
  bc.validate();
  for (int axis = 0; axis < 3; ++axis) fill_axis(field, bc, affine, axis);
}

}  // namespace ctmhd
