#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace pwtrotter {

// Convention for the denominator of the kinetic coefficients. The default
// uses the total spin-orbital count N; the alternative halves it (number of
// spatial orbitals) for sensitivity checks.
enum class KineticDenominator { kSpinOrbitals, kSpatialOrbitals };

struct Nucleus {
  std::array<double, 3> position{0.0, 0.0, 0.0};  // Cartesian, first `dimension` entries used
  double charge = 1.0;
};

// Uniform-electron-gas (or few-nuclei) system on a periodic lattice of
// plane-wave dual orbitals. Spin-orbital ordering is blocked: all spin-up
// orbitals first (sites in row-major order), then all spin-down.
struct SystemSpec {
  int dimension = 2;
  std::vector<int> sides;  // lattice points per axis, size == dimension
  bool spinful = true;
  int num_electrons = 1;  // eta
  double rs = 1.0;        // Wigner-Seitz radius (Hartree atomic units)
  std::vector<Nucleus> nuclei;  // empty => jellium (no external potential)
  KineticDenominator kinetic_denominator = KineticDenominator::kSpinOrbitals;

  int num_sites() const {
    int m = 1;
    for (int L : sides) m *= L;
    return m;
  }
  int num_spin_orbitals() const { return (spinful ? 2 : 1) * num_sites(); }

  void validate() const {
    if (dimension != 2 && dimension != 3)
      throw std::invalid_argument("SystemSpec: dimension must be 2 or 3");
    if (static_cast<int>(sides.size()) != dimension)
      throw std::invalid_argument("SystemSpec: sides.size() must equal dimension");
    for (int L : sides)
      if (L < 1) throw std::invalid_argument("SystemSpec: lattice sides must be >= 1");
    if (num_electrons < 0)
      throw std::invalid_argument("SystemSpec: num_electrons must be >= 0");
    if (num_electrons > num_spin_orbitals())
      throw std::invalid_argument("SystemSpec: num_electrons exceeds number of spin-orbitals");
    if (!(rs > 0.0)) throw std::invalid_argument("SystemSpec: rs must be positive");
  }
};

// Volume (area in 2D) of the simulation cell at the requested density:
// eta * pi * rs^2 in 2D, eta * (4/3) pi rs^3 in 3D.
inline double cell_volume(const SystemSpec& spec) {
  spec.validate();
  const double eta = static_cast<double>(spec.num_electrons);
  if (spec.dimension == 2) return eta * std::numbers::pi * spec.rs * spec.rs;
  return eta * (4.0 / 3.0) * std::numbers::pi * spec.rs * spec.rs * spec.rs;
}

// Uniform grid spacing. The cell is anisotropic for unequal sides: side
// lengths are spacing * L_i, so spacing = (volume / prod(sides))^(1/d).
inline double grid_spacing(const SystemSpec& spec) {
  return std::pow(cell_volume(spec) / spec.num_sites(), 1.0 / spec.dimension);
}

// Integer lattice coordinates per axis: [-floor(L/2), -floor(L/2) + L - 1],
// i.e. symmetric around zero (inclusive of +floor(L/2) when L is odd).
inline std::vector<int> axis_range(int L) {
  std::vector<int> r(L);
  for (int i = 0; i < L; ++i) r[i] = -(L / 2) + i;
  return r;
}

// All integer lattice vectors in row-major order (first axis slowest).
inline std::vector<std::array<int, 3>> lattice_points(const SystemSpec& spec) {
  spec.validate();
  std::vector<std::array<int, 3>> pts;
  pts.reserve(spec.num_sites());
  std::array<int, 3> p{0, 0, 0};
  if (spec.dimension == 2) {
    for (int x : axis_range(spec.sides[0]))
      for (int y : axis_range(spec.sides[1])) {
        p = {x, y, 0};
        pts.push_back(p);
      }
  } else {
    for (int x : axis_range(spec.sides[0]))
      for (int y : axis_range(spec.sides[1]))
        for (int z : axis_range(spec.sides[2])) {
          p = {x, y, z};
          pts.push_back(p);
        }
  }
  return pts;
}

// Momentum vectors k_nu = 2*pi*nu_i / (spacing * L_i), one per lattice point
// (the nu = 0 vector is included; operations that exclude it do so themselves).
inline std::vector<std::array<double, 3>> momentum_vectors(const SystemSpec& spec) {
  const double s = grid_spacing(spec);
  std::vector<std::array<double, 3>> ks;
  ks.reserve(spec.num_sites());
  for (const auto& nu : lattice_points(spec)) {
    std::array<double, 3> k{0.0, 0.0, 0.0};
    for (int i = 0; i < spec.dimension; ++i)
      k[i] = 2.0 * std::numbers::pi * nu[i] / (s * spec.sides[i]);
    ks.push_back(k);
  }
  return ks;
}

// Real-space positions r_p = spacing * p, one per lattice site.
inline std::vector<std::array<double, 3>> orbital_positions(const SystemSpec& spec) {
  const double s = grid_spacing(spec);
  std::vector<std::array<double, 3>> rs_;
  rs_.reserve(spec.num_sites());
  for (const auto& p : lattice_points(spec))
    rs_.push_back({s * p[0], s * p[1], s * p[2]});
  return rs_;
}

// Spin (0 = up block, 1 = down block) and lattice site of a spin-orbital index.
inline int spin_of(const SystemSpec& spec, int p) {
  return spec.spinful && p >= spec.num_sites() ? 1 : 0;
}
inline int site_of(const SystemSpec& spec, int p) {
  return spec.spinful ? p % spec.num_sites() : p;
}

}  // namespace pwtrotter
