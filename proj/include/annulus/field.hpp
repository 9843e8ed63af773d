#pragma once
#include <complex>
#include <vector>

#include "annulus/grid.hpp"

namespace annulus {

using cd = std::complex<double>;

// Spatial samples on the grid, row-major over axes.
struct Field {
  GridSpec grid;
  std::vector<cd> values;

  Field() = default;
  explicit Field(const GridSpec& g) : grid(g), values(g.size(), cd(0.0, 0.0)) {}
  Field(const GridSpec& g, std::vector<cd> v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.size())
      throw config_error("Field: value count does not match grid size");
  }
};

// Frequency coefficients in FFT wrap-around order; a single lattice mode
// e^{i<x,xi_k>} corresponds to a one-hot coefficient of value 1.
struct SpectralField {
  GridSpec grid;
  std::vector<cd> coeffs;

  SpectralField() = default;
  explicit SpectralField(const GridSpec& g)
      : grid(g), coeffs(g.size(), cd(0.0, 0.0)) {}
};

// Quadrature in t: nodes and positive weights for the measure dt (uniform)
// or dt/t (geometric); weights sum to the interval's measure.
struct QuadratureScheme {
  enum class Kind { midpoint_geometric, midpoint_uniform };
  Kind kind = Kind::midpoint_uniform;
  double t_min = 0.0, t_max = 1.0;
  std::vector<double> nodes;
  std::vector<double> weights;

  static QuadratureScheme geometric(double t_min, double t_max, int M);
  static QuadratureScheme uniform(double t_min, double t_max, int M);
};

// Field sampled at quadrature times; frames share the spatial grid.
struct SpaceTimeField {
  GridSpec grid;
  std::vector<double> times;
  std::vector<double> weights;
  std::vector<Field> frames;
};

// Nonnegative field.
struct WeightField {
  Field field;

  WeightField() = default;
  explicit WeightField(Field f);
  const GridSpec& grid() const { return field.grid; }
};

}  // namespace annulus
