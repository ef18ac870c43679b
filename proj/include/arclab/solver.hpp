#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "arclab/model.hpp"

namespace arclab {

// Uniform cell-centered rectangle grid, 1D or 2D.  Fields are stored
// row-major with x fastest: index = ix + nx*iy.
struct Grid {
  int dim = 1;
  std::array<int, 2> cells = {4, 1};
  std::array<double, 2> lengths = {1.0, 1.0};

  int nx() const { return cells[0]; }
  int ny() const { return dim == 2 ? cells[1] : 1; }
  int ncells() const { return nx() * ny(); }
  double hx() const { return lengths[0] / cells[0]; }
  double hy() const { return dim == 2 ? lengths[1] / cells[1] : 1.0; }
  double h_min() const { return dim == 2 ? std::min(hx(), hy()) : hx(); }
  double cell_volume() const { return dim == 2 ? hx() * hy() : hx(); }
  double domain_volume() const {
    return dim == 2 ? lengths[0] * lengths[1] : lengths[0];
  }
};

// Throws std::invalid_argument unless dim is 1 or 2, every used cell count
// is >= 4 and every used length is positive.
void validate_grid(const Grid& g);

struct ProfileSpec {
  enum class Kind { Constant, Gaussian, Cosine } kind = Kind::Constant;
  double value = 0.0;                  // constant
  std::array<double, 2> center = {0.0, 0.0}; // gaussian
  double width = 1.0;                  // gaussian
  double amplitude = 0.0;              // gaussian, cosine
  double offset = 0.0;                 // gaussian, cosine
  int mode = 1;                        // cosine: cos(mode*pi*x/L) per axis
};

struct SimState {
  Grid grid;
  double t = 0.0;
  std::vector<double> u, v, w;
  std::int64_t clamp_events = 0;
};

// Samples the three profiles at cell centers.  Any negative sample is an
// invalid-initial-data error (std::invalid_argument).
SimState init_state(const Grid& g, const ProfileSpec& u0,
                    const ProfileSpec& v0, const ProfileSpec& w0);

struct StepControl {
  double cfl_safety = 0.45; // in (0,1]
  double dt_min = 1e-12;
  double dt_max = 1.0;
  double t_end = 1.0;
  double clamp_tol = 1e-12;
  std::int64_t max_steps = 5000000;
};

void validate_step_control(const StepControl& c);

// Raised when the stability bound falls below dt_min.
struct TimeStepCollapse : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a step drives a field below -clamp_tol.
struct NegativityBreach : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a step produces a non-finite value.
struct NonFinite : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Largest stable explicit step at the current state:
//   cfl_safety * min{ h^2/(2 dim Dmax), h^2/(2 dim), h/Amax, 1/Rmax }
// with Dmax the largest face diffusion coefficient of u, Amax the largest
// total face drift speed |chi (u+1)^{m2-1} dv| + |xi (u+1)^{m3-1} dw|, and
// Rmax the largest reaction rate.  Throws TimeStepCollapse below dt_min;
// clips to dt_max.
double stable_dt(const SimState& s, const ModelParams& p,
                 const StepControl& c);

// One explicit Euler step of size stable_dt(...).  Conservative flux form
// for u (zero-flux boundaries, arithmetic-mean face diffusion, attraction
// and repulsion drift upwinded independently by face flux sign); flux-form
// Laplacian plus pointwise decay for v and w.  Values in (-clamp_tol, 0)
// are clamped to 0 and counted; anything lower raises NegativityBreach.
SimState step(const SimState& s, const ModelParams& p, const StepControl& c);

// step with an externally supplied dt (no stability check).  The building
// block of step() and run(); exposed for fixed-dt studies and tests.
SimState step_with_dt(const SimState& s, const ModelParams& p,
                      const StepControl& c, double dt);

} // namespace arclab
