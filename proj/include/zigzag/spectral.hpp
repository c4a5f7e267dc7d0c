#pragma once
#include <vector>

#include "zigzag/grid.hpp"

namespace zigzag {

// Two-component field on a strip grid (same layout as DirectorField data).
struct VectorField {
  StripGrid grid;
  std::vector<double> c1, c2;
};

// || |grad|^alpha f ||^2 on the x2-periodic strip.  x1 is treated as periodic
// on a zero-padded box of width pad * (2 half_width); since admissible charge
// densities are compactly supported this periodization error decays with the
// pad factor (image interaction of neutral blobs at distance >= (pad-1) *
// 2 half_width).  Normalization: with hat f(xi) the Fourier-series coefficient
// scaled so that sum |hat f|^2 = ||f||_L2^2 (Plancherel), the value is
// sum_{xi != 0} |xi|^(2 alpha) |hat f(xi)|^2.
// For alpha < 0 the field must be charge-neutral (|integral| below
// 1e-9 * ell * max(1, |f|_inf)); otherwise the xi -> 0 division is meaningless
// and an error naming the violated neutrality precondition is thrown.
double fractional_norm(const StripGrid& g, const std::vector<double>& f,
                       double alpha, int pad = 2);

struct FractionalNormWithGrad {
  double value = 0;
  std::vector<double> grad;  // d value / d f_node, one entry per grid node
};
FractionalNormWithGrad fractional_norm_with_grad(const StripGrid& g,
                                                 const std::vector<double>& f,
                                                 double alpha, int pad = 2);

// Homogeneous H^{1/2} seminorm squared by direct finite differences:
//   (1/4pi) integral integral |f(x+h) - f(x)|^2 / |h|^3 dh dx,
// x over the grid box (periodic in x2), h2 over all of R via a periodized
// kernel (images summed far past convergence).  Two x1 conventions:
//  - periodic_x1 = false (default), for fields that settle to x1-independent
//    values near the box ends: reads beyond the box are clamped to the end
//    columns, h1 is truncated at 2 half_width, and the |h1| > 2 half_width
//    remainder is added analytically from the saturated correlation.
//  - periodic_x1 = true, for fields periodic across the box (e.g. the
//    Helmholtz potential on its padded grid): wrapped reads and a kernel
//    periodized in x1 as well; the double sum is complete, no truncation.
// The h = 0 cell enters through a first-order gradient model and
// near-singular cells average the two one-sided quadrature reductions of the
// quadratically vanishing numerator.  Direct O(N^2) summation: this is the
// slow independent oracle, restricted to grids of <= 16384 nodes.
double h_half_finite_difference(const VectorField& f, bool periodic_x1 = false);
double h_half_finite_difference(const StripGrid& g, const std::vector<double>& f,
                                bool periodic_x1 = false);

// Magnetostatic energy by direct singular convolution:
//   (1/2pi) integral integral sigma(x+h) sigma(x) / |h| dh dx
// restricted to h2 in roughly [-N ell, N ell] (2N+1 period images of the
// kernel).  Requires charge-neutral sigma; the partial sums converge (Cauchy)
// in N precisely because of neutrality.  h = 0 cell excluded, near-singular
// cells cell-averaged, sigma zero-extended beyond the box in x1.
double singular_integral_energy(const StripGrid& g,
                                const std::vector<double>& sigma,
                                int image_count);

// Curl-free field q with div q = sigma, via q_hat = -i xi sigma_hat / |xi|^2
// on the zero-padded periodic box.  The returned field lives on the padded
// grid (half_width scaled by pad) with the original box centered in it.
// Nyquist rows are zeroed to keep the multiplier Hermitian.
VectorField helmholtz_field(const StripGrid& g, const std::vector<double>& sigma,
                            int pad = 2);

// Spectral curl / divergence on the field's own (periodic) grid; used to
// verify the Helmholtz construction.
double spectral_curl_max(const VectorField& q);
std::vector<double> spectral_divergence(const VectorField& q);

}  // namespace zigzag
