#pragma once
// Field snapshots, sweep tables, and self-contained SVG plots.
#include <string>
#include <vector>

#include "zigzag/descent.hpp"
#include "zigzag/energy.hpp"
#include "zigzag/grid.hpp"

namespace zigzag {

// Binary field snapshot, little-endian throughout:
//   bytes 0..3   magic "ZZF1"
//   bytes 4..7   uint32 byte-order probe 0x01020304 (loader rejects a
//                snapshot written with the opposite endianness)
//   int32 nx, int32 ny, float64 ell, float64 half_width
//   nx * ny float64 theta values, row-major with x2 fastest
void save_field(const std::string& path, const DirectorField& f);
DirectorField load_field(const std::string& path);

// CSV snapshot with the same content: header line "nx,ny,ell,half_width",
// one line of values, a "theta" line, then one theta value per line in the
// row-major x2-fastest order.
std::string field_csv(const DirectorField& f);
DirectorField field_from_csv(const std::string& text);

// One row of a lambda sweep.
struct SweepRow {
  double lambda = 0;
  double epsilon = 0;
  EnergyBreakdown energy;
  double e0_ref = 0;   // ground-state line energy at this lambda
  double mean_n1 = 0;  // length-weighted mean |n1| of the extracted wall
};

// "lambda,epsilon,exchange,anisotropy,stray,total,E0_ref,mean_n1"
std::string sweep_csv(const std::vector<SweepRow>& rows);

// "lambda,e_lambda": the ground-state line energy over a lambda list.
std::string limit_curve_csv(const std::vector<double>& lambdas, double ell);

// Self-contained SVG plots; deterministic output, no timestamps.
std::string wall_svg(const WallTrace& t);
std::string sweep_svg(const std::vector<SweepRow>& rows, double ell);
std::string limit_curve_svg(const std::vector<double>& lambdas, double ell);

}  // namespace zigzag
