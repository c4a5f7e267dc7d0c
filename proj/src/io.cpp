#include "zigzag/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "zigzag/wall.hpp"

namespace zigzag {

namespace {

constexpr char kMagic[4] = {'Z', 'Z', 'F', '1'};
constexpr std::uint32_t kOrderProbe = 0x01020304u;

void put_bytes(std::ostream& os, const void* p, std::size_t n) {
  os.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
}

void get_bytes(std::istream& is, void* p, std::size_t n) {
  is.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
  if (!is) throw std::runtime_error("field snapshot: truncated file");
}

// Minimal deterministic line-plot scaffold.  Data coordinates are mapped
// into a fixed 640x480 frame with a 60/20 px margin; axes are drawn with
// min/max tick labels only.
struct Plot {
  double x0, x1, y0, y1;
  std::ostringstream body;

  static constexpr double W = 640, H = 480, ML = 64, MR = 20, MT = 20, MB = 44;

  Plot(double xa, double xb, double ya, double yb) : x0(xa), x1(xb), y0(ya), y1(yb) {
    if (!(x1 > x0)) x1 = x0 + 1;
    if (!(y1 > y0)) y1 = y0 + 1;
  }
  double px(double x) const { return ML + (x - x0) / (x1 - x0) * (W - ML - MR); }
  double py(double y) const { return H - MB - (y - y0) / (y1 - y0) * (H - MT - MB); }

  static std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
  }

  void polyline(const std::vector<double>& xs, const std::vector<double>& ys,
                const char* color, const char* dash = nullptr) {
    body << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
    if (dash) body << " stroke-dasharray=\"" << dash << "\"";
    body << " points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!std::isfinite(ys[i])) continue;
      body << num(px(xs[i])) << ',' << num(py(ys[i])) << ' ';
    }
    body << "\"/>\n";
  }

  void marker(double x, double y, const char* color) {
    body << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y))
         << "\" r=\"3\" fill=\"" << color << "\"/>\n";
  }

  void label(double xpx, double ypx, const std::string& text,
             const char* anchor = "middle") {
    body << "<text x=\"" << num(xpx) << "\" y=\"" << num(ypx)
         << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\""
         << anchor << "\">" << text << "</text>\n";
  }

  std::string finish(const std::string& xlabel, const std::string& ylabel) {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
       << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n"
       << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n"
       << "<line x1=\"" << ML << "\" y1=\"" << H - MB << "\" x2=\"" << W - MR
       << "\" y2=\"" << H - MB << "\" stroke=\"black\"/>\n"
       << "<line x1=\"" << ML << "\" y1=\"" << MT << "\" x2=\"" << ML
       << "\" y2=\"" << H - MB << "\" stroke=\"black\"/>\n";
    os << body.str();
    Plot& p = *this;
    std::ostringstream lab;
    lab << "<text x=\"" << (ML + (W - ML - MR) / 2) << "\" y=\"" << H - 8
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">"
        << xlabel << "</text>\n"
        << "<text x=\"14\" y=\"" << (MT + (H - MT - MB) / 2)
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\""
        << " transform=\"rotate(-90 14 " << (MT + (H - MT - MB) / 2) << ")\">"
        << ylabel << "</text>\n"
        << "<text x=\"" << ML << "\" y=\"" << H - MB + 16
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
        << num(p.x0) << "</text>\n"
        << "<text x=\"" << W - MR << "\" y=\"" << H - MB + 16
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
        << num(p.x1) << "</text>\n"
        << "<text x=\"" << ML - 6 << "\" y=\"" << H - MB + 4
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
        << num(p.y0) << "</text>\n"
        << "<text x=\"" << ML - 6 << "\" y=\"" << MT + 4
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
        << num(p.y1) << "</text>\n";
    os << lab.str() << "</svg>\n";
    return os.str();
  }
};

}  // namespace

void save_field(const std::string& path, const DirectorField& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("save_field: cannot open " + path);
  put_bytes(os, kMagic, 4);
  put_bytes(os, &kOrderProbe, 4);
  const std::int32_t nx = f.grid.nx, ny = f.grid.ny;
  put_bytes(os, &nx, 4);
  put_bytes(os, &ny, 4);
  put_bytes(os, &f.grid.ell, 8);
  put_bytes(os, &f.grid.half_width, 8);
  put_bytes(os, f.theta.data(), f.theta.size() * 8);
  if (!os) throw std::runtime_error("save_field: write failed for " + path);
}

DirectorField load_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("load_field: cannot open " + path);
  char magic[4];
  get_bytes(is, magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("load_field: " + path + " is not a field snapshot");
  std::uint32_t probe = 0;
  get_bytes(is, &probe, 4);
  if (probe != kOrderProbe)
    throw std::runtime_error("load_field: byte order mismatch in " + path);
  std::int32_t nx = 0, ny = 0;
  double ell = 0, half_width = 0;
  get_bytes(is, &nx, 4);
  get_bytes(is, &ny, 4);
  get_bytes(is, &ell, 8);
  get_bytes(is, &half_width, 8);
  const StripGrid g = make_grid(ell, half_width, nx, ny);
  std::vector<double> theta(static_cast<std::size_t>(g.size()));
  get_bytes(is, theta.data(), theta.size() * 8);
  return make_admissible_field(g, theta);
}

std::string field_csv(const DirectorField& f) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "nx,ny,ell,half_width\n"
     << f.grid.nx << ',' << f.grid.ny << ',' << f.grid.ell << ','
     << f.grid.half_width << "\ntheta\n";
  for (double t : f.theta) os << t << '\n';
  return os.str();
}

DirectorField field_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != "nx,ny,ell,half_width")
    throw std::runtime_error("field CSV: missing header");
  if (!std::getline(is, line))
    throw std::runtime_error("field CSV: missing dimensions");
  std::istringstream dims(line);
  int nx = 0, ny = 0;
  double ell = 0, half_width = 0;
  char c = 0;
  if (!(dims >> nx >> c >> ny >> c >> ell >> c >> half_width))
    throw std::runtime_error("field CSV: malformed dimension line");
  if (!std::getline(is, line) || line != "theta")
    throw std::runtime_error("field CSV: missing theta section");
  const StripGrid g = make_grid(ell, half_width, nx, ny);
  std::vector<double> theta;
  theta.reserve(static_cast<std::size_t>(g.size()));
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    theta.push_back(std::stod(line));
  }
  if (theta.size() != static_cast<std::size_t>(g.size()))
    throw std::runtime_error("field CSV: wrong number of theta values");
  return make_admissible_field(g, theta);
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "lambda,epsilon,exchange,anisotropy,stray,total,E0_ref,mean_n1\n";
  for (const SweepRow& r : rows) {
    os << r.lambda << ',' << r.epsilon << ',' << r.energy.exchange << ','
       << r.energy.anisotropy << ',' << r.energy.stray << ',' << r.energy.total
       << ',' << r.e0_ref << ',' << r.mean_n1 << '\n';
  }
  return os.str();
}

std::string limit_curve_csv(const std::vector<double>& lambdas, double ell) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "lambda,e_lambda\n";
  for (double l : lambdas)
    os << l << ',' << ground_state_energy(l, ell) << '\n';
  return os.str();
}

std::string wall_svg(const WallTrace& t) {
  double glo = 0, ghi = 0;
  bool any = false;
  for (std::size_t j = 0; j < t.gamma.size(); ++j) {
    if (!t.row_valid[j]) continue;
    if (!any) {
      glo = ghi = t.gamma[j];
      any = true;
    }
    glo = std::min(glo, t.gamma[j]);
    ghi = std::max(ghi, t.gamma[j]);
  }
  if (!any) glo = -1, ghi = 1;
  const double pad = std::max(0.05, 0.1 * (ghi - glo));
  const double top = t.x2.empty() ? 1.0 : t.x2.back() + (t.x2.size() > 1 ? t.x2[1] - t.x2[0] : 0);
  Plot p(glo - pad, ghi + pad, 0, top);
  // The wall is a graph x1 = gamma(x2); plot x1 horizontally.
  std::vector<double> xs, ys;
  for (std::size_t j = 0; j < t.gamma.size(); ++j) {
    if (!t.row_valid[j]) continue;
    xs.push_back(t.gamma[j]);
    ys.push_back(t.x2[j]);
  }
  p.polyline(xs, ys, "#c0392b");
  return p.finish("x1 (wall position)", "x2");
}

std::string sweep_svg(const std::vector<SweepRow>& rows, double ell) {
  double lmax = 1, emax = 1;
  for (const SweepRow& r : rows) {
    lmax = std::max(lmax, r.lambda);
    emax = std::max(emax, r.energy.total);
  }
  emax = std::max(emax, ground_state_energy(lmax, ell));
  Plot p(0, lmax * 1.05, 0, emax * 1.1);
  // Ground-state reference curve e(lambda), dense in lambda.
  std::vector<double> lx, ly;
  for (int i = 0; i <= 200; ++i) {
    const double l = lmax * 1.05 * i / 200;
    lx.push_back(l);
    ly.push_back(ground_state_energy(l, ell));
  }
  p.polyline(lx, ly, "#2c3e50", "5,4");
  std::vector<double> mx, my;
  for (const SweepRow& r : rows) {
    mx.push_back(r.lambda);
    my.push_back(r.energy.total);
    p.marker(r.lambda, r.energy.total, "#c0392b");
  }
  p.polyline(mx, my, "#c0392b");
  p.label(Plot::W - Plot::MR - 8, Plot::MT + 16, "minimized E", "end");
  p.label(Plot::W - Plot::MR - 8, Plot::MT + 32, "ground-state e(lambda)", "end");
  return p.finish("lambda", "energy");
}

std::string limit_curve_svg(const std::vector<double>& lambdas, double ell) {
  double lmax = 1;
  for (double l : lambdas) lmax = std::max(lmax, l);
  double emax = ground_state_energy(lmax, ell);
  for (double l : lambdas) emax = std::max(emax, ground_state_energy(l, ell));
  Plot p(0, lmax * 1.05, 0, emax * 1.1);
  std::vector<double> xs, ys;
  for (double l : lambdas) {
    xs.push_back(l);
    ys.push_back(ground_state_energy(l, ell));
    p.marker(l, ground_state_energy(l, ell), "#2c3e50");
  }
  p.polyline(xs, ys, "#2c3e50");
  return p.finish("lambda", "e(lambda)");
}

}  // namespace zigzag
