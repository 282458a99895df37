#include "oracles.hpp"

#include <fftw3.h>

#include <cmath>
#include <functional>

#include "gmcsim/error.hpp"

namespace oracle {

using gmc::kPi;
using gmc::Vec2;

double discrete_green_square(Vec2 x, Vec2 y, int n) {
  const double h = 1.0 / (n + 1);
  const int iy = static_cast<int>(std::lround(y.x / h)) - 1;
  const int jy = static_cast<int>(std::lround(y.y / h)) - 1;
  const int ix = static_cast<int>(std::lround(x.x / h)) - 1;
  const int jx = static_cast<int>(std::lround(x.y / h)) - 1;

  std::vector<double> rhs(static_cast<std::size_t>(n) * n, 0.0);
  rhs[static_cast<std::size_t>(iy) * n + jy] = 1.0 / (h * h);

  fftw_plan p = fftw_plan_r2r_2d(n, n, rhs.data(), rhs.data(), FFTW_RODFT00, FFTW_RODFT00,
                                 FFTW_ESTIMATE);
  fftw_execute(p);
  for (int j = 0; j < n; ++j) {
    const double sj = std::sin(0.5 * kPi * (j + 1) * h);
    for (int k = 0; k < n; ++k) {
      const double sk = std::sin(0.5 * kPi * (k + 1) * h);
      const double lam = (4.0 / (h * h)) * (sj * sj + sk * sk);
      rhs[static_cast<std::size_t>(j) * n + k] /= lam;
    }
  }
  fftw_execute(p);  // DST-I is self-inverse up to 4 (n+1)^2
  fftw_destroy_plan(p);
  const double u = rhs[static_cast<std::size_t>(ix) * n + jx] / (4.0 * (n + 1.0) * (n + 1.0));
  return 2.0 * kPi * u;
}

// --- Jacobi theta / elliptic machinery -------------------------------------

namespace {

using cd = std::complex<double>;

constexpr double kNome = 0.0018674427317079888;  // e^{-2 pi}

cd theta1(cd z, double q) {
  cd s = 0.0;
  for (int n = 0; n < 12; ++n) {
    const double c = (n % 2 == 0 ? 2.0 : -2.0) * std::pow(q, n * n + n + 0.25);
    s += c * std::sin((2.0 * n + 1.0) * z);
  }
  return s;
}

cd theta2(cd z, double q) {
  cd s = 0.0;
  for (int n = 0; n < 12; ++n) s += 2.0 * std::pow(q, n * n + n + 0.25) * std::cos((2.0 * n + 1.0) * z);
  return s;
}

cd theta3(cd z, double q) {
  cd s = 1.0;
  for (int n = 1; n < 12; ++n) s += 2.0 * std::pow(q, n * n) * std::cos(2.0 * n * z);
  return s;
}

cd theta4(cd z, double q) {
  cd s = 1.0;
  for (int n = 1; n < 12; ++n)
    s += 2.0 * (n % 2 == 0 ? 1.0 : -1.0) * std::pow(q, n * n) * std::cos(2.0 * n * z);
  return s;
}

struct EllipticSquare {
  double K;          // quarter period for modulus m = 17 - 12 sqrt 2
  double t2, t3, t4; // theta constants at z = 0

  EllipticSquare() {
    t2 = theta2(0.0, kNome).real();
    t3 = theta3(0.0, kNome).real();
    t4 = theta4(0.0, kNome).real();
    K = 0.5 * kPi * t3 * t3;
  }

  // sn, cn, dn at complex argument u.
  void sncndn(cd u, cd& sn, cd& cn, cd& dn) const {
    const cd z = u * 0.5 * kPi / K;  // z = pi u / (2K)
    sn = (t3 / t2) * theta1(z, kNome) / theta4(z, kNome);
    cn = (t4 / t2) * theta2(z, kNome) / theta4(z, kNome);
    dn = (t4 / t3) * theta3(z, kNome) / theta4(z, kNome);
  }

  // Map the open unit square onto the upper half plane.
  cd psi(Vec2 p) const {
    cd sn, cn, dn;
    sncndn(cd(p.x - 0.5, p.y) * (2.0 * K), sn, cn, dn);
    return sn;
  }

  cd dpsi(Vec2 p) const {
    cd sn, cn, dn;
    sncndn(cd(p.x - 0.5, p.y) * (2.0 * K), sn, cn, dn);
    return 2.0 * K * cn * dn;
  }
};

const EllipticSquare& elliptic() {
  static EllipticSquare e;
  return e;
}

}  // namespace

double elliptic_conformal_radius_square(Vec2 x) {
  const auto& e = elliptic();
  // R(x, D) = R(psi(x), H) / |psi'(x)| with R(., H) = 2 Im(.)
  return 2.0 * e.psi(x).imag() / std::abs(e.dpsi(x));
}

double elliptic_green_square(Vec2 x, Vec2 y) {
  const auto& e = elliptic();
  const cd px = e.psi(x), py = e.psi(y);
  return std::log(std::abs(px - std::conj(py))) - std::log(std::abs(px - py));
}

double raw_cov_quadrature(const gmc::Domain& d, gmc::Node a, gmc::Node b, int M) {
  const auto pa = gmc::circle_nodes(d, a.center, a.radius, M);
  const auto pb = gmc::circle_nodes(d, b.center, b.radius, M);
  double s = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : s)
  for (std::size_t i = 0; i < pa.size(); ++i) {
    double row = 0.0;
    for (const auto& q : pb) row += q.w * gmc::green_function(d, pa[i].p, q.p);
    s += pa[i].w * row;
  }
  return s;
}

double disk_arc_fraction(Vec2 x, double eps) {
  const double r = x.norm();
  if (r + eps <= 1.0) return 1.0;
  if (r - eps >= 1.0) return 0.0;
  // |x + eps e^{i phi}| = 1  =>  cos(phi) = (1 - r^2 - eps^2) / (2 r eps)
  const double c = (1.0 - r * r - eps * eps) / (2.0 * r * eps);
  const double phi = std::acos(std::clamp(c, -1.0, 1.0));
  return 1.0 - phi / kPi;
}

std::pair<double, double> grid_max(double lo, double hi, int n,
                                   const std::function<double(double)>& f) {
  double best_x = lo, best = f(lo);
  for (int i = 1; i <= n; ++i) {
    const double x = lo + (hi - lo) * i / n;
    const double v = f(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  return {best_x, best};
}

std::pair<double, double> grid_min(double lo, double hi, int n,
                                   const std::function<double(double)>& f) {
  auto [x, v] = grid_max(lo, hi, n, [&](double t) { return -f(t); });
  return {x, -v};
}

}  // namespace oracle
