#include <fftw3.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>
#include <mutex>
#include <vector>

#include "gmcsim/error.hpp"
#include "gmcsim/gff.hpp"
#include "gmcsim/rng.hpp"

namespace gmc {

namespace {

// FFTW planning is not thread-safe; plans are cached per size and executed
// on caller-owned buffers via the new-array interface.
std::mutex g_fftw_mu;

fftw_plan plan_for(int N, double* in, double* out) {
  std::lock_guard<std::mutex> lock(g_fftw_mu);
  static std::map<int, fftw_plan> cache;
  auto it = cache.find(N);
  if (it == cache.end()) {
    // Plan out-of-place on scratch buffers; FFTW_UNALIGNED makes the plan
    // valid for any other out-of-place pair via the new-array interface.
    std::vector<double> s_in(static_cast<std::size_t>(N) * N);
    std::vector<double> s_out(static_cast<std::size_t>(N) * N);
    fftw_plan p = fftw_plan_r2r_2d(N, N, s_in.data(), s_out.data(), FFTW_RODFT00, FFTW_RODFT00,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    it = cache.emplace(N, p).first;
  }
  (void)in;
  (void)out;
  return it->second;
}

std::vector<double> dst2_apply(int N, const std::vector<double>& data) {
  std::vector<double> in = data;
  std::vector<double> out(data.size());
  fftw_plan p = plan_for(N, in.data(), out.data());
  fftw_execute_r2r(p, in.data(), out.data());
  return out;
}

const Domain kSquare = unit_square();

}  // namespace

std::vector<double> dst2_synthesize(int N, const std::vector<double>& coeffs) {
  return dst2_apply(N, coeffs);
}

std::vector<double> dst2_analyze(int N, const std::vector<double>& values) {
  // DST-I is self-inverse up to the factor (2(N+1))^2 in 2-d.
  auto out = dst2_apply(N, values);
  const double norm = 1.0 / (4.0 * (N + 1.0) * (N + 1.0));
  for (auto& v : out) v *= norm;
  return out;
}

GridField sample_grid(int N, std::uint64_t seed, int replicate, double calibration) {
  if (N < 16) fail(errc::invalid_argument, "sample_grid: N < 16");
  const double h = 1.0 / (N + 1);
  const std::size_t n2 = static_cast<std::size_t>(N) * N;
  std::vector<double> coeffs(n2);
  GaussianStream gs(seed, 0x67726964ULL ^ static_cast<std::uint64_t>(replicate));
  gs.fill(coeffs);
  // Discrete Dirichlet Laplacian eigenvalues on the interior lattice.
  std::vector<double> s2(static_cast<std::size_t>(N));
  for (int j = 0; j < N; ++j) {
    const double s = std::sin(0.5 * kPi * (j + 1) * h);
    s2[j] = s * s;
  }
  for (int j = 0; j < N; ++j) {
    const double base = 4.0 / (h * h);
    for (int k = 0; k < N; ++k) {
      const double lam = base * (s2[j] + s2[k]);
      coeffs[static_cast<std::size_t>(j) * N + k] /= std::sqrt(lam);
    }
  }
  GridField f;
  f.size = N;
  f.values = dst2_synthesize(N, coeffs);
  f.calibration = calibration;
  f.seed = seed;
  f.replicate_index = replicate;
  if (calibration != 1.0)
    for (auto& v : f.values) v *= calibration;
  return f;
}

namespace {

double bilinear(const GridField& f, Vec2 p) {
  const int N = f.size;
  const double h = 1.0 / (N + 1);
  // Grid index space: value index (i,j) sits at ((i+1)h, (j+1)h); the ring
  // outside the interior lattice is the zero boundary.
  const double gi = p.x / h - 1.0;
  const double gj = p.y / h - 1.0;
  const int i0 = static_cast<int>(std::floor(gi));
  const int j0 = static_cast<int>(std::floor(gj));
  const double fi = gi - i0, fj = gj - j0;
  return (1 - fi) * (1 - fj) * f.at(i0, j0) + fi * (1 - fj) * f.at(i0 + 1, j0) +
         (1 - fi) * fj * f.at(i0, j0 + 1) + fi * fj * f.at(i0 + 1, j0 + 1);
}

}  // namespace

double circle_average_on_grid(const GridField& f, Vec2 x, double eps, int M) {
  const auto nodes = circle_nodes(kSquare, x, eps, M);
  double s = 0.0;
  for (const auto& n : nodes) s += n.w * bilinear(f, n.p);
  return s;
}

double calibrate_grid(int N, double eps, int n_reps, std::uint64_t seed) {
  if (N < 16) fail(errc::invalid_argument, "calibrate_grid: N < 16");
  if (!(eps >= 4.0 / N && eps <= 0.25))
    fail(errc::invalid_argument, "calibrate_grid: eps outside [4/N, 1/4]");
  if (n_reps < 2) fail(errc::invalid_argument, "calibrate_grid: n_reps < 2");
  const Vec2 c = kSquare.center();
  double sum = 0.0, sum2 = 0.0;
  for (int r = 0; r < n_reps; ++r) {
    const GridField f = sample_grid(N, seed, r, 1.0);
    const double v = circle_average_on_grid(f, c, eps);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / n_reps;
  const double var = (sum2 - n_reps * mean * mean) / (n_reps - 1);
  if (!(var > 0)) fail(errc::calibration_failed, "nonpositive variance estimate");
  const double target = -std::log(eps) + std::log(conformal_radius(kSquare, c));
  return std::sqrt(target / var);
}

// ---------------------------------------------------------------------------
// Binary snapshots
// ---------------------------------------------------------------------------

namespace {

constexpr char kMagic[8] = {'G', 'M', 'C', 'F', 'L', 'D', '1', '\0'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kKindNodes = 1;
constexpr std::uint32_t kKindGrid = 2;

struct FileGuard {
  std::FILE* f;
  explicit FileGuard(std::FILE* f_) : f(f_) {}
  ~FileGuard() {
    if (f) std::fclose(f);
  }
};

void put(std::FILE* f, const void* p, std::size_t n) {
  if (std::fwrite(p, 1, n, f) != n) fail(errc::io_error, "short write");
}

void get(std::FILE* f, void* p, std::size_t n) {
  if (std::fread(p, 1, n, f) != n) fail(errc::io_error, "short read");
}

template <class T>
void put_v(std::FILE* f, T v) {
  put(f, &v, sizeof v);
}

template <class T>
T get_v(std::FILE* f) {
  T v;
  get(f, &v, sizeof v);
  return v;
}

void write_header(std::FILE* f, std::uint32_t kind, std::uint64_t count, std::uint64_t seed,
                  std::uint32_t replicate, double calibration, std::uint64_t digest) {
  put(f, kMagic, sizeof kMagic);
  put_v(f, kVersion);
  put_v(f, kind);
  put_v(f, count);
  put_v(f, seed);
  put_v(f, replicate);
  put_v(f, std::uint32_t{0});  // reserved
  put_v(f, calibration);
  put_v(f, digest);
}

std::uint32_t read_header(std::FILE* f, std::uint64_t& count, std::uint64_t& seed,
                          std::uint32_t& replicate, double& calibration, std::uint64_t& digest) {
  char magic[8];
  get(f, magic, sizeof magic);
  if (std::memcmp(magic, kMagic, sizeof magic) != 0) fail(errc::io_error, "bad magic");
  if (get_v<std::uint32_t>(f) != kVersion) fail(errc::io_error, "unsupported version");
  const auto kind = get_v<std::uint32_t>(f);
  count = get_v<std::uint64_t>(f);
  seed = get_v<std::uint64_t>(f);
  replicate = get_v<std::uint32_t>(f);
  (void)get_v<std::uint32_t>(f);
  calibration = get_v<double>(f);
  digest = get_v<std::uint64_t>(f);
  return kind;
}

}  // namespace

void save_field(const std::string& path, const FieldSample& fs, std::uint64_t config_digest) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) fail(errc::io_error, "cannot open " + path);
  FileGuard guard(f);
  write_header(f, kKindNodes, fs.values.size(), fs.seed,
               static_cast<std::uint32_t>(fs.replicate_index), 1.0, config_digest);
  put(f, fs.values.data(), fs.values.size() * sizeof(double));
}

FieldSample load_field(const std::string& path, std::uint64_t* config_digest) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) fail(errc::io_error, "cannot open " + path);
  FileGuard guard(f);
  std::uint64_t count, seed, digest;
  std::uint32_t replicate;
  double cal;
  if (read_header(f, count, seed, replicate, cal, digest) != kKindNodes)
    fail(errc::io_error, "not a node-field snapshot");
  FieldSample fs;
  fs.values.resize(count);
  get(f, fs.values.data(), count * sizeof(double));
  fs.seed = seed;
  fs.replicate_index = static_cast<int>(replicate);
  if (config_digest) *config_digest = digest;
  return fs;
}

void save_grid(const std::string& path, const GridField& g, std::uint64_t config_digest) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) fail(errc::io_error, "cannot open " + path);
  FileGuard guard(f);
  write_header(f, kKindGrid, static_cast<std::uint64_t>(g.size), g.seed,
               static_cast<std::uint32_t>(g.replicate_index), g.calibration, config_digest);
  put(f, g.values.data(), g.values.size() * sizeof(double));
}

GridField load_grid(const std::string& path, std::uint64_t* config_digest) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) fail(errc::io_error, "cannot open " + path);
  FileGuard guard(f);
  std::uint64_t count, seed, digest;
  std::uint32_t replicate;
  double cal;
  if (read_header(f, count, seed, replicate, cal, digest) != kKindGrid)
    fail(errc::io_error, "not a grid snapshot");
  GridField g;
  g.size = static_cast<int>(count);
  g.values.resize(count * count);
  get(f, g.values.data(), g.values.size() * sizeof(double));
  g.seed = seed;
  g.replicate_index = static_cast<int>(replicate);
  g.calibration = cal;
  if (config_digest) *config_digest = digest;
  return g;
}

}  // namespace gmc
