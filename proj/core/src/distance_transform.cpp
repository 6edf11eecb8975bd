#include "rconvex/distance_transform.hpp"

#include <cmath>
#include <limits>

namespace rconvex {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 1-D squared distance transform of sampled function f with argmin tracking.
// out[q] = min_p (q - p)^2 + f[p]; arg[q] = minimising p (or -1 when all f are inf).
void edt_1d(const std::vector<double>& f, std::vector<double>& out, std::vector<int>& arg,
            std::vector<int>& v, std::vector<double>& z) {
  const int n = static_cast<int>(f.size());
  int k = -1;
  for (int q = 0; q < n; ++q) {
    if (f[q] == kInf) continue;
    if (k < 0) {
      k = 0;
      v[0] = q;
      z[0] = -kInf;
      z[1] = kInf;
      continue;
    }
    double s = 0.0;
    while (true) {
      const int p = v[k];
      s = ((f[q] + double(q) * q) - (f[p] + double(p) * p)) / (2.0 * q - 2.0 * p);
      if (s <= z[k]) {
        if (--k < 0) break;
      } else {
        break;
      }
    }
    ++k;
    v[k] = q;
    z[k] = k == 0 ? -kInf : s;
    z[k + 1] = kInf;
  }
  if (k < 0) {
    for (int q = 0; q < n; ++q) {
      out[q] = kInf;
      arg[q] = -1;
    }
    return;
  }
  int j = 0;
  for (int q = 0; q < n; ++q) {
    while (z[j + 1] < q) ++j;
    const int p = v[j];
    out[q] = double(q - p) * (q - p) + f[p];
    arg[q] = p;
  }
}

}  // namespace

DistanceTransform euclidean_distance_transform(const MaskGrid& sites) {
  const int nx = sites.nx();
  const int ny = sites.ny();
  const int nmax = std::max(nx, ny);

  std::vector<double> f(nmax), out(nmax), zbuf(nmax + 1);
  std::vector<int> arg(nmax), vbuf(nmax);

  // Column pass: squared vertical distance to the nearest site in each column.
  std::vector<double> col_d2(sites.size(), kInf);
  std::vector<int> col_row(sites.size(), -1);
  f.resize(ny);
  out.resize(ny);
  arg.resize(ny);
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) f[j] = sites(i, j) ? 0.0 : kInf;
    edt_1d(f, out, arg, vbuf, zbuf);
    for (int j = 0; j < ny; ++j) {
      col_d2[sites.index(i, j)] = out[j];
      col_row[sites.index(i, j)] = arg[j];
    }
  }

  DistanceTransform result{sites.like<double>(kInf),
                           std::vector<std::int64_t>(sites.size(), -1)};
  f.assign(nx, kInf);
  out.assign(nx, kInf);
  arg.assign(nx, -1);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) f[i] = col_d2[sites.index(i, j)];
    edt_1d(f, out, arg, vbuf, zbuf);
    for (int i = 0; i < nx; ++i) {
      const std::size_t k = sites.index(i, j);
      if (arg[i] < 0) continue;
      const int si = arg[i];
      const int sj = col_row[sites.index(si, j)];
      result.distance[k] = std::sqrt(out[i]) * sites.h();
      result.nearest_site[k] = static_cast<std::int64_t>(sites.index(si, sj));
    }
  }
  return result;
}

}  // namespace rconvex
