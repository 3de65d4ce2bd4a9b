#include "orlicz/numeric.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

#include "orlicz/errors.hpp"

namespace orlicz {

double bisect(const std::function<double(double)>& f, double target, double lo,
              double hi, const BisectionOptions& opt) {
  double flo = f(lo);
  double fhi = f(hi);
  if (!(flo <= target && target <= fhi)) {
    throw RangeError("bisect: target outside bracket", flo, fhi);
  }
  const double tol = opt.rtol * std::abs(target) + opt.atol;
  if (std::abs(flo - target) <= tol) return lo;
  if (std::abs(fhi - target) <= tol) return hi;
  for (int it = 0; it < opt.max_iter; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double fm = f(mid);
    if (std::abs(fm - target) <= tol) return mid;
    if (fm < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

bool expand_bracket(const std::function<double(double)>& f, double target,
                    double& lo, double& hi, double min_x, double max_x) {
  double step = std::max(1.0, hi - lo);
  for (int it = 0; it < 200; ++it) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo <= target && target <= fhi) return true;
    if (flo > target) {
      if (lo <= min_x) return false;
      hi = lo;
      lo = std::max(min_x, lo - step);
    } else {
      if (hi >= max_x) return false;
      lo = hi;
      hi = std::min(max_x, hi + step);
    }
    step *= 2.0;
  }
  return false;
}

double log_sum_exp(const std::vector<double>& v) {
  double m = -kInf;
  for (double x : v) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

namespace {

GaussRule make_rule(int n) {
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) {
        r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        break;
      }
      r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    r.nodes[i] = x;
  }
  return r;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, make_rule(order)).first;
  return it->second;
}

std::vector<double> least_squares(const std::vector<std::vector<double>>& X,
                                  const std::vector<double>& y,
                                  double* rms_residual) {
  const std::size_t m = y.size();
  if (m == 0 || X.size() != m) throw InputError("least_squares: shape mismatch");
  const std::size_t k = X[0].size();
  // Column scaling keeps the normal equations reasonably conditioned.
  std::vector<double> scale(k, 0.0);
  for (const auto& row : X)
    for (std::size_t j = 0; j < k; ++j) scale[j] = std::max(scale[j], std::abs(row[j]));
  for (double& s : scale)
    if (s == 0.0) s = 1.0;
  std::vector<std::vector<double>> a(k, std::vector<double>(k + 1, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t r = 0; r < k; ++r) {
      double xr = X[i][r] / scale[r];
      for (std::size_t c = 0; c < k; ++c) a[r][c] += xr * X[i][c] / scale[c];
      a[r][k] += xr * y[i];
    }
  }
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < k; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    if (std::abs(a[c][c]) < 1e-300) throw InputError("least_squares: singular design");
    for (std::size_t r = 0; r < k; ++r) {
      if (r == c) continue;
      double f = a[r][c] / a[c][c];
      for (std::size_t cc = c; cc <= k; ++cc) a[r][cc] -= f * a[c][cc];
    }
  }
  std::vector<double> b(k);
  for (std::size_t j = 0; j < k; ++j) b[j] = a[j][k] / a[j][j] / scale[j];
  if (rms_residual) {
    double ss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double p = 0.0;
      for (std::size_t j = 0; j < k; ++j) p += X[i][j] * b[j];
      ss += (p - y[i]) * (p - y[i]);
    }
    *rms_residual = std::sqrt(ss / m);
  }
  return b;
}

unsigned worker_threads() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ORLICZ_DISTORT_THREADS")) {
    try {
      long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(std::min<long>(v, 1024));
    } catch (const std::exception&) {
    }
  }
  return hw;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  unsigned nt = std::min<std::size_t>(worker_threads(), count);
  if (nt <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < nt; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!err) err = std::current_exception();
          next = count;
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

std::vector<double> linspace(double a, double b, std::size_t count) {
  std::vector<double> v(count);
  if (count == 1) {
    v[0] = a;
    return v;
  }
  for (std::size_t i = 0; i < count; ++i)
    v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
  return v;
}

}  // namespace orlicz
