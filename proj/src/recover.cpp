#include "deltam/recover.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "deltam/errors.hpp"
#include "deltam/linalg.hpp"
#include "deltam/parallel.hpp"

namespace deltam {

std::vector<double> GridSpec::points() const {
  if (!(lo < hi)) throw std::invalid_argument("grid: lower bound must be below upper");
  return linspace(lo, hi, count);
}

namespace {

Matrix value_matrix(const std::vector<std::function<Scalar(double)>>& funcs,
                    const std::vector<double>& pts) {
  Matrix F(funcs.size(), pts.size());
  for (std::size_t i = 0; i < funcs.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j) F(i, j) = funcs[i](pts[j]);
  return F;
}

bool invertible(const Matrix& F, const Tolerance& tol) {
  return rank_kernel(F, tol).rank == F.rows();
}

}  // namespace

SampledFamily::SampledFamily(std::vector<std::function<Scalar(double)>> funcs,
                             std::vector<double> collocation, std::size_t m,
                             const Tolerance& tol)
    : funcs_(std::move(funcs)), colloc_(std::move(collocation)), m_(m) {
  if (funcs_.empty()) throw std::invalid_argument("SampledFamily: empty family");
  if (m_ == 0) throw std::invalid_argument("SampledFamily: order must be positive");
  if (colloc_.size() != funcs_.size())
    throw std::invalid_argument("SampledFamily: need one collocation point per function");
  for (std::size_t i = 0; i < colloc_.size(); ++i) {
    if (!(colloc_[i] > 0.0))
      throw std::invalid_argument("SampledFamily: collocation points must be positive");
    if (i > 0 && !(colloc_[i - 1] < colloc_[i]))
      throw std::invalid_argument("SampledFamily: collocation points must increase");
  }
  if (!invertible(collocation_matrix(), tol))
    throw std::invalid_argument(
        "SampledFamily: singular collocation matrix; choose different points");
}

SampledFamily SampledFamily::auto_collocation(
    std::vector<std::function<Scalar(double)>> funcs, std::size_t m,
    const Tolerance& tol) {
  const std::size_t n = funcs.size();
  if (n == 0) throw std::invalid_argument("SampledFamily: empty family");
  for (double shift : {0.0, 0.37}) {
    std::vector<double> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = static_cast<double>(i + 1) + shift;
    if (invertible(value_matrix(funcs, pts), tol))
      return SampledFamily(std::move(funcs), std::move(pts), m, tol);
  }
  throw std::invalid_argument(
      "SampledFamily: value matrix singular at both default collocation grids; "
      "provide explicit points");
}

SampledFamily SampledFamily::from_exppolys(const std::vector<ExpPolynomial>& fs,
                                           std::size_t m, const Tolerance& tol) {
  std::vector<std::function<Scalar(double)>> funcs;
  funcs.reserve(fs.size());
  for (const auto& f : fs)
    funcs.push_back([f](double t) { return evaluate(f, t); });
  return auto_collocation(std::move(funcs), m, tol);
}

Matrix SampledFamily::collocation_matrix() const { return value_matrix(funcs_, colloc_); }

namespace {

constexpr int kMollifyPanels = 64;

/// Bump profile exp(-1 / (1 - u^2)) on (-1, 1); weights normalized so the
/// discrete mass is exactly one, which keeps constants fixed.
std::vector<std::pair<double, double>> bump_nodes(double width) {
  std::vector<std::pair<double, double>> nodes;  // (offset, weight)
  nodes.reserve(kMollifyPanels + 1);
  double mass = 0.0;
  for (int k = 0; k <= kMollifyPanels; ++k) {
    const double u = -1.0 + 2.0 * static_cast<double>(k) / kMollifyPanels;
    double w = 0.0;
    if (std::abs(u) < 1.0) w = std::exp(-1.0 / (1.0 - u * u));
    if (k == 0 || k == kMollifyPanels) w *= 0.5;  // trapezoid ends
    nodes.emplace_back(u * width, w);
    mass += w;
  }
  for (auto& [off, w] : nodes) w /= mass;
  return nodes;
}

}  // namespace

std::function<Scalar(double)> mollify(std::function<Scalar(double)> f, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("mollify: width must be positive");
  auto nodes = bump_nodes(width);
  return [f = std::move(f), nodes = std::move(nodes)](double t) {
    Scalar acc(0);
    for (const auto& [off, w] : nodes) acc += w * f(t - off);
    return acc;
  };
}

std::function<double(double)> mollify_real(std::function<double(double)> f, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("mollify: width must be positive");
  auto nodes = bump_nodes(width);
  return [f = std::move(f), nodes = std::move(nodes)](double t) {
    double acc = 0.0;
    for (const auto& [off, w] : nodes) acc += w * f(t - off);
    return acc;
  };
}

Matrix difference_matrix(const SampledFamily& fam, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("difference_matrix: step must be positive");
  const std::size_t n = fam.size();
  const std::size_t m = fam.order();

  // Alternating binomial weights of the m-th forward difference.
  std::vector<double> w(m + 1);
  for (std::size_t k = 0; k <= m; ++k)
    w[k] = ((m - k) % 2 == 0 ? 1.0 : -1.0) * binomial(m, static_cast<long>(k));

  Matrix D(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Scalar acc(0);
      for (std::size_t k = 0; k <= m; ++k)
        acc += w[k] * fam.value(i, fam.collocation()[j] + static_cast<double>(k) * h);
      D(i, j) = acc;
    }

  try {
    return D * inverse(fam.collocation_matrix());
  } catch (const std::runtime_error&) {
    throw std::runtime_error(
        "difference_matrix: collocation matrix is singular; choose different points");
  }
}

LimitResult limit_B(const SampledFamily& fam, const std::vector<double>& h_seq,
                    const Tolerance& tol) {
  if (h_seq.size() < 3)
    throw std::invalid_argument("limit_B: need at least three step values");
  for (std::size_t k = 0; k < h_seq.size(); ++k) {
    if (!(h_seq[k] > 0.0))
      throw std::invalid_argument("limit_B: steps must be positive");
    if (k > 0 && !(h_seq[k] < h_seq[k - 1]))
      throw std::invalid_argument("limit_B: steps must strictly decrease");
  }

  const std::size_t K = h_seq.size();
  const std::size_t n = fam.size();
  const double md = static_cast<double>(fam.order());

  std::vector<Matrix> T(K);
  for (std::size_t k = 0; k < K; ++k)
    T[k] = difference_matrix(fam, h_seq[k]) * Scalar(std::pow(h_seq[k], -md));

  double scale = 0.0;
  for (const auto& G : T) scale = std::max(scale, G.max_abs());

  // Neville tableau toward h = 0; T[k] holds the current column, the value
  // interpolated through nodes h_k .. h_{k+level}.
  LimitResult out;
  Matrix prev = T[0];
  for (std::size_t level = 1; level < K; ++level) {
    for (std::size_t k = 0; k + level < K; ++k) {
      const double hk = h_seq[k], hl = h_seq[k + level];
      // value at 0 of the interpolant: (hk * T[k+1] - hl * T[k]) / (hk - hl)
      T[k] = (T[k + 1] * Scalar(hk) - T[k] * Scalar(hl)) * Scalar(1.0 / (hk - hl));
    }
    const Matrix diff = T[0] - prev;
    out.table.push_back(diff.max_abs());
    prev = T[0];
  }
  out.B = T[0];
  out.residual = out.table.back();

  // Corrections that only grow mean the sequence is not settling.
  bool growing = out.table.size() >= 2;
  for (std::size_t l = 1; l < out.table.size() && growing; ++l)
    growing = out.table[l] > out.table[l - 1];
  if (growing && out.residual > tol.threshold(scale)) {
    std::ostringstream os;
    os << "limit_B: extrapolation corrections grow instead of settling (";
    for (std::size_t l = 0; l < out.table.size(); ++l)
      os << (l ? ", " : "") << out.table[l];
    os << "); the family does not look like order-" << fam.order()
       << " differences of a smooth structure";
    throw std::runtime_error(os.str());
  }
  (void)n;
  return out;
}

Matrix companion_system(const Matrix& B, std::size_t m) {
  if (!B.is_square()) throw std::invalid_argument("companion_system: B must be square");
  if (m == 0) throw std::invalid_argument("companion_system: order must be positive");
  const std::size_t n = B.rows();
  if (m == 1) return B;
  Matrix C(m * n, m * n);
  for (std::size_t b = 0; b + 1 < m; ++b)
    for (std::size_t i = 0; i < n; ++i) C(b * n + i, (b + 1) * n + i) = Scalar(1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) C((m - 1) * n + i, j) = B(i, j);
  return C;
}

namespace {

std::vector<FrequencyCandidate> cluster_spectrum(const std::vector<Scalar>& mu,
                                                 double radius) {
  std::vector<FrequencyCandidate> out;
  double scale = 0.0;
  for (const auto& z : mu) scale = std::max(scale, std::abs(z));
  const double r = radius * (1.0 + scale);

  std::vector<bool> used(mu.size(), false);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (used[i]) continue;
    Scalar sum(0);
    std::size_t count = 0;
    for (std::size_t j = i; j < mu.size(); ++j) {
      if (used[j] || std::abs(mu[j] - mu[i]) > r) continue;
      used[j] = true;
      sum += mu[j];
      ++count;
    }
    out.push_back({sum / static_cast<double>(count), count, 0.0, false});
  }
  return out;
}

}  // namespace

RecoveryReport run_recovery(const SampledFamily& fam, const RecoveryOptions& opt) {
  RecoveryReport rep;
  rep.order = fam.order();
  if (fam.size() * fam.order() > 16)
    throw std::invalid_argument(
        "run_recovery: companion order above 16; shrink the family or the order");

  LimitResult lim = limit_B(fam, opt.h_seq, opt.tol);
  rep.B = lim.B;
  rep.limit_residual = lim.residual;
  rep.limit_table = lim.table;

  rep.companion = companion_system(rep.B, fam.order());
  rep.spectrum = eigenvalues_small(rep.companion, opt.tol);
  rep.candidates = cluster_spectrum(rep.spectrum, opt.cluster_radius);

  const std::vector<double> grid = opt.grid.points();
  const double tmax = std::max(std::abs(grid.front()), std::abs(grid.back()));

  // Exponential monomial basis on the grid, one block of columns per
  // candidate; columns are normalized so coefficients compare across
  // wildly different exponential scales.
  std::vector<std::size_t> col_owner;
  std::vector<Vector> cols;
  std::vector<bool> in_range(rep.candidates.size(), true);
  for (std::size_t c = 0; c < rep.candidates.size(); ++c) {
    const Scalar mu = rep.candidates[c].mu;
    if (std::abs(mu.real()) * tmax > 300.0) {
      in_range[c] = false;  // would overflow; cannot carry data anyway
      continue;
    }
    for (std::size_t k = 0; k < rep.candidates[c].multiplicity; ++k) {
      Vector col(grid.size());
      for (std::size_t g = 0; g < grid.size(); ++g)
        col[g] = std::pow(grid[g], static_cast<double>(k)) * std::exp(mu * grid[g]);
      const double nc = two_norm(col);
      if (nc > 0.0)
        for (auto& x : col) x /= nc;
      cols.push_back(std::move(col));
      col_owner.push_back(c);
    }
  }

  if (!cols.empty()) {
    Matrix G = Matrix::from_columns(cols);
    for (std::size_t i = 0; i < fam.size(); ++i) {
      Vector y(grid.size());
      for (std::size_t g = 0; g < grid.size(); ++g) y[g] = fam.value(i, grid[g]);
      const double ny = two_norm(y);
      if (ny == 0.0) continue;
      for (auto& x : y) x /= ny;

      const Vector c = least_squares(G, y, opt.tol);
      Vector r = y;
      for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t g = 0; g < grid.size(); ++g) r[g] -= c[j] * cols[j][g];
      rep.misfit = std::max(rep.misfit, two_norm(r));
      for (std::size_t j = 0; j < cols.size(); ++j)
        rep.candidates[col_owner[j]].weight =
            std::max(rep.candidates[col_owner[j]].weight, std::abs(c[j]));
    }
  }

  for (std::size_t c = 0; c < rep.candidates.size(); ++c)
    rep.candidates[c].accepted = in_range[c] && rep.misfit <= opt.misfit_gate &&
                                 rep.candidates[c].weight > opt.weight_floor;
  return rep;
}

std::vector<Scalar> frequency_recovery(const RecoveryReport& report) {
  std::vector<Scalar> out;
  for (const auto& c : report.candidates)
    if (c.accepted) out.push_back(c.mu);
  return out;
}

std::function<double(double)> piecewise_linear(
    std::vector<std::pair<double, double>> samples) {
  if (samples.size() < 2)
    throw std::invalid_argument("piecewise_linear: need at least two samples");
  std::sort(samples.begin(), samples.end());
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (!(samples[i - 1].first < samples[i].first))
      throw std::invalid_argument("piecewise_linear: duplicate sample abscissa");

  return [samples = std::move(samples)](double t) {
    std::size_t lo = 0;
    if (t >= samples.back().first) {
      lo = samples.size() - 2;
    } else if (t > samples.front().first) {
      std::size_t hi = samples.size() - 1;
      while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        (samples[mid].first <= t ? lo : hi) = mid;
      }
    }
    const auto& [t0, v0] = samples[lo];
    const auto& [t1, v1] = samples[lo + 1];
    return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
  };
}

}  // namespace deltam
