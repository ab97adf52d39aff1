#include "activemix/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "activemix/errors.hpp"

namespace activemix {

SymmetricMatrix SymmetricMatrix::identity(std::size_t n) {
  SymmetricMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double SymmetricMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double SymmetricMatrix::norm_inf() const {
  double best = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n_; ++j) row += std::abs((*this)(i, j));
    best = std::max(best, row);
  }
  return best;
}

std::vector<double> SymmetricMatrix::multiply(std::span<const double> v) const {
  std::vector<double> out(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n_; ++j) acc += (*this)(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

int UpdateMatrix::count(Activation mode) const {
  return static_cast<int>(std::count(mode_map.begin(), mode_map.end(), mode));
}

UpdateMatrix build_update_matrix(const ParticleState& state, const SimParams& params,
                                 bool include_inactive) {
  UpdateMatrix um;
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (include_inactive || state.activation[i] != Activation::Inactive) {
      um.index_map.push_back(i);
      um.mode_map.push_back(state.activation[i]);
    }
  }
  const std::size_t n = um.index_map.size();
  um.entries = SymmetricMatrix(n);
  for (std::size_t a = 0; a < n; ++a) {
    const Activation mode = um.mode_map[a];
    if (mode == Activation::Inactive) continue;
    const InteractionMode kind =
        mode == Activation::Attractive ? InteractionMode::Attractive : InteractionMode::Repulsive;
    for (std::size_t b = a + 1; b < n; ++b) {
      if (um.mode_map[b] != mode) continue;
      const Vec2 d = minimum_image_displacement(state.positions[um.index_map[a]],
                                                state.positions[um.index_map[b]],
                                                params.half_width);
      um.entries.set_pair(a, b, pair_coefficient(d.norm(), kind, params));
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    double off = 0.0;
    for (std::size_t b = 0; b < n; ++b) {
      if (b != a) off += um.entries(a, b);
    }
    um.entries(a, a) = 1.0 - off;
  }
  return um;
}

namespace {

// Applies one Jacobi rotation annihilating a(p, q); v accumulates the
// rotations column-wise.
void rotate(std::vector<double>& a, std::vector<double>& v, std::size_t n, std::size_t p,
            std::size_t q) {
  auto A = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  auto V = [&](std::size_t i, std::size_t j) -> double& { return v[i * n + j]; };

  const double apq = A(p, q);
  const double h = A(q, q) - A(p, p);
  double t;
  if (std::abs(apq) * 1e36 < std::abs(h)) {
    t = apq / h;
  } else {
    const double theta = 0.5 * h / apq;
    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) t = -t;
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const double tau = s / (1.0 + c);

  A(p, p) -= t * apq;
  A(q, q) += t * apq;
  A(p, q) = 0.0;
  A(q, p) = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    if (r == p || r == q) continue;
    const double arp = A(r, p);
    const double arq = A(r, q);
    const double new_rp = arp - s * (arq + tau * arp);
    const double new_rq = arq + s * (arp - tau * arq);
    A(r, p) = A(p, r) = new_rp;
    A(r, q) = A(q, r) = new_rq;
  }
  for (std::size_t r = 0; r < n; ++r) {
    const double vrp = V(r, p);
    const double vrq = V(r, q);
    V(r, p) = vrp - s * (vrq + tau * vrp);
    V(r, q) = vrq + s * (vrp - tau * vrq);
  }
}

}  // namespace

std::vector<double> symmetric_eigenvalues(const SymmetricMatrix& m, const EigenOptions& opts) {
  const std::size_t n = m.size();
  if (n == 0) return {};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m(i, j) != m(j, i)) throw NumericalError("symmetric_eigenvalues: matrix is not symmetric");
    }
  }

  std::vector<double> a(n * n);
  std::vector<double> v(n * n, 0.0);
  double frob = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a[i * n + j] = m(i, j);
      frob += m(i, j) * m(i, j);
    }
    v[i * n + i] = 1.0;
  }
  frob = std::sqrt(frob);
  if (!std::isfinite(frob)) throw NumericalError("symmetric_eigenvalues: non-finite entries");

  const double eps = std::numeric_limits<double>::epsilon();
  bool converged = false;
  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
    }
    if (off == 0.0 || std::sqrt(off) <= 1e-3 * eps * frob) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        // negligible against both diagonal entries: drop instead of rotating
        const double g = 100.0 * std::abs(apq);
        if (sweep > 3 && std::abs(a[p * n + p]) + g == std::abs(a[p * n + p]) &&
            std::abs(a[q * n + q]) + g == std::abs(a[q * n + q])) {
          a[p * n + q] = a[q * n + p] = 0.0;
          continue;
        }
        rotate(a, v, n, p, q);
      }
    }
  }
  if (!converged) {
    throw NumericalError("symmetric_eigenvalues: no convergence after " +
                         std::to_string(opts.max_sweeps) + " sweeps");
  }

  const double scale = m.norm_inf();
  std::vector<double> column(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t r = 0; r < n; ++r) column[r] = v[r * n + k];
    const std::vector<double> mv = m.multiply(column);
    const double lambda = a[k * n + k];
    double res = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const double e = mv[r] - lambda * column[r];
      res += e * e;
    }
    if (std::sqrt(res) > opts.residual_tolerance * std::max(scale, eps)) {
      throw NumericalError("symmetric_eigenvalues: eigenpair residual above tolerance");
    }
  }

  std::vector<double> eig(n);
  for (std::size_t k = 0; k < n; ++k) eig[k] = a[k * n + k];
  std::sort(eig.begin(), eig.end());
  return eig;
}

SpectrumBounds gershgorin_bounds(const SymmetricMatrix& m) {
  if (m.empty()) return {};
  SpectrumBounds b{std::numeric_limits<double>::infinity(),
                   -std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < m.size(); ++i) {
    double radius = 0.0;
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j != i) radius += std::abs(m(i, j));
    }
    b.lo = std::min(b.lo, m(i, i) - radius);
    b.hi = std::max(b.hi, m(i, i) + radius);
  }
  return b;
}

LogDet log_determinant(std::span<const double> eigenvalues) {
  LogDet out;
  for (double l : eigenvalues) {
    if (!(l > 0.0)) {
      return {std::numeric_limits<double>::quiet_NaN(), false};
    }
    out.value += std::log(l);
  }
  return out;
}

SpectrumRecord analyze_state(const ParticleState& state, const SimParams& params, int t,
                             bool include_inactive) {
  const UpdateMatrix um = build_update_matrix(state, params, include_inactive);
  SpectrumRecord rec;
  rec.t = t;
  rec.eigenvalues = symmetric_eigenvalues(um.entries);
  rec.gershgorin = gershgorin_bounds(um.entries);
  rec.log_det = log_determinant(rec.eigenvalues);
  rec.n_attractive = um.count(Activation::Attractive);
  rec.n_repulsive = um.count(Activation::Repulsive);
  return rec;
}

SpectrumHistogram::SpectrumHistogram(int bins, double lo, double hi) : lo_(lo), hi_(hi) {
  if (bins < 1) throw ConfigError("histogram needs at least one bin");
  if (!(lo < hi)) throw ConfigError("histogram range needs lo < hi");
  counts_.assign(static_cast<std::size_t>(bins), 0);
}

void SpectrumHistogram::add(double value) {
  if (value < lo_) {
    ++underflow_;
  } else if (!(value < hi_)) {
    ++overflow_;
  } else {
    const double width = (hi_ - lo_) / bins();
    const auto k = std::min(static_cast<std::size_t>((value - lo_) / width), counts_.size() - 1);
    ++counts_[k];
  }
}

void SpectrumHistogram::add(const SpectrumRecord& record) {
  for (double l : record.eigenvalues) add(l);
}

double SpectrumHistogram::bin_center(int k) const {
  return lo_ + (hi_ - lo_) * (k + 0.5) / bins();
}

std::uint64_t SpectrumHistogram::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), underflow_ + overflow_);
}

void SpectrumHistogram::write_table(std::ostream& out) const {
  fmt::print(out, "# bins {} range {:.17g} {:.17g}\n", bins(), lo_, hi_);
  fmt::print(out, "# underflow {}\n# overflow {}\n", underflow_, overflow_);
  for (int k = 0; k < bins(); ++k) {
    fmt::print(out, "{:.17g} {}\n", bin_center(k), counts_[static_cast<std::size_t>(k)]);
  }
}

}  // namespace activemix
