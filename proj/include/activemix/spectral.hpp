#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "activemix/dynamics.hpp"
#include "activemix/params.hpp"

namespace activemix {

/// Dense symmetric matrix, row-major. Only used at desk scale (N <= a few
/// hundred), so there is no packed storage.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}
  static SymmetricMatrix identity(std::size_t n);

  std::size_t size() const { return n_; }
  bool empty() const { return n_ == 0; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  /// Writes both (i, j) and (j, i).
  void set_pair(std::size_t i, std::size_t j, double v) {
    data_[i * n_ + j] = v;
    data_[j * n_ + i] = v;
  }
  double trace() const;
  /// Max absolute row sum.
  double norm_inf() const;
  std::vector<double> multiply(std::span<const double> v) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Per-coordinate linear update x' = M x over activated particles. Row i
/// holds pair coefficients c_ij off the diagonal and 1 - sum_j c_ij on it.
struct UpdateMatrix {
  SymmetricMatrix entries;
  std::vector<std::size_t> index_map;   // row -> global particle index
  std::vector<Activation> mode_map;     // row -> activation of that particle

  std::size_t size() const { return entries.size(); }
  int count(Activation mode) const;
};

/// Builds M from the pre-step state using minimum-image distances. Inactive
/// particles are omitted unless include_inactive is set (they would be
/// identity rows). Returns an empty matrix when nothing is activated.
UpdateMatrix build_update_matrix(const ParticleState& state, const SimParams& params,
                                 bool include_inactive = false);

struct EigenOptions {
  int max_sweeps = 100;
  double residual_tolerance = 1e-10;  // relative to norm_inf(M)
};

/// All eigenvalues of a symmetric matrix, ascending, by cyclic Jacobi
/// rotations. Each eigenpair is checked against ||Mv - lv|| <= tol ||M||;
/// throws NumericalError if the sweep cap is hit or a residual is too large.
std::vector<double> symmetric_eigenvalues(const SymmetricMatrix& m, const EigenOptions& opts = {});

struct SpectrumBounds {
  double lo = 1.0;
  double hi = 1.0;
};

/// Hull of the Gershgorin intervals [m_ii - r_i, m_ii + r_i], r_i the
/// absolute off-diagonal row sum. For a row-sum-one matrix m_ii = 1 - s_i.
/// An empty matrix yields (1, 1).
SpectrumBounds gershgorin_bounds(const SymmetricMatrix& m);

struct LogDet {
  double value = 0.0;  // sum of log eigenvalues; NaN when not finite
  bool finite = true;  // false if any eigenvalue <= 0
};

LogDet log_determinant(std::span<const double> eigenvalues);

struct SpectrumRecord {
  int t = 0;
  std::vector<double> eigenvalues;  // ascending
  SpectrumBounds gershgorin;
  LogDet log_det;
  int n_attractive = 0;
  int n_repulsive = 0;

  std::size_t size() const { return eigenvalues.size(); }
};

/// Build, eigensolve and bound M for one state snapshot.
SpectrumRecord analyze_state(const ParticleState& state, const SimParams& params, int t,
                             bool include_inactive = false);

/// Fixed-width histogram over [lo, hi); values below lo / at or above hi go to
/// the underflow / overflow tallies.
class SpectrumHistogram {
 public:
  SpectrumHistogram(int bins = 200, double lo = 0.9, double hi = 1.1);

  void add(double value);
  void add(const SpectrumRecord& record);

  int bins() const { return static_cast<int>(counts_.size()); }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double bin_center(int k) const;
  std::span<const std::uint64_t> counts() const { return counts_; }
  std::uint64_t underflow() const { return underflow_; }
  std::uint64_t overflow() const { return overflow_; }
  std::uint64_t total() const;

  /// Two-column text (bin center, count) preceded by '#' comment lines that
  /// carry the range and the under/overflow tallies.
  void write_table(std::ostream& out) const;

 private:
  double lo_;
  double hi_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t underflow_ = 0;
  std::uint64_t overflow_ = 0;
};

}  // namespace activemix
