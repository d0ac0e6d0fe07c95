#pragma once

#include <vector>

#include <Eigen/Dense>

#include "assocvar/algebra.hpp"

namespace assocvar {

/// Commutative polynomial in m real variables: (exponent vector, coefficient) terms.
struct RealPoly {
  struct Term {
    std::vector<unsigned> exponents;
    double coeff = 0;
  };
  std::vector<Term> terms;

  double value(const Eigen::VectorXd& x) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;
};

/// The real zero set of the abelianized relations of an affine chart.
class RealChart {
 public:
  RealChart(std::size_t m, std::vector<RealPoly> relations)
      : m_(m), relations_(std::move(relations)) {}

  /// Abelianizes the relations of `a` (over Q or R); commutators vanish.
  static RealChart from_algebra(const FpAlgebra& a);

  std::size_t m() const { return m_; }
  std::size_t num_relations() const { return relations_.size(); }
  const std::vector<RealPoly>& relations() const { return relations_; }

  Eigen::VectorXd values(const Eigen::VectorXd& x) const;
  /// Rows are the analytic gradients of the relations.
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const;
  /// Largest relative deviation of the analytic Jacobian from central
  /// differences with step h.
  double jacobian_check(const Eigen::VectorXd& x, double h = 1e-6) const;

 private:
  std::size_t m_;
  std::vector<RealPoly> relations_;
};

struct ProjectOptions {
  double tolerance = 1e-12;
  int max_iterations = 50;
  /// Singular values below this (relative to 1) count as rank loss.
  double rank_tolerance = 1e-10;
};

/// Newton iteration with least-squares steps x -= J^+ F(x). Throws
/// RankDeficient near singular points and NoConvergence otherwise.
Eigen::VectorXd project_to_chart(const RealChart& chart, const Eigen::VectorXd& x0,
                                 const ProjectOptions& options = {});

/// Orthogonal projection of v onto ker J(x).
Eigen::VectorXd tangent_project(const RealChart& chart, const Eigen::VectorXd& v,
                                const Eigen::VectorXd& x, const ProjectOptions& options = {});

struct GeodesicOptions {
  /// Debug switch: skipping renormalization exposes speed drift.
  bool renormalize = true;
  ProjectOptions projection;
};

struct GeodesicSample {
  double arclength = 0;
  Eigen::VectorXd position;
  Eigen::VectorXd velocity;
};

struct GeodesicTrace {
  std::vector<GeodesicSample> samples;
  /// Max |relation| over the samples.
  double max_constraint_drift = 0;
  /// Max | |v| - 1 | over the samples.
  double speed_drift = 0;
};

/// Projected step: x' = project(x + h v), v' = normalize(tangent_project((x' - x) / h, x')).
/// p0 is projected and v0 made tangent and unit before starting; the last
/// step is shortened to end exactly at arclength L.
GeodesicTrace integrate_geodesic(const RealChart& chart, const Eigen::VectorXd& p0,
                                 const Eigen::VectorXd& v0, double length, double step,
                                 const GeodesicOptions& options = {});

double speed_profile(const GeodesicTrace& trace);
double constraint_drift(const RealChart& chart, const GeodesicTrace& trace);

}  // namespace assocvar
