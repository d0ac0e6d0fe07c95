#include "assocvar/geodesic.hpp"

#include <cmath>
#include <map>

#include "assocvar/error.hpp"

namespace assocvar {

namespace {

double ipow(double b, unsigned e) {
  double r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

struct Svd {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd;
  long rank = 0;
};

Svd decompose(const Eigen::MatrixXd& j, double tol) {
  Svd s{Eigen::JacobiSVD<Eigen::MatrixXd>(j, Eigen::ComputeThinU | Eigen::ComputeThinV), 0};
  const auto& sv = s.svd.singularValues();
  for (long i = 0; i < sv.size(); ++i)
    if (sv(i) > tol) ++s.rank;
  return s;
}

// Least-squares solve J x = b restricted to the numerically nonzero singular values.
Eigen::VectorXd pinv_solve(const Svd& s, const Eigen::VectorXd& b) {
  const auto& sv = s.svd.singularValues();
  Eigen::VectorXd ub = s.svd.matrixU().transpose() * b;
  for (long i = 0; i < sv.size(); ++i) ub(i) = i < s.rank ? ub(i) / sv(i) : 0.0;
  return s.svd.matrixV() * ub;
}

void require_full_rank(const Svd& s, std::size_t rows) {
  if (s.rank < static_cast<long>(rows))
    throw Error(ErrorCode::RankDeficient, "constraint Jacobian loses rank (near a singular point)");
}

}  // namespace

double RealPoly::value(const Eigen::VectorXd& x) const {
  double acc = 0;
  for (const auto& t : terms) {
    double v = t.coeff;
    for (std::size_t i = 0; i < t.exponents.size(); ++i) v *= ipow(x(static_cast<long>(i)), t.exponents[i]);
    acc += v;
  }
  return acc;
}

Eigen::VectorXd RealPoly::gradient(const Eigen::VectorXd& x) const {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(x.size());
  for (const auto& t : terms) {
    for (std::size_t k = 0; k < t.exponents.size(); ++k) {
      if (t.exponents[k] == 0) continue;
      double v = t.coeff * t.exponents[k];
      for (std::size_t i = 0; i < t.exponents.size(); ++i) {
        unsigned e = t.exponents[i] - (i == k ? 1 : 0);
        v *= ipow(x(static_cast<long>(i)), e);
      }
      g(static_cast<long>(k)) += v;
    }
  }
  return g;
}

RealChart RealChart::from_algebra(const FpAlgebra& a) {
  if (a.field().is_prime())
    throw Error(ErrorCode::InvalidArgument, "real charts need a presentation over Q or R");
  const std::size_t m = a.num_gens();
  std::vector<RealPoly> rels;
  for (const auto& r : a.pres().rels) {
    std::map<std::vector<unsigned>, Scalar> acc;
    for (const auto& [w, c] : r.terms()) {
      std::vector<unsigned> e(m, 0);
      for (Letter l : w) ++e[l];
      acc[e] += c;
    }
    RealPoly p;
    for (const auto& [e, c] : acc)
      if (sgn(c) != 0) p.terms.push_back({e, c.get_d()});
    if (!p.terms.empty()) rels.push_back(std::move(p));
  }
  return RealChart(m, std::move(rels));
}

Eigen::VectorXd RealChart::values(const Eigen::VectorXd& x) const {
  Eigen::VectorXd f(static_cast<long>(relations_.size()));
  for (std::size_t i = 0; i < relations_.size(); ++i) f(static_cast<long>(i)) = relations_[i].value(x);
  return f;
}

Eigen::MatrixXd RealChart::jacobian(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd j(static_cast<long>(relations_.size()), static_cast<long>(m_));
  for (std::size_t i = 0; i < relations_.size(); ++i)
    j.row(static_cast<long>(i)) = relations_[i].gradient(x).transpose();
  return j;
}

double RealChart::jacobian_check(const Eigen::VectorXd& x, double h) const {
  Eigen::MatrixXd j = jacobian(x);
  double worst = 0;
  for (long c = 0; c < static_cast<long>(m_); ++c) {
    Eigen::VectorXd xp = x, xm = x;
    xp(c) += h;
    xm(c) -= h;
    Eigen::VectorXd fd = (values(xp) - values(xm)) / (2 * h);
    for (long r = 0; r < j.rows(); ++r) {
      double err = std::abs(fd(r) - j(r, c)) / std::max(1.0, std::abs(j(r, c)));
      worst = std::max(worst, err);
    }
  }
  return worst;
}

Eigen::VectorXd project_to_chart(const RealChart& chart, const Eigen::VectorXd& x0,
                                 const ProjectOptions& options) {
  if (x0.size() != static_cast<long>(chart.m()))
    throw Error(ErrorCode::Mismatch, "point has the wrong dimension");
  Eigen::VectorXd x = x0;
  if (chart.num_relations() == 0) return x;
  for (int it = 0; it <= options.max_iterations; ++it) {
    Eigen::VectorXd f = chart.values(x);
    if (f.lpNorm<Eigen::Infinity>() <= options.tolerance) return x;
    if (it == options.max_iterations) break;
    Svd s = decompose(chart.jacobian(x), options.rank_tolerance);
    require_full_rank(s, chart.num_relations());
    x -= pinv_solve(s, f);
    if (!x.allFinite()) break;
  }
  throw Error(ErrorCode::NoConvergence, "projection onto the chart did not converge");
}

Eigen::VectorXd tangent_project(const RealChart& chart, const Eigen::VectorXd& v,
                                const Eigen::VectorXd& x, const ProjectOptions& options) {
  if (chart.num_relations() == 0) return v;
  Eigen::MatrixXd j = chart.jacobian(x);
  Svd s = decompose(j, options.rank_tolerance);
  require_full_rank(s, chart.num_relations());
  return v - pinv_solve(s, j * v);
}

GeodesicTrace integrate_geodesic(const RealChart& chart, const Eigen::VectorXd& p0,
                                 const Eigen::VectorXd& v0, double length, double step,
                                 const GeodesicOptions& options) {
  if (!(step > 0)) throw Error(ErrorCode::InvalidArgument, "step must be positive");
  if (!(length >= 0)) throw Error(ErrorCode::InvalidArgument, "length must be nonnegative");
  if (v0.size() != static_cast<long>(chart.m()))
    throw Error(ErrorCode::Mismatch, "direction has the wrong dimension");
  Eigen::VectorXd x = project_to_chart(chart, p0, options.projection);
  Eigen::VectorXd v = tangent_project(chart, v0, x, options.projection);
  if (v.norm() == 0) throw Error(ErrorCode::InvalidArgument, "direction is normal to the chart");
  v.normalize();
  GeodesicTrace trace;
  trace.samples.push_back({0.0, x, v});
  const long n = static_cast<long>(std::ceil(length / step - 1e-9));
  for (long k = 1; k <= n; ++k) {
    const double s = std::min(length, static_cast<double>(k) * step);
    const double h = s - trace.samples.back().arclength;
    if (h <= 0) break;
    Eigen::VectorXd next = project_to_chart(chart, x + h * v, options.projection);
    Eigen::VectorXd w = tangent_project(chart, (next - x) / h, next, options.projection);
    if (options.renormalize) {
      if (w.norm() == 0) throw Error(ErrorCode::NoConvergence, "velocity collapsed to zero");
      w.normalize();
    }
    x = std::move(next);
    v = std::move(w);
    trace.samples.push_back({s, x, v});
  }
  trace.max_constraint_drift = constraint_drift(chart, trace);
  trace.speed_drift = speed_profile(trace);
  return trace;
}

double speed_profile(const GeodesicTrace& trace) {
  double worst = 0;
  for (const auto& s : trace.samples) worst = std::max(worst, std::abs(s.velocity.norm() - 1.0));
  return worst;
}

double constraint_drift(const RealChart& chart, const GeodesicTrace& trace) {
  double worst = 0;
  if (chart.num_relations() == 0) return 0;
  for (const auto& s : trace.samples)
    worst = std::max(worst, chart.values(s.position).lpNorm<Eigen::Infinity>());
  return worst;
}

}  // namespace assocvar
