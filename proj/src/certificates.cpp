#include "gridcert/certificates.hpp"

#include <algorithm>
#include <cmath>

namespace gridcert {

LoadVector LoadVector::from_consumption(const RVector& p, const RVector& q) {
  if (p.size() != q.size()) throw DimensionError("P and Q vectors differ in length");
  CVector s(p.size());
  for (Eigen::Index k = 0; k < p.size(); ++k) s[k] = -Complex(p[k], q[k]);
  return LoadVector(std::move(s));
}

ScalingMatrix::ScalingMatrix(RVector lambda) : lambda_(std::move(lambda)) {
  for (Eigen::Index k = 0; k < lambda_.size(); ++k)
    if (!(lambda_[k] > 0.0) || !std::isfinite(lambda_[k]))
      throw Error("scaling entries must be positive and finite");
}

std::string to_string(Criterion c) {
  switch (c) {
    case Criterion::norm2: return "norm2";
    case Criterion::norm_inf: return "norm_inf";
    case Criterion::rescaled_norm2: return "rescaled_norm2";
    case Criterion::rescaled_norm_inf: return "rescaled_norm_inf";
    case Criterion::hull: return "hull";
  }
  return "unknown";
}

double nuclear_norm_2(const CMatrix& a) {
  double best = 0.0;
  for (Eigen::Index h = 0; h < a.rows(); ++h) {
    // Scaled by the row's largest modulus so the result never drops below
    // that entry under rounding.
    const double peak = a.row(h).cwiseAbs().maxCoeff();
    if (peak == 0.0) continue;
    double sum = 0.0;
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      const double r = std::abs(a(h, k)) / peak;
      sum += r * r;
    }
    best = std::max(best, peak * std::sqrt(sum));
  }
  return best;
}

double nuclear_norm_inf(const CMatrix& a) {
  double best = 0.0;
  for (Eigen::Index h = 0; h < a.rows(); ++h)
    for (Eigen::Index k = 0; k < a.cols(); ++k) best = std::max(best, std::abs(a(h, k)));
  return best;
}

double nuclear_norm(const CMatrix& a, Norm norm) {
  return norm == Norm::two ? nuclear_norm_2(a) : nuclear_norm_inf(a);
}

double paired_vector_norm(const CVector& s, Norm norm) {
  if (norm == Norm::two) return s.size() == 0 ? 0.0 : nuclear_norm_2(s.transpose());
  double sum = 0.0;
  for (Eigen::Index k = 0; k < s.size(); ++k) sum += std::abs(s[k]);
  return sum;
}

double rescaled_matrix_norm(const ImpedanceMatrix& z, const ScalingMatrix& lambda, Norm norm) {
  const CMatrix scaled = z.entries * lambda.lambda().asDiagonal();
  return nuclear_norm(scaled, norm);
}

double rescaled_vector_norm(const CVector& s, const ScalingMatrix& lambda, Norm norm) {
  const CVector unscaled = s.cwiseQuotient(lambda.lambda().cast<Complex>());
  return paired_vector_norm(unscaled, norm);
}

namespace {

void check_dimensions(const ImpedanceMatrix& z, const LoadVector& s) {
  if (z.entries.rows() != z.entries.cols()) throw DimensionError("impedance matrix is not square");
  if (s.size() != z.size())
    throw DimensionError("load vector has " + std::to_string(s.size()) + " entries, expected " +
                         std::to_string(z.size()));
}

void check_v0(double v0) {
  if (!(v0 > 0.0) || !std::isfinite(v0)) throw Error("v0 must be positive");
}

CertificateVerdict norm_verdict(double matrix_norm, double vector_norm, double v0,
                                Criterion criterion) {
  const double margin = v0 * v0 - 4.0 * matrix_norm * vector_norm;
  return {margin >= 0.0, criterion, margin};
}

}  // namespace

CertificateVerdict certify_base(const ImpedanceMatrix& z, const LoadVector& s, double v0,
                                Norm norm) {
  check_dimensions(z, s);
  check_v0(v0);
  return norm_verdict(nuclear_norm(z.entries, norm), paired_vector_norm(s.s, norm), v0,
                      norm == Norm::two ? Criterion::norm2 : Criterion::norm_inf);
}

CertificateVerdict certify_rescaled(const ImpedanceMatrix& z, const LoadVector& s, double v0,
                                    const ScalingMatrix& lambda, Norm norm) {
  check_dimensions(z, s);
  check_v0(v0);
  if (lambda.size() != z.size()) throw DimensionError("scaling matrix dimension mismatch");
  return norm_verdict(rescaled_matrix_norm(z, lambda, norm), rescaled_vector_norm(s.s, lambda, norm), v0,
                      norm == Norm::two ? Criterion::rescaled_norm2 : Criterion::rescaled_norm_inf);
}

Rhombus rhombus(const ImpedanceMatrix& z, double v0) {
  check_v0(v0);
  const auto n = z.size();
  Rhombus out{RVector(n)};
  RVector column_max(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    column_max[k] = z.entries.col(k).cwiseAbs().maxCoeff();
    if (!(column_max[k] > 0.0))
      throw Error("bus " + std::to_string(z.bus_order.at(static_cast<std::size_t>(k))) +
                  " is not coupled to any load bus; its limit is undefined");
    out.s_max[k] = v0 * v0 / (4.0 * column_max[k]);
  }
  // lambda_k = 1 / max_h |Z_hk| normalizes every column's peak to one.
  const CMatrix scaled = z.entries * column_max.cwiseInverse().asDiagonal();
  if (std::abs(nuclear_norm_inf(scaled) - 1.0) > 1e-12)
    throw Error("column rescaling failed to normalize the impedance matrix");
  return out;
}

CertificateVerdict certify_hull(const Rhombus& rh, const LoadVector& s) {
  if (rh.size() != s.size()) throw DimensionError("load vector and rhombus differ in dimension");
  double sum = 0.0;
  for (Eigen::Index k = 0; k < s.size(); ++k) sum += std::abs(s.s[k]) / rh.s_max[k];
  const double margin = 1.0 - sum;
  return {margin >= 0.0, Criterion::hull, margin};
}

std::vector<ScalingMatrix> lambda_grid(double lo, double hi, int points_per_axis, int n,
                                       GridSpacing spacing) {
  if (n < 1) throw Error("lambda grid needs at least one axis");
  if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi)) throw Error("lambda range must satisfy 0 < lo < hi");
  if (points_per_axis < 1) throw Error("lambda grid needs at least one point per axis");

  double total = 1.0;
  for (int k = 0; k < n; ++k) {
    total *= points_per_axis;
    if (total > 1e6) throw Error("lambda grid would exceed 10^6 matrices");
  }

  std::vector<double> axis(static_cast<std::size_t>(points_per_axis));
  for (int i = 0; i < points_per_axis; ++i) {
    if (points_per_axis == 1) {
      axis[0] = lo;
      break;
    }
    const double u = static_cast<double>(i) / (points_per_axis - 1);
    axis[static_cast<std::size_t>(i)] =
        spacing == GridSpacing::log ? lo * std::pow(hi / lo, u) : lo + (hi - lo) * u;
  }
  axis.back() = points_per_axis == 1 ? lo : hi;

  std::vector<ScalingMatrix> grid;
  grid.reserve(static_cast<std::size_t>(total));
  std::vector<int> digits(static_cast<std::size_t>(n), 0);
  for (std::size_t count = 0; count < static_cast<std::size_t>(total); ++count) {
    RVector l(n);
    for (int k = 0; k < n; ++k) l[k] = axis[static_cast<std::size_t>(digits[static_cast<std::size_t>(k)])];
    grid.emplace_back(std::move(l));
    for (int k = n - 1; k >= 0; --k) {
      auto& d = digits[static_cast<std::size_t>(k)];
      if (++d < points_per_axis) break;
      d = 0;
    }
  }
  return grid;
}

}  // namespace gridcert
