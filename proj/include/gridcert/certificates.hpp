#pragma once

#include <string>
#include <vector>

#include "gridcert/netmodel.hpp"
#include "gridcert/types.hpp"

namespace gridcert {

/// Complex power per load bus in the injection convention (loads negative).
struct LoadVector {
  CVector s;

  LoadVector() = default;
  explicit LoadVector(CVector injected) : s(std::move(injected)) {}

  /// Builds s = -(P + jQ) from consumption-positive values.
  static LoadVector from_consumption(const RVector& p, const RVector& q);
  static LoadVector zero(Eigen::Index n) { return LoadVector(CVector::Zero(n)); }

  Eigen::Index size() const { return s.size(); }
};

/// Positive diagonal rescaling Λ.
class ScalingMatrix {
 public:
  explicit ScalingMatrix(RVector lambda);
  static ScalingMatrix identity(Eigen::Index n) { return ScalingMatrix(RVector::Ones(n)); }

  const RVector& lambda() const { return lambda_; }
  Eigen::Index size() const { return lambda_.size(); }

 private:
  RVector lambda_;
};

enum class Criterion { norm2, norm_inf, rescaled_norm2, rescaled_norm_inf, hull };

std::string to_string(Criterion c);

struct CertificateVerdict {
  bool certified = false;
  Criterion criterion = Criterion::norm2;
  // v0^2 - lhs for the norm criteria, 1 - sum |s_k|/s_max_k for the hull.
  double margin = 0.0;
};

/// Per-bus limits of the outermost cross-polytope sum |s_k|/s_max_k <= 1.
struct Rhombus {
  RVector s_max;

  Eigen::Index size() const { return s_max.size(); }
};

/// max_h sqrt(sum_j |A_hj|^2)
double nuclear_norm_2(const CMatrix& a);
/// max_{h,k} |A_hk|
double nuclear_norm_inf(const CMatrix& a);
/// Vector norm paired with the matrix norm: 2-norm for two, 1-norm for inf.
double paired_vector_norm(const CVector& s, Norm norm);
double nuclear_norm(const CMatrix& a, Norm norm);

/// ||Z Λ||^* and ||Λ^-1 s|| for the chosen pairing.
double rescaled_matrix_norm(const ImpedanceMatrix& z, const ScalingMatrix& lambda, Norm norm);
double rescaled_vector_norm(const CVector& s, const ScalingMatrix& lambda, Norm norm);

CertificateVerdict certify_base(const ImpedanceMatrix& z, const LoadVector& s, double v0,
                                Norm norm);
CertificateVerdict certify_rescaled(const ImpedanceMatrix& z, const LoadVector& s, double v0,
                                    const ScalingMatrix& lambda, Norm norm);

Rhombus rhombus(const ImpedanceMatrix& z, double v0);
CertificateVerdict certify_hull(const Rhombus& rh, const LoadVector& s);

enum class GridSpacing { log, linear };

/// Cartesian product of `points_per_axis` values per diagonal entry in
/// [lo, hi]. The first axis varies slowest. Throws if the product exceeds
/// one million matrices.
std::vector<ScalingMatrix> lambda_grid(double lo, double hi, int points_per_axis, int n,
                                       GridSpacing spacing = GridSpacing::log);

}  // namespace gridcert
