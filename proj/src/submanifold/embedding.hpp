#pragma once

// Embedded submanifolds: a parameter box mapped into a chart by an embedding
// callback.  Derivatives of the embedding default to central differences;
// analytic callbacks may be supplied.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "manifold/chart.hpp"
#include "support/linalg.hpp"

namespace focallab {

using EmbedFn = std::function<void(const double* u, double* x)>;
using EmbedJacobianFn = std::function<void(const double* u, double* jac)>;  // jac[i*m+a] = dF^i/du^a

struct ParamDomain {
  Vec lo, hi;
  std::vector<int> periodic;  // per-dimension flag
};

class EmbeddedSubmanifold {
 public:
  EmbeddedSubmanifold(Chart chart, int param_dim, std::string name, EmbedFn embed,
                      ParamDomain domain);

  EmbeddedSubmanifold& with_jacobian(EmbedJacobianFn jac);

  const Chart& chart() const { return chart_; }
  int param_dim() const { return m_; }
  int ambient_dim() const { return chart_.dim(); }
  int codim() const { return chart_.dim() - m_; }
  const std::string& name() const { return name_; }
  const ParamDomain& domain() const { return domain_; }

  void embed_at(const double* u, double* x) const;
  Vec embed_at(const Vec& u) const;

  // n x m matrix of tangent coordinate vectors dF/du^a.
  Mat jacobian(const double* u) const;
  // Second parameter derivative d_a d_b F as an ambient vector.
  Vec second_derivative(const double* u, int a, int b) const;

 private:
  Chart chart_;
  int m_;
  std::string name_;
  EmbedFn embed_;
  EmbedJacobianFn jac_;
  ParamDomain domain_;
};

struct NormalFrame {
  Vec point;                    // F(u) in chart coordinates
  std::vector<Vec> tangent;     // orthonormal basis of the tangent space (m vectors)
  std::vector<Vec> normal;      // orthonormal basis of the normal space (n - m vectors)
  Mat tangent_coeffs;           // row alpha: tangent[alpha] = sum_a coeff(alpha,a) dF/du^a
};

// Splits the ambient tangent space at F(u).  Raises RankDeficientEmbedding
// when the smallest singular value of the (orthonormalized-column) Jacobian
// drops below 1e-10.
NormalFrame tangent_normal_split(const EmbeddedSubmanifold& sub, const double* u);

// Deterministic grid of parameter samples: counts per dimension, uniform
// nodes with the right endpoint omitted for periodic dimensions,
// endpoint-inclusive uniform nodes otherwise (single node -> midpoint).
std::vector<Vec> parameter_grid(const EmbeddedSubmanifold& sub, const std::vector<int>& counts);

}  // namespace focallab
