#pragma once

// Second fundamental form and shape operators of an embedded submanifold.
//
// Sign convention: S_v is the bilinear form <II(. , .), v> expressed in the
// orthonormal tangent basis of the split, where II(X, Y) is the normal part
// of nabla_X Y.  With this convention the round sphere of radius rho in flat
// space has S_v = (1/rho) Id for the inward unit normal.

#include "manifold/geodesic.hpp"
#include "submanifold/embedding.hpp"

namespace focallab {

// m x m symmetric matrix of S_v in frame.tangent.  v must be a unit normal
// at F(u): a tangential component above 1e-8 raises NotNormal.
Mat shape_operator(const EmbeddedSubmanifold& sub, const double* u, const Vec& v);
Mat shape_operator_in_frame(const EmbeddedSubmanifold& sub, const double* u, const Vec& v,
                            const NormalFrame& frame);

enum class IINorm { Spectral, Frobenius };

// |II| at u: the chosen matrix norm of S_v maximized over unit normals.  In
// codimension one the two normals give the same norm and the value is exact;
// in higher codimension the maximum is taken over a deterministic design of
// at least 64*(n-m) directions on the unit normal sphere followed by one
// guarded Newton refinement in spherical angles.
double second_fundamental_form_norm(const EmbeddedSubmanifold& sub, const double* u,
                                    IINorm norm = IINorm::Spectral);

struct TraceExtremes {
  double min_sum;  // sum of the k smallest eigenvalues of S_v
  double max_sum;  // sum of the k largest
};
TraceExtremes partial_trace_extremes(const Mat& shape, int k);

// Trace of S_v over a caller-supplied orthonormal k-frame, given by
// coordinates in the orthonormal tangent basis.
double partial_trace_on_frame(const Mat& shape, const std::vector<Vec>& frame);

// Normal exponential: the unit-speed geodesic leaving F(u) in the normal
// direction v, carrying the adapted parallel frame
// (tangent basis of N, then normal basis intersected with v-perp).
FramedGeodesic normal_exp(const EmbeddedSubmanifold& sub, const double* u, const Vec& v,
                          double t_end, const OdeOptions& ode = {});

// Adapted initial frame used by normal_exp (exposed for the Jacobi setup).
std::vector<Vec> adapted_frame(const EmbeddedSubmanifold& sub, const NormalFrame& frame,
                               const Vec& v);

}  // namespace focallab
