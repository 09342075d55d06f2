#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "liouville/expr.hpp"
#include "liouville/zero_test.hpp"

namespace liouville {

struct MetricError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Signature { Riemannian, Lorentzian };

struct VectorField {
    Expr vx, vy;
};

// A 2x2 symmetric metric with closed-form entries. Construction certifies
// that det g does not vanish identically, probes the signature on the sample
// box, inverts the metric and computes the Levi-Civita symbols. sqrt(det g)
// is extracted in closed form when the determinant is a perfect square of a
// rational expression (sign fixed at a probe point); otherwise it stays a
// square-root atom and downstream arithmetic keeps it exact.
class Metric {
public:
    Metric(std::string xname, std::string yname, Expr g11, Expr g12, Expr g22,
           int orientation = 1, ZeroPolicy policy = {});

    const std::string& xname() const { return x_; }
    const std::string& yname() const { return y_; }
    Expr g(int i, int j) const { return g_[i][j]; }
    Expr inv(int i, int j) const { return inv_[i][j]; }
    Expr det() const { return det_; }
    Expr sqrt_det() const { return sqrt_det_; }
    int orientation() const { return orientation_; }
    Signature signature() const { return signature_; }
    const ZeroPolicy& policy() const { return policy_; }

    // Levi-Civita symbol with the contravariant index first, 0-based
    Expr christoffel(int k, int i, int j) const { return gamma_[k][i][j]; }
    Expr partial(Expr f, int i) const;

private:
    void probe_signature();
    Expr extract_sqrt_det() const;

    std::string x_, y_;
    Expr g_[2][2], inv_[2][2], det_, sqrt_det_, gamma_[2][2][2];
    int orientation_;
    Signature signature_ = Signature::Riemannian;
    ZeroPolicy policy_;
};

Expr gauss_curvature(const Metric& g);

VectorField grad(const Metric& g, Expr f);
// rotation of grad by +90 degrees; refuses lorentzian metrics
VectorField sgrad(const Metric& g, Expr f);
Expr inner(const Metric& g, const VectorField& a, const VectorField& b);

// fully covariant tensor with 2^valence ordered components; the component
// with indices (i1,...,il) sits at bit position i1*2^(l-1)+...+il, so the
// first (newest-derivative) slot is the most significant bit
struct CovTensor {
    int valence = 0;
    std::vector<Expr> comp{Expr()};
    Expr at(const std::vector<int>& idx) const;
};

CovTensor covariant_derivative(const Metric& g, const CovTensor& t);
CovTensor iterated_covariant_derivative(const Metric& g, Expr f, int l);
// full contraction, one vector field per slot
Expr contract(const CovTensor& t, const std::vector<VectorField>& args);

// trace of the second covariant differential against the inverse metric
Expr laplacian(const Metric& g, Expr f);
// antisymmetric derivative pairing of two scalars along the curvature frame:
// (df1 ^ df2)(grad K, sgrad K) / |grad K|^2
Expr jacobian_invariant(const Metric& g, Expr f1, Expr f2);

} // namespace liouville
