#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace anosov {

/// Element of GL(d, Z): an integer matrix with determinant +1 or -1, acting
/// on the torus R^d / Z^d.
class ToralAutomorphism {
public:
    explicit ToralAutomorphism(Eigen::MatrixXi entries);

    int dim() const { return static_cast<int>(entries_.rows()); }
    const Eigen::MatrixXi& entries() const { return entries_; }

    /// Exact integer determinant (fraction-free Bareiss elimination).
    long long determinant() const;

    /// Exact integer inverse via the adjugate; valid because |det| = 1.
    ToralAutomorphism inverse() const;

    /// Integer power A^k, k of either sign.
    Eigen::MatrixXi power(long long k) const;

    /// Characteristic polynomial coefficients c_0..c_d of
    /// det(tI - A) = t^d + c_{d-1} t^{d-1} + ... + c_0 (integers).
    std::vector<long long> char_poly() const;

    /// Eigenvalue moduli, ascending, from a companion-matrix solve of the
    /// characteristic polynomial.
    std::vector<double> eigenvalue_moduli() const;

    bool operator==(const ToralAutomorphism& o) const { return entries_ == o.entries_; }

private:
    Eigen::MatrixXi entries_;
};

/// Point of the mapping torus T^d x [0,1) / (x,1) ~ (Ax,0).
struct SuspensionPoint {
    Eigen::VectorXd x;  // torus coordinates, each in [0,1)
    double s = 0.0;     // suspension coordinate in [0,1)
};

/// Measured stable/unstable data of a fiberwise splitting check.
struct SplittingReport {
    int dim_stable = 0;
    int dim_unstable = 0;
    double contraction_rate = 0.0;  // fitted lambda per unit time, < 1
    double expansion_rate = 0.0;    // fitted rate > 1 for the unstable check
    double constant_adapted = 0.0;  // fitted C in the eigen-adapted norm
    double constant_euclidean = 0.0;  // fitted C in the Euclidean norm
    bool pass = false;
    std::string detail;
};

constexpr double kTolEig = 1e-9;   // unit-circle exclusion band
constexpr double kTolFlow = 1e-12; // flow group-law tolerance

/// True iff every eigenvalue modulus differs from 1 by more than tol_eig.
/// `moduli_out`, when non-null, receives the sorted moduli either way.
bool is_hyperbolic(const ToralAutomorphism& a, std::vector<double>* moduli_out = nullptr);

/// Counts of eigenvalue moduli below / above 1.  Throws on a non-hyperbolic
/// input, naming the near-unit modulus.
std::pair<int, int> stable_unstable_dims(const ToralAutomorphism& a);

/// Affine-gluing compatibility of Eq-style surgery data: C D = D B exactly
/// over the integers (equivalently C = D B D^{-1}).
bool check_gluing_conjugacy(const ToralAutomorphism& b, const ToralAutomorphism& c,
                            const ToralAutomorphism& d);

/// Suspension flow (x, s) -> (x, s + t), reducing through (x,1) ~ (Ax,0);
/// negative times unwrap with A^{-1}.
SuspensionPoint suspension_flow(const SuspensionPoint& p, double t, const ToralAutomorphism& a);

/// Wrap-aware distance between suspension points (used by the flow-law tests).
double suspension_distance(const SuspensionPoint& p, const SuspensionPoint& q);

/// Rate check for the suspension of B x A fibering over the suspension of A:
/// samples fiber vectors in the stable (resp. unstable) eigenspaces of B and
/// fits ||DPhi^t v|| <= C lambda^t ||v|| in the eigen-adapted norm, reporting
/// the Euclidean-norm fit as well.
SplittingReport fiberwise_rate_check(const ToralAutomorphism& b, const ToralAutomorphism& a,
                                     double t_max);

/// First-return map of the product suspension to {s = 0}: block-diag(B, A).
ToralAutomorphism section_return_map(const ToralAutomorphism& a, const ToralAutomorphism& b);

/// Real eigen-adapted basis of an integer matrix: columns are real
/// eigenvectors, complex pairs contribute (Re, Im) columns; `moduli` holds
/// one |lambda| per column.
struct EigenBasis {
    Eigen::MatrixXd basis;        // P
    Eigen::MatrixXd basis_inv;    // P^{-1}
    std::vector<double> moduli;   // per column
};
EigenBasis eigen_adapted_basis(const ToralAutomorphism& a);

/// Plain-text matrix file: first line d, then d rows of d integers.
ToralAutomorphism read_matrix_file(const std::string& path);
void write_matrix_file(const ToralAutomorphism& a, const std::string& path);

}  // namespace anosov
