#pragma once

#include "anosov/toral.hpp"

#include <optional>
#include <string>
#include <vector>

namespace anosov {

/// Degree-one lift of a circle map: F(x) = x + c + sum_k a_k sin(2 pi k x)
/// + b_k cos(2 pi k x).  The periodic displacement keeps F(x+1) = F(x) + 1
/// automatic.
struct CircleMapLift {
    double base = 0.0;
    std::vector<std::pair<double, double>> fourier;  // (a_k, b_k), k = 1..

    double operator()(double x) const;
    double derivative(double x) const;
    /// Smallest sampled derivative; positive iff a monotone lift.
    double monotonicity_margin(int samples = 4096) const;
};

struct RotationNumber {
    double estimate = 0.0;
    double error_bound = 0.0;
};

/// (F^n(x0) - x0)/n with the standard 1/n bound for homeomorphism lifts.
RotationNumber rotation_number(const CircleMapLift& f, long long n, double x0);

/// Projective slope: finite value or the vertical marker.
struct Slope {
    double value = 0.0;
    bool vertical = false;

    static Slope of(double v) { return {v, false}; }
    static Slope vertical_marker() { return {0.0, true}; }
};

/// Line field on T^2 sampled on an N x M grid of angles (radians, row-major;
/// row i is x = i/N, column j is y = j/M).
struct LineField {
    int n = 0, m = 0;
    std::vector<double> angles;

    double angle_at(double x, double y) const;  // bilinear with pi-unwrap
    /// Largest angular jump between grid neighbours (mod pi).
    double max_neighbour_jump() const;
};

LineField read_line_field(const std::string& path);
void write_line_field(const LineField& f, const std::string& path);

/// Integrates the leaf through the origin for arc length L in the universal
/// cover and returns the displacement slope dy/dx (vertical marker when the
/// x-displacement is negligible).
Slope linear_slope_of_foliation(const LineField& field, double arc_length, double step = 0.0);

/// Continuous path of slopes given by a dense sample table with linear
/// interpolation.
struct SlopePath {
    std::vector<double> t;       // increasing, t.front() = 0, t.back() = 1
    std::vector<Slope> sigma;
    double slope_step_max = 0.5;  // continuity witness

    Slope at(double s) const;
    void validate() const;

    static SlopePath linear(double sigma0, double sigma1, int samples = 1001);
};

struct RationalCrossing {
    double t0 = 0.0;
    long long p = 0;
    long long q = 1;
};

/// Minimal-denominator rational strictly inside the open interval (a, b)
/// (Stern-Brocot descent; denominator ties broken by smaller |p|).
std::pair<long long, long long> simplest_rational_between(double a, double b);

/// True iff x equals some p/q with q <= q_max up to representation error
/// (continued-fraction convergents, tolerance tol * max(1, |x|)).
bool near_rational(double x, long long q_max, double tol = 4e-15);

constexpr long long kIrrationalityQMax = 1000000;

/// Intermediate-value crossing: the minimal-denominator rational between the
/// endpoint slopes, and a bisection time t0 with |sigma(t0) - p/q| < tol.
RationalCrossing find_rational_crossing(const SlopePath& path, double tol);

/// First time the backward-contracted length of a would-be circle leaf drops
/// below the systole: ln(len0/systole)/ln(1/rate), or 0 when already below.
double circle_leaf_contradiction(double len0, double rate, double systole);

enum class Verdict { impossible_parity, impossible_dims, impossible_d2, not_obstructed };

std::string verdict_name(Verdict v);

struct ObstructionVerdict {
    Verdict verdict = Verdict::not_obstructed;
    int dim_stable = 0;
    int dim_unstable = 0;
    std::optional<RationalCrossing> witness;  // set for impossible_d2
    std::string note;
};

/// Eigen-direction slopes (dy/dx) of a hyperbolic 2x2 automorphism:
/// (unstable slope, stable slope).
std::pair<Slope, Slope> eigen_slopes_2d(const ToralAutomorphism& a);

/// Dimension/parity/d=2 obstructions for a fiberwise-Anosov monodromy A over
/// a base with (or without) an orientation-reversed periodic orbit pair.
ObstructionVerdict fiberwise_obstruction_report(const ToralAutomorphism& a,
                                                bool base_has_inverse_orbit_pair);

}  // namespace anosov
