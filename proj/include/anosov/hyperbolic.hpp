#pragma once

#include <complex>
#include <string>
#include <vector>

namespace anosov {

/// Point of the unit tangent bundle of the hyperbolic plane, stored as a
/// projective 2x2 real matrix of determinant one.  The identity element is
/// the frame (i, upward vertical) in the upper half-plane model; the group
/// acts by Mobius transformations and the frame vector is carried by the
/// derivative.
class Frame {
public:
    Frame() : m_{1, 0, 0, 1} {}
    Frame(double a, double b, double c, double d);

    double a() const { return m_[0]; }
    double b() const { return m_[1]; }
    double c() const { return m_[2]; }
    double d() const { return m_[3]; }

    Frame operator*(const Frame& o) const;
    Frame inverse() const;

    /// Base point g.i in the upper half-plane.
    std::complex<double> base_point() const;
    /// Unit tangent vector (Euclidean representation; |v| = Im base_point).
    std::complex<double> vector() const;

    /// One-parameter subgroups through the identity frame.
    static Frame geodesic(double t);            // diag(e^{t/2}, e^{-t/2})
    static Frame rotation(double phi);          // frame vector turns by -2 phi
    static Frame stable_horocycle(double s);    // upper unipotent
    static Frame unstable_horocycle(double s);  // lower unipotent
    static Frame symmetric(double s);           // cosh/sinh one-parameter group

    /// Involution (y, w) -> (y, -w); conjugates the geodesic flow to its
    /// time reversal.
    Frame flipped() const;

    /// Ideal endpoints of the frame's geodesic on the boundary R u {inf}.
    double forward_endpoint() const;   // g.inf
    double backward_endpoint() const;  // g.0

    std::array<double, 4> raw() const { return m_; }

private:
    void renormalize();
    std::array<double, 4> m_;
};

/// Right multiplication by the diagonal subgroup: the geodesic flow.
Frame geodesic_flow_h2(const Frame& f, double t);

/// The flip map.
Frame flip_map(const Frame& f);

/// Operational Sasaki distance: sqrt(base_distance^2 + transport_angle^2),
/// with fiber great circles of length 2 pi.
double sasaki_distance(const Frame& f1, const Frame& f2);

/// Hyperbolic distance between upper half-plane points.
double hyperbolic_distance(std::complex<double> z1, std::complex<double> z2);

/// Sasaki distance from f to the flowline {g . geodesic(t)} (tube distance).
double distance_to_flowline(const Frame& f, const Frame& flowline_base);

/// Distance to the model SN: the identity flowline together with its flip.
double distance_to_sn(const Frame& f);

enum class CurveKind { fiber, stable_horocycle, unstable_horocycle, circle, equidistant };
std::string curve_kind_name(CurveKind k);

/// One sampled curve of a U-set: frames along the curve with their arc
/// parameters and both truncation distances (tube and radial).
struct CurveFamilySample {
    CurveKind kind = CurveKind::fiber;
    double t = 0.0;  // family parameter where applicable
    std::vector<double> arc;
    std::vector<Frame> frames;
    std::vector<double> tube_dist;
    std::vector<double> radial_dist;
};

struct USetOptions {
    int samples_per_curve = 33;
    int directions_per_sector = 4;  // circle / equidistant curves per sign
};

/// The five-family disc through f, truncated to Sasaki tube distance <= eps
/// from the flowline of f.  Requires 0 < eps < pi.
std::vector<CurveFamilySample> build_U_set(const Frame& f, double eps,
                                           const USetOptions& opts = {});

/// Distance from a query frame to the closed-form U-set of `base` (curve
/// membership decomposed exactly, minimized over the five families), plus the
/// query's own tube distance for the eps-truncation test.
struct USetDistance {
    double to_set = 0.0;
    double tube = 0.0;
};
USetDistance distance_to_U_set(const Frame& query, const Frame& base);

/// CSV export: kind,t,s,g00,g01,g10,g11.
void write_curves_csv(const std::vector<CurveFamilySample>& curves, const std::string& path);

/// Product coordinates on the eps-neighborhood of the model SN: s is the arc
/// length along the stable horocycle trace, u along the unstable one, tau the
/// position along SN; `flipped` marks the reversed component.
struct LocalProductCoords {
    double s = 0.0;
    double u = 0.0;
    double tau = 0.0;
    bool flipped = false;

    Frame base() const;
};

constexpr double kChartEpsilon = 0.3;  // working eps for all chart contracts

/// Chart map: coordinates -> frame.  Exactly conjugates the geodesic flow to
/// (s, u, tau) -> (e^{-t} s, e^t u, tau + t).
Frame chart_frame(const LocalProductCoords& z);

/// Inverse chart.  Throws when the frame lies outside the eps-neighborhood
/// of the model SN, naming the measured distance.
LocalProductCoords local_coords(const Frame& f, double eps = kChartEpsilon);

/// Residual of the product-flow contract at time t (Sasaki distance between
/// the flowed frame and the coordinate prediction).
double product_flow_check(const LocalProductCoords& z, double t, double eps = kChartEpsilon);

}  // namespace anosov
