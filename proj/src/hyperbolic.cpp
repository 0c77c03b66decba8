#include "anosov/hyperbolic.hpp"

#include "anosov/report.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace anosov {

namespace {
constexpr double kPi = std::numbers::pi;

double wrap_angle(double a) {
    a -= 2.0 * kPi * std::round(a / (2.0 * kPi));
    if (a <= -kPi) a += 2.0 * kPi;
    return a;
}
}  // namespace

Frame::Frame(double a, double b, double c, double d) : m_{a, b, c, d} { renormalize(); }

void Frame::renormalize() {
    double det = m_[0] * m_[3] - m_[1] * m_[2];
    if (!(det > 0))
        throw std::invalid_argument("frame matrix must have positive determinant");
    double r = std::sqrt(det);
    for (double& x : m_) x /= r;
    // Canonical projective representative.
    double lead = std::abs(m_[0] + m_[3]) > 1e-14 ? m_[0] + m_[3]
                 : std::abs(m_[1]) > 1e-14        ? m_[1]
                                                  : m_[2];
    if (lead < 0)
        for (double& x : m_) x = -x;
}

Frame Frame::operator*(const Frame& o) const {
    return Frame(m_[0] * o.m_[0] + m_[1] * o.m_[2], m_[0] * o.m_[1] + m_[1] * o.m_[3],
                 m_[2] * o.m_[0] + m_[3] * o.m_[2], m_[2] * o.m_[1] + m_[3] * o.m_[3]);
}

Frame Frame::inverse() const { return Frame(m_[3], -m_[1], -m_[2], m_[0]); }

std::complex<double> Frame::base_point() const {
    std::complex<double> num(m_[1], m_[0]);
    std::complex<double> den(m_[3], m_[2]);
    return num / den;
}

std::complex<double> Frame::vector() const {
    std::complex<double> den(m_[3], m_[2]);
    return std::complex<double>(0, 1) / (den * den);
}

Frame Frame::geodesic(double t) {
    return Frame(std::exp(t / 2.0), 0.0, 0.0, std::exp(-t / 2.0));
}

Frame Frame::rotation(double phi) {
    return Frame(std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi));
}

Frame Frame::stable_horocycle(double s) { return Frame(1.0, s, 0.0, 1.0); }

Frame Frame::unstable_horocycle(double s) { return Frame(1.0, 0.0, s, 1.0); }

Frame Frame::symmetric(double s) {
    return Frame(std::cosh(s / 2.0), std::sinh(s / 2.0), std::sinh(s / 2.0), std::cosh(s / 2.0));
}

Frame Frame::flipped() const { return *this * rotation(-kPi / 2.0); }

double Frame::forward_endpoint() const {
    if (std::abs(m_[2]) < 1e-300) return std::numeric_limits<double>::infinity();
    return m_[0] / m_[2];
}

double Frame::backward_endpoint() const {
    if (std::abs(m_[3]) < 1e-300) return std::numeric_limits<double>::infinity();
    return m_[1] / m_[3];
}

Frame geodesic_flow_h2(const Frame& f, double t) { return f * Frame::geodesic(t); }

Frame flip_map(const Frame& f) { return f.flipped(); }

double hyperbolic_distance(std::complex<double> z1, std::complex<double> z2) {
    double num = std::norm(z1 - z2);
    return std::acosh(1.0 + num / (2.0 * z1.imag() * z2.imag()));
}

double sasaki_distance(const Frame& f1, const Frame& f2) {
    Frame m = f1.inverse() * f2;
    double e = (m.a() + m.d()) / 2.0;
    double f = (m.a() - m.d()) / 2.0;
    double g = (m.c() + m.b()) / 2.0;
    double h = (m.c() - m.b()) / 2.0;
    double q = std::hypot(e, h);
    double r = std::hypot(f, g);
    double base = 2.0 * std::log(q + r);                 // = d_H2(i, m.i)
    double angle = wrap_angle(-2.0 * std::atan2(h, e));  // transport angle
    return std::hypot(base, angle);
}

namespace {

/// Golden-section minimization of a smooth 1D function on [lo, hi].
template <typename F>
double golden_min(F f, double lo, double hi, int iters = 80) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    return std::min(f1, f2);
}

double dist_to_component(const Frame& f, bool flipped) {
    auto d = [&](double t) {
        Frame axis = Frame::geodesic(t);
        if (flipped) axis = axis.flipped();
        return sasaki_distance(axis, f);
    };
    // Center the bracket at the base point's axial position.
    double t0 = std::log(std::abs(f.base_point()));
    double best = 1e300, best_t = t0;
    for (int i = 0; i <= 80; ++i) {
        double t = t0 - 4.0 + 8.0 * i / 80.0;
        double v = d(t);
        if (v < best) { best = v; best_t = t; }
    }
    return golden_min(d, best_t - 0.2, best_t + 0.2);
}

}  // namespace

double distance_to_flowline(const Frame& f, const Frame& flowline_base) {
    Frame rel = flowline_base.inverse() * f;
    return dist_to_component(rel, false);
}

double distance_to_sn(const Frame& f) {
    return std::min(dist_to_component(f, false), dist_to_component(f, true));
}

// ---------------------------------------------------------------------------
// U-sets

std::string curve_kind_name(CurveKind k) {
    switch (k) {
        case CurveKind::fiber: return "fiber";
        case CurveKind::stable_horocycle: return "stable_horocycle";
        case CurveKind::unstable_horocycle: return "unstable_horocycle";
        case CurveKind::circle: return "circle";
        case CurveKind::equidistant: return "equidistant";
    }
    return "unknown";
}

namespace {

/// Identity-centered curve of one family, arc-length parameterized with the
/// frame vector at rotation -pi/2 from the curve tangent.
Frame family_frame(CurveKind kind, double t, double s) {
    switch (kind) {
        case CurveKind::fiber:
            return Frame::rotation(-s / 2.0);
        case CurveKind::stable_horocycle:
            return Frame::stable_horocycle(-s);
        case CurveKind::unstable_horocycle:
            return Frame::unstable_horocycle(-s);
        case CurveKind::circle: {
            double phi = (t > 0 ? 1.0 : -1.0) * s / (2.0 * std::sinh(std::abs(t)));
            return Frame::geodesic(t) * Frame::rotation(phi) * Frame::geodesic(-t);
        }
        case CurveKind::equidistant:
            return Frame::geodesic(t) * Frame::symmetric(-s / std::cosh(t)) *
                   Frame::geodesic(-t);
    }
    throw std::logic_error("unreachable");
}

double tube_dist_identity(CurveKind kind, double t, double s) {
    return dist_to_component(family_frame(kind, t, s), false);
}

/// Largest |s| with tube distance <= eps, up to `cap`.
double truncation_range(CurveKind kind, double t, double eps, double cap) {
    if (tube_dist_identity(kind, t, cap) <= eps) return cap;
    double lo = 0.0, hi = cap;
    double probe = std::min(eps, cap);
    if (tube_dist_identity(kind, t, probe) <= eps) lo = probe; else hi = probe;
    for (int i = 0; i < 60; ++i) {
        double mid = 0.5 * (lo + hi);
        (tube_dist_identity(kind, t, mid) <= eps ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace

std::vector<CurveFamilySample> build_U_set(const Frame& f, double eps, const USetOptions& opts) {
    if (!(eps > 0.0 && eps < kPi))
        throw std::invalid_argument("U-set radius must satisfy 0 < eps < pi");

    std::vector<std::pair<CurveKind, double>> families;
    families.emplace_back(CurveKind::fiber, 0.0);
    families.emplace_back(CurveKind::stable_horocycle, 0.0);
    families.emplace_back(CurveKind::unstable_horocycle, 0.0);
    for (int k = 1; k <= opts.directions_per_sector; ++k) {
        double xi = (kPi / 4.0) * k / (opts.directions_per_sector + 1);
        double t = std::atanh(std::tan(xi));
        for (double sgn : {1.0, -1.0}) {
            families.emplace_back(CurveKind::circle, sgn * t);
            families.emplace_back(CurveKind::equidistant, sgn * t);
        }
    }

    std::vector<CurveFamilySample> out;
    for (auto [kind, t] : families) {
        double cap = 50.0;
        if (kind == CurveKind::fiber) cap = kPi * (1.0 - 1e-9);
        if (kind == CurveKind::circle) cap = kPi * std::sinh(std::abs(t));

        CurveFamilySample sample;
        sample.kind = kind;
        sample.t = t;
        double hi = truncation_range(kind, t, eps, cap);
        double lo = -truncation_range(kind, -t, eps, cap);  // symmetric families
        int n = opts.samples_per_curve;
        for (int i = 0; i < n; ++i) {
            double s = lo + (hi - lo) * i / (n - 1);
            Frame e = family_frame(kind, t, s);
            sample.arc.push_back(s);
            sample.tube_dist.push_back(dist_to_component(e, false));
            sample.radial_dist.push_back(sasaki_distance(Frame(), e));
            sample.frames.push_back(f * e);
        }
        out.push_back(std::move(sample));
    }
    return out;
}

USetDistance distance_to_U_set(const Frame& query, const Frame& base) {
    Frame rel = base.inverse() * query;
    double a = rel.a(), b = rel.b(), c = rel.c(), d = rel.d();
    if (a < 0) { a = -a; b = -b; c = -c; d = -d; }

    double best = 1e300;
    auto consider = [&](const Frame& cand) {
        best = std::min(best, sasaki_distance(rel, cand));
    };

    if (std::abs(a) > 1e-12) consider(Frame::stable_horocycle(b / a));
    if (std::abs(d) > 1e-12) consider(Frame::unstable_horocycle(c / d));

    double ad = a * d, bc = b * c;
    if (bc < 0.0 && ad > 1e-24) {
        // a_p r_phi a_q decomposition (circle / fiber sector).
        double cosphi = std::sqrt(std::min(ad, 1.0));
        double sinphi = (c >= 0 ? 1.0 : -1.0) * std::sqrt(-bc);
        double phi = std::atan2(sinphi, cosphi);
        double pq_sum = std::log(a / d);
        double pq_diff = std::log(-b / c);
        double qq = 0.5 * (pq_sum - pq_diff);
        double tt = -qq;
        consider(Frame::geodesic(tt) * Frame::rotation(phi) * Frame::geodesic(-tt));
        consider(Frame::rotation(phi));
    }
    if (bc > 0.0) {
        // a_p symmetric(s) a_q decomposition (equidistant sector).
        double s = 2.0 * std::asinh((b >= 0 ? 1.0 : -1.0) * std::sqrt(bc));
        double pq_sum = std::log(a / d);
        double pq_diff = std::log(b / c);
        double qq = 0.5 * (pq_sum - pq_diff);
        double tt = -qq;
        consider(Frame::geodesic(tt) * Frame::symmetric(s) * Frame::geodesic(-tt));
    }

    USetDistance out;
    out.to_set = best;
    out.tube = dist_to_component(rel, false);
    return out;
}

void write_curves_csv(const std::vector<CurveFamilySample>& curves, const std::string& path) {
    CsvWriter csv({"kind", "t", "s", "g00", "g01", "g10", "g11"});
    for (const auto& c : curves) {
        for (size_t i = 0; i < c.frames.size(); ++i) {
            auto m = c.frames[i].raw();
            csv.row({curve_kind_name(c.kind), fmt_double(c.t), fmt_double(c.arc[i]),
                     fmt_double(m[0]), fmt_double(m[1]), fmt_double(m[2]), fmt_double(m[3])});
        }
    }
    csv.write(path);
}

// ---------------------------------------------------------------------------
// Product chart

Frame LocalProductCoords::base() const {
    Frame g = Frame::geodesic(flipped ? -tau : tau);
    return flipped ? g.flipped() : g;
}

namespace {
constexpr double kBranchTol = 1e-7;

/// Frame on the geodesic (xi_minus -> xi_plus) whose base point lies on the
/// circle |z| = exp(p), p = (log|xi_minus xi_plus|)/2, pointing at xi_plus.
Frame endpoint_frame(double xi_m, double xi_p) {
    double sk = xi_p > xi_m ? 1.0 : -1.0;
    double k = sk * std::sqrt(std::abs(xi_m / xi_p));
    double g00 = sk * (xi_p > 0 ? 1.0 : -1.0) * std::sqrt(std::abs(xi_m * xi_p));
    return Frame(g00, xi_m, k, 1.0);
}

Frame chart_frame_main(double s, double u, double tau) {
    if (u == 0.0) return Frame::geodesic(tau) * Frame::stable_horocycle(s);
    if (s == 0.0) return Frame::geodesic(tau) * Frame::unstable_horocycle(u);
    double xi_m = std::exp(tau) * s;
    double xi_p = std::exp(tau) / u;
    double p = tau + 0.5 * std::log(std::abs(s / u));
    return endpoint_frame(xi_m, xi_p) * Frame::geodesic(tau - p);
}

struct MainCoords {
    double s, u, tau;
};

MainCoords local_coords_main(const Frame& f) {
    double a = f.a(), b = f.b(), c = f.c(), d = f.d();
    if (a < 0) { a = -a; b = -b; c = -c; d = -d; }
    if (a <= 0.0 || std::abs(d) < 1e-14)
        throw std::domain_error("frame outside the product chart");

    double tau;
    if (std::abs(c) * std::abs(b) < kBranchTol * kBranchTol * a * std::abs(d)) {
        // Near-triangular: the diagonal carries e^{tau/2} directly.
        tau = std::log(a / std::abs(d));
    } else {
        double xi_p = a / c;
        double xi_m = b / d;
        double p = 0.5 * std::log(std::abs(xi_m * xi_p));
        Frame w = endpoint_frame(xi_m, xi_p).inverse() * f;
        tau = p + std::log(std::abs(w.a()) / std::abs(w.d()));
    }
    MainCoords out;
    out.tau = tau;
    out.s = std::exp(-tau) * (b / d);
    out.u = std::exp(tau) * (c / a);
    return out;
}

}  // namespace

Frame chart_frame(const LocalProductCoords& z) {
    Frame main = chart_frame_main(z.flipped ? z.u : z.s, z.flipped ? z.s : z.u,
                                  z.flipped ? -z.tau : z.tau);
    return z.flipped ? main.flipped() : main;
}

LocalProductCoords local_coords(const Frame& f, double eps) {
    double d_main = dist_to_component(f, false);
    double d_flip = dist_to_component(f, true);
    double dist = std::min(d_main, d_flip);
    if (dist > eps)
        throw std::domain_error("frame outside the chart: Sasaki distance to SN = " +
                                fmt_double(dist) + " > eps = " + fmt_double(eps));
    LocalProductCoords out;
    out.flipped = d_flip < d_main;
    Frame work = out.flipped ? f.flipped() : f;  // flip is an involution
    MainCoords mc = local_coords_main(work);
    if (out.flipped) {
        out.s = mc.u;
        out.u = mc.s;
        out.tau = -mc.tau;
    } else {
        out.s = mc.s;
        out.u = mc.u;
        out.tau = mc.tau;
    }
    if (std::abs(out.s) > eps + 1e-9 || std::abs(out.u) > eps + 1e-9)
        throw std::domain_error("frame outside the chart box: |s| or |u| exceeds eps");
    return out;
}

double product_flow_check(const LocalProductCoords& z, double t, double eps) {
    LocalProductCoords target = z;
    target.s = std::exp(-t) * z.s;
    target.u = std::exp(t) * z.u;
    target.tau = z.tau + t;
    if (std::abs(target.s) > eps || std::abs(target.u) > eps)
        throw std::domain_error("flow exits the chart before time t");
    Frame flowed = geodesic_flow_h2(chart_frame(z), t);
    return sasaki_distance(flowed, chart_frame(target));
}

}  // namespace anosov
