#include "anosov/obstruction.hpp"

#include "anosov/report.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace anosov {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPi = std::numbers::pi;
}  // namespace

double CircleMapLift::operator()(double x) const {
    double d = base;
    for (size_t k = 0; k < fourier.size(); ++k) {
        double w = kTwoPi * static_cast<double>(k + 1) * x;
        d += fourier[k].first * std::sin(w) + fourier[k].second * std::cos(w);
    }
    return x + d;
}

double CircleMapLift::derivative(double x) const {
    double d = 1.0;
    for (size_t k = 0; k < fourier.size(); ++k) {
        double freq = kTwoPi * static_cast<double>(k + 1);
        double w = freq * x;
        d += freq * (fourier[k].first * std::cos(w) - fourier[k].second * std::sin(w));
    }
    return d;
}

double CircleMapLift::monotonicity_margin(int samples) const {
    double worst = 1e300;
    for (int i = 0; i < samples; ++i)
        worst = std::min(worst, derivative(static_cast<double>(i) / samples));
    return worst;
}

RotationNumber rotation_number(const CircleMapLift& f, long long n, double x0) {
    if (n < 1) throw std::invalid_argument("iteration count must be >= 1");
    if (f.monotonicity_margin() <= 0.0)
        throw std::domain_error("rotation number undefined: lift is not monotone");
    double x = x0;
    for (long long i = 0; i < n; ++i) x = f(x);
    return {(x - x0) / static_cast<double>(n), 1.0 / static_cast<double>(n)};
}

// ---------------------------------------------------------------------------
// Line fields and leaf integration

namespace {
/// Representative of b in the class b + pi Z nearest to a.
double unwrap_pi(double a, double b) {
    double d = b - a;
    d -= kPi * std::round(d / kPi);
    return a + d;
}
}  // namespace

double LineField::angle_at(double x, double y) const {
    double fx = (x - std::floor(x)) * n;
    double fy = (y - std::floor(y)) * m;
    int i0 = static_cast<int>(fx) % n;
    int j0 = static_cast<int>(fy) % m;
    int i1 = (i0 + 1) % n;
    int j1 = (j0 + 1) % m;
    double u = fx - std::floor(fx);
    double v = fy - std::floor(fy);
    double a00 = angles[static_cast<size_t>(i0) * m + j0];
    double a01 = unwrap_pi(a00, angles[static_cast<size_t>(i0) * m + j1]);
    double a10 = unwrap_pi(a00, angles[static_cast<size_t>(i1) * m + j0]);
    double a11 = unwrap_pi(a00, angles[static_cast<size_t>(i1) * m + j1]);
    return (1 - u) * ((1 - v) * a00 + v * a01) + u * ((1 - v) * a10 + v * a11);
}

double LineField::max_neighbour_jump() const {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            double a = angles[static_cast<size_t>(i) * m + j];
            double bx = angles[static_cast<size_t>((i + 1) % n) * m + j];
            double by = angles[static_cast<size_t>(i) * m + (j + 1) % m];
            worst = std::max(worst, std::abs(unwrap_pi(a, bx) - a));
            worst = std::max(worst, std::abs(unwrap_pi(a, by) - a));
        }
    }
    return worst;
}

LineField read_line_field(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open line field file " + path);
    LineField lf;
    if (!(f >> lf.n >> lf.m) || lf.n < 2 || lf.m < 2)
        throw std::runtime_error("bad line field header in " + path);
    lf.angles.resize(static_cast<size_t>(lf.n) * lf.m);
    for (auto& a : lf.angles)
        if (!(f >> a)) throw std::runtime_error("truncated line field file " + path);
    return lf;
}

void write_line_field(const LineField& lf, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    f << lf.n << ' ' << lf.m << '\n';
    for (size_t i = 0; i < lf.angles.size(); ++i)
        f << fmt_double(lf.angles[i]) << ((i + 1) % lf.m == 0 ? '\n' : ' ');
}

Slope linear_slope_of_foliation(const LineField& field, double arc_length, double step) {
    if (field.max_neighbour_jump() >= kPi / 4.0)
        throw std::domain_error("line field is not continuous at the declared resolution");
    if (arc_length <= 0) throw std::invalid_argument("integration length must be positive");
    if (step <= 0) step = 0.25 / std::max(field.n, field.m);

    // Unit-speed leaf through the origin; the direction sign follows the
    // previous step so the line field integrates to a continuous curve.
    double px = 0.0, py = 0.0;
    double a0 = field.angle_at(0.0, 0.0);
    double dirx = std::cos(a0), diry = std::sin(a0);
    auto dir_at = [&](double x, double y, double rx, double ry, double* ox, double* oy) {
        double a = field.angle_at(x, y);
        double cx = std::cos(a), cy = std::sin(a);
        if (cx * rx + cy * ry < 0) { cx = -cx; cy = -cy; }
        *ox = cx;
        *oy = cy;
    };

    long long steps = static_cast<long long>(std::ceil(arc_length / step));
    double h = arc_length / static_cast<double>(steps);
    for (long long i = 0; i < steps; ++i) {
        double k1x, k1y, k2x, k2y, k3x, k3y, k4x, k4y;
        dir_at(px, py, dirx, diry, &k1x, &k1y);
        dir_at(px + 0.5 * h * k1x, py + 0.5 * h * k1y, k1x, k1y, &k2x, &k2y);
        dir_at(px + 0.5 * h * k2x, py + 0.5 * h * k2y, k2x, k2y, &k3x, &k3y);
        dir_at(px + h * k3x, py + h * k3y, k3x, k3y, &k4x, &k4y);
        px += h * (k1x + 2 * k2x + 2 * k3x + k4x) / 6.0;
        py += h * (k1y + 2 * k2y + 2 * k3y + k4y) / 6.0;
        dirx = k4x;
        diry = k4y;
    }
    double norm = std::hypot(px, py);
    if (std::abs(px) < 1e-9 * std::max(1.0, norm)) return Slope::vertical_marker();
    return Slope::of(py / px);
}

// ---------------------------------------------------------------------------
// Slope paths and the rational crossing

Slope SlopePath::at(double s) const {
    if (s <= t.front()) return sigma.front();
    if (s >= t.back()) return sigma.back();
    size_t hi = 1;
    while (t[hi] < s) ++hi;
    size_t lo = hi - 1;
    if (sigma[lo].vertical || sigma[hi].vertical)
        throw std::domain_error("slope path interpolation across the vertical marker");
    double w = (s - t[lo]) / (t[hi] - t[lo]);
    return Slope::of((1 - w) * sigma[lo].value + w * sigma[hi].value);
}

void SlopePath::validate() const {
    if (t.size() != sigma.size() || t.size() < 2)
        throw std::invalid_argument("slope path needs matching sample tables");
    if (std::abs(t.front()) > 1e-15 || std::abs(t.back() - 1.0) > 1e-15)
        throw std::invalid_argument("slope path must be parameterized over [0,1]");
    for (size_t i = 1; i < t.size(); ++i) {
        if (t[i] <= t[i - 1]) throw std::invalid_argument("slope path times must increase");
        if (!sigma[i].vertical && !sigma[i - 1].vertical &&
            std::abs(sigma[i].value - sigma[i - 1].value) >= slope_step_max)
            throw std::invalid_argument("continuity witness violated between samples");
    }
}

SlopePath SlopePath::linear(double sigma0, double sigma1, int samples) {
    SlopePath p;
    p.t.resize(samples);
    p.sigma.resize(samples);
    for (int i = 0; i < samples; ++i) {
        double w = static_cast<double>(i) / (samples - 1);
        p.t[i] = w;
        p.sigma[i] = Slope::of((1 - w) * sigma0 + w * sigma1);
    }
    p.slope_step_max = std::abs(sigma1 - sigma0) / (samples - 1) * 4.0 + 1e-9;
    return p;
}

std::pair<long long, long long> simplest_rational_between(double a, double b) {
    if (!(a < b)) std::swap(a, b);
    if (!(a < b)) throw std::invalid_argument("empty interval");

    long long k_low = static_cast<long long>(std::floor(a)) + 1;
    long long k_high = static_cast<long long>(std::ceil(b)) - 1;
    if (std::floor(a) == a) k_low = static_cast<long long>(a) + 1;
    if (std::ceil(b) == b) k_high = static_cast<long long>(b) - 1;
    if (k_low <= k_high) {
        if (k_low <= 0 && 0 <= k_high) return {0, 1};
        return {k_low > 0 ? k_low : k_high, 1};
    }

    // Both endpoints in (n, n+1): recurse on the reciprocal of the fractional
    // parts (Stern-Brocot / continued-fraction descent).
    long long n = static_cast<long long>(std::floor(a));
    auto [p, q] = simplest_rational_between(1.0 / (b - static_cast<double>(n)),
                                            1.0 / (a - static_cast<double>(n)));
    return {n * p + q, p};
}

bool near_rational(double x, long long q_max, double tol) {
    // The tolerance is machine-scale so only values that ARE a short rational
    // (up to representation error) get flagged; close irrational approximants
    // such as high Fibonacci ratios must pass.
    double scale = tol * std::max(1.0, std::abs(x));
    if (std::abs(x - std::round(x)) < scale) return true;
    // Continued-fraction convergents p_k/q_k.
    double y = x;
    long long p0 = 1, q0 = 0;
    long long p1 = static_cast<long long>(std::floor(y)), q1 = 1;
    for (int it = 0; it < 64; ++it) {
        double frac = y - std::floor(y);
        if (frac < 1e-16) break;
        y = 1.0 / frac;
        long long a = static_cast<long long>(std::floor(y));
        long long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > q_max || q2 < 0) break;
        if (std::abs(x - static_cast<double>(p2) / static_cast<double>(q2)) < scale) return true;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    }
    return false;
}

RationalCrossing find_rational_crossing(const SlopePath& path, double tol) {
    path.validate();
    Slope s0 = path.sigma.front(), s1 = path.sigma.back();
    if (s0.vertical || s1.vertical)
        throw std::invalid_argument("endpoint slopes must be finite");
    if (std::abs(s0.value - s1.value) < 1e-15)
        throw std::invalid_argument("endpoint slopes must differ");
    if (near_rational(s0.value, kIrrationalityQMax) || near_rational(s1.value, kIrrationalityQMax))
        throw std::domain_error("endpoint slope failed the irrationality certification");

    auto [p, q] = simplest_rational_between(s0.value, s1.value);
    double target = static_cast<double>(p) / static_cast<double>(q);

    // Bracket on the sample table, then bisect the interpolated path.
    size_t brk = path.t.size();
    for (size_t i = 0; i + 1 < path.t.size(); ++i) {
        double f0 = path.sigma[i].value - target;
        double f1 = path.sigma[i + 1].value - target;
        if (f0 == 0.0) return {path.t[i], p, q};
        if (f0 * f1 <= 0.0) { brk = i; break; }
    }
    if (brk == path.t.size())
        throw std::domain_error("path samples never bracket the rational crossing");

    double lo = path.t[brk], hi = path.t[brk + 1];
    double flo = path.at(lo).value - target;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = path.at(mid).value - target;
        if (std::abs(fm) < tol) return {mid, p, q};
        if ((fm < 0) == (flo < 0)) { lo = mid; flo = fm; }
        else hi = mid;
    }
    double t0 = 0.5 * (lo + hi);
    if (std::abs(path.at(t0).value - target) >= tol)
        throw std::runtime_error("bisection failed to reach the requested tolerance");
    return {t0, p, q};
}

double circle_leaf_contradiction(double len0, double rate, double systole) {
    if (len0 <= 0 || systole <= 0) throw std::invalid_argument("lengths must be positive");
    if (!(rate > 0 && rate < 1))
        throw std::domain_error("no contraction: rate must lie in (0,1)");
    if (len0 <= systole) return 0.0;
    return std::log(len0 / systole) / std::log(1.0 / rate);
}

// ---------------------------------------------------------------------------
// Theorem-level verdicts

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::impossible_parity: return "impossible_parity";
        case Verdict::impossible_dims: return "impossible_dims";
        case Verdict::impossible_d2: return "impossible_d2";
        case Verdict::not_obstructed: return "not_obstructed";
    }
    return "unknown";
}

std::pair<Slope, Slope> eigen_slopes_2d(const ToralAutomorphism& a) {
    if (a.dim() != 2) throw std::invalid_argument("eigen slopes need a 2x2 automorphism");
    EigenBasis eb = eigen_adapted_basis(a);
    auto slope_of = [](const Eigen::VectorXd& v) {
        if (std::abs(v[0]) < 1e-12 * v.norm()) return Slope::vertical_marker();
        return Slope::of(v[1] / v[0]);
    };
    int u = eb.moduli[0] > 1.0 ? 0 : 1;
    return {slope_of(eb.basis.col(u)), slope_of(eb.basis.col(1 - u))};
}

ObstructionVerdict fiberwise_obstruction_report(const ToralAutomorphism& a,
                                                bool base_has_inverse_orbit_pair) {
    if (!is_hyperbolic(a)) throw std::domain_error("monodromy must be hyperbolic");

    ObstructionVerdict out;
    auto [ns, nu] = stable_unstable_dims(a);
    out.dim_stable = ns;
    out.dim_unstable = nu;

    if (!base_has_inverse_orbit_pair) {
        out.verdict = Verdict::not_obstructed;
        out.note = "hypothesis unmet: no orientation-reversed periodic orbit pair";
        return out;
    }
    if (a.dim() % 2 == 1) {
        out.verdict = Verdict::impossible_parity;
        out.note = "fiber dimension is odd";
        return out;
    }
    if (ns != nu) {
        out.verdict = Verdict::impossible_dims;
        out.note = "stable and unstable dimensions differ";
        return out;
    }
    if (a.dim() == 2) {
        out.verdict = Verdict::impossible_d2;
        auto [mu, ms] = eigen_slopes_2d(a);
        SlopePath path = SlopePath::linear(mu.value, ms.value);
        out.witness = find_rational_crossing(path, 1e-12);
        out.note =
            "rational crossing on the eigen-slope interpolation path; a circle leaf "
            "would contract below any systole (contractible loops are excluded by "
            "uniform continuity of the unstable distribution)";
        return out;
    }
    out.verdict = Verdict::not_obstructed;
    out.note = "even fiber dimension >= 4 with matching stable/unstable dimensions";
    return out;
}

}  // namespace anosov
