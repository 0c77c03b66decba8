#include "anosov/toral.hpp"

#include "anosov/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace anosov {

namespace {

using int128 = __int128;

long long checked_narrow(int128 v, const char* what) {
    if (v > int128(9223372036854775807LL) || v < -int128(9223372036854775807LL) - 1)
        throw std::overflow_error(std::string("integer overflow in ") + what);
    return static_cast<long long>(v);
}

/// Fraction-free Bareiss determinant over the integers.
int128 bareiss_det(Eigen::MatrixXi m) {
    const int n = static_cast<int>(m.rows());
    std::vector<std::vector<int128>> a(n, std::vector<int128>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = m(i, j);
    int128 prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[i][k] != 0) { piv = i; break; }
            if (piv < 0) return 0;
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

}  // namespace

ToralAutomorphism::ToralAutomorphism(Eigen::MatrixXi entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() < 1)
        throw std::invalid_argument("matrix must be square and non-empty");
    long long det = determinant();
    if (det != 1 && det != -1)
        throw std::invalid_argument("matrix is not unimodular: det = " + std::to_string(det));
}

long long ToralAutomorphism::determinant() const {
    return checked_narrow(bareiss_det(entries_), "determinant");
}

ToralAutomorphism ToralAutomorphism::inverse() const {
    const int n = dim();
    long long det = determinant();
    Eigen::MatrixXi adj(n, n);
    if (n == 1) {
        adj(0, 0) = 1;
    } else {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                Eigen::MatrixXi minor(n - 1, n - 1);
                for (int r = 0, rr = 0; r < n; ++r) {
                    if (r == i) continue;
                    for (int c = 0, cc = 0; c < n; ++c) {
                        if (c == j) continue;
                        minor(rr, cc++) = entries_(r, c);
                    }
                    ++rr;
                }
                long long cof = checked_narrow(bareiss_det(minor), "adjugate");
                if ((i + j) % 2) cof = -cof;
                adj(j, i) = static_cast<int>(cof);  // adjugate = transposed cofactors
            }
        }
    }
    if (det == -1) adj = -adj;
    return ToralAutomorphism(adj);
}

Eigen::MatrixXi ToralAutomorphism::power(long long k) const {
    const int n = dim();
    Eigen::MatrixXi base = k >= 0 ? entries_ : inverse().entries();
    unsigned long long e = k >= 0 ? static_cast<unsigned long long>(k)
                                  : static_cast<unsigned long long>(-k);
    Eigen::MatrixXi result = Eigen::MatrixXi::Identity(n, n);
    while (e) {
        if (e & 1) result = (result * base).eval();
        base = (base * base).eval();
        e >>= 1;
    }
    return result;
}

std::vector<long long> ToralAutomorphism::char_poly() const {
    // Faddeev-LeVerrier; coefficients of an integer matrix are integers, so
    // the double-precision recursion is exact for the sizes handled here.
    const int n = dim();
    Eigen::MatrixXd a = entries_.cast<double>();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    std::vector<double> c(n + 1, 0.0);
    c[n] = 1.0;
    for (int k = 1; k <= n; ++k) {
        m = (a * m + c[n - k + 1] * Eigen::MatrixXd::Identity(n, n)).eval();
        c[n - k] = -(a * m).trace() / k;
    }
    std::vector<long long> out(n + 1);
    for (int i = 0; i <= n; ++i) {
        double r = std::round(c[i]);
        if (std::abs(c[i] - r) > 1e-3)
            throw std::overflow_error("characteristic polynomial coefficient not integral");
        out[i] = static_cast<long long>(r);
    }
    return out;
}

std::vector<double> ToralAutomorphism::eigenvalue_moduli() const {
    const int n = dim();
    std::vector<long long> c = char_poly();
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -static_cast<double>(c[i]);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(comp, /*computeEigenvectors=*/false);
    std::vector<double> moduli(n);
    for (int i = 0; i < n; ++i) moduli[i] = std::abs(solver.eigenvalues()[i]);
    std::sort(moduli.begin(), moduli.end());
    return moduli;
}

bool is_hyperbolic(const ToralAutomorphism& a, std::vector<double>* moduli_out) {
    std::vector<double> moduli = a.eigenvalue_moduli();
    if (moduli_out) *moduli_out = moduli;
    for (double m : moduli)
        if (std::abs(m - 1.0) <= kTolEig) return false;
    return true;
}

std::pair<int, int> stable_unstable_dims(const ToralAutomorphism& a) {
    std::vector<double> moduli = a.eigenvalue_moduli();
    int ns = 0, nu = 0;
    for (double m : moduli) {
        if (std::abs(m - 1.0) <= kTolEig)
            throw std::domain_error("not hyperbolic: eigenvalue modulus " + fmt_double(m));
        (m < 1.0 ? ns : nu)++;
    }
    return {ns, nu};
}

bool check_gluing_conjugacy(const ToralAutomorphism& b, const ToralAutomorphism& c,
                            const ToralAutomorphism& d) {
    if (b.dim() != c.dim() || b.dim() != d.dim())
        throw std::invalid_argument("dimension mismatch in gluing conjugacy check");
    return (c.entries() * d.entries()) == (d.entries() * b.entries());
}

namespace {
Eigen::VectorXd mod1(const Eigen::VectorXd& v) {
    Eigen::VectorXd out(v.size());
    for (int i = 0; i < v.size(); ++i) {
        double f = v[i] - std::floor(v[i]);
        out[i] = (f >= 1.0) ? 0.0 : f;  // guard against floor rounding
    }
    return out;
}
}  // namespace

SuspensionPoint suspension_flow(const SuspensionPoint& p, double t, const ToralAutomorphism& a) {
    if (p.x.size() != a.dim()) throw std::invalid_argument("point dimension mismatch");
    double raw = p.s + t;
    double k = std::floor(raw);
    long long crossings = static_cast<long long>(k);
    SuspensionPoint out;
    out.s = raw - k;
    if (out.s >= 1.0) {  // raw barely below an integer
        out.s = 0.0;
        crossings += 1;
    }
    if (crossings == 0) {
        out.x = mod1(p.x);
    } else {
        Eigen::MatrixXd ak = a.power(crossings).cast<double>();
        out.x = mod1(ak * mod1(p.x));
    }
    return out;
}

double suspension_distance(const SuspensionPoint& p, const SuspensionPoint& q) {
    double d = 0.0;
    for (int i = 0; i < p.x.size(); ++i) {
        double a = std::abs(p.x[i] - q.x[i]);
        a = std::min(a, 1.0 - a);
        d = std::max(d, a);
    }
    double s = std::abs(p.s - q.s);
    s = std::min(s, 1.0 - s);
    return std::max(d, s);
}

EigenBasis eigen_adapted_basis(const ToralAutomorphism& a) {
    const int n = a.dim();
    Eigen::EigenSolver<Eigen::MatrixXd> solver(a.entries().cast<double>());
    EigenBasis out;
    out.basis.resize(n, n);
    out.moduli.resize(n);
    int col = 0;
    for (int i = 0; i < n && col < n; ++i) {
        std::complex<double> lam = solver.eigenvalues()[i];
        Eigen::VectorXcd v = solver.eigenvectors().col(i);
        if (std::abs(lam.imag()) < 1e-12) {
            out.basis.col(col) = v.real();
            if (out.basis.col(col).norm() < 1e-12) out.basis.col(col) = v.imag();
            out.basis.col(col).normalize();
            out.moduli[col] = std::abs(lam);
            ++col;
        } else if (lam.imag() > 0) {  // one (Re, Im) pair per conjugate pair
            out.basis.col(col) = v.real();
            out.basis.col(col + 1) = -v.imag();
            out.moduli[col] = std::abs(lam);
            out.moduli[col + 1] = std::abs(lam);
            col += 2;
        }
    }
    if (col != n) throw std::runtime_error("eigenbasis construction failed");
    out.basis_inv = out.basis.inverse();
    return out;
}

namespace {

/// Ratio ||DPhi^t v|| / ||v|| in the s-interpolated eigen-adapted norm, where
/// DPhi^t on the fiber over a point starting at s = 0 is B^floor(t).
struct RateSamples {
    std::vector<double> times;
    std::vector<double> log_ratio_adapted;
    std::vector<double> log_ratio_euclid;
};

RateSamples collect_rates(const ToralAutomorphism& b, const EigenBasis& eb,
                          const Eigen::VectorXd& v, double t_max, bool backward) {
    RateSamples out;
    Eigen::VectorXd coeff0 = eb.basis_inv * v;
    double n0_adapted = coeff0.norm();  // s = 0: weights are 1
    double n0_euclid = v.norm();
    const int steps = 40;
    for (int i = 1; i <= steps; ++i) {
        double t = t_max * i / steps;
        long long k = static_cast<long long>(std::floor(t));
        double frac = t - static_cast<double>(k);
        Eigen::MatrixXd bk = b.power(backward ? -k : k).cast<double>();
        Eigen::VectorXd w = bk * v;
        Eigen::VectorXd coeff = eb.basis_inv * w;
        double na = 0.0;
        for (int j = 0; j < coeff.size(); ++j) {
            double mod = eb.moduli[j];
            double weight = std::pow(backward ? 1.0 / mod : mod, frac);
            na += std::pow(weight * coeff[j], 2);
        }
        na = std::sqrt(na);
        out.times.push_back(t);
        out.log_ratio_adapted.push_back(std::log(na / n0_adapted));
        out.log_ratio_euclid.push_back(std::log(w.norm() / n0_euclid));
    }
    return out;
}

double fit_rate(const std::vector<double>& t, const std::vector<double>& logr) {
    double st = 0, sr = 0, stt = 0, str = 0;
    for (size_t i = 0; i < t.size(); ++i) {
        st += t[i];
        sr += logr[i];
        stt += t[i] * t[i];
        str += t[i] * logr[i];
    }
    double n = static_cast<double>(t.size());
    return (n * str - st * sr) / (n * stt - st * st);
}

double fit_constant(const std::vector<double>& t, const std::vector<double>& logr,
                    double log_lambda) {
    double worst = -1e300;
    for (size_t i = 0; i < t.size(); ++i)
        worst = std::max(worst, logr[i] - log_lambda * t[i]);
    return std::exp(worst);
}

}  // namespace

SplittingReport fiberwise_rate_check(const ToralAutomorphism& b, const ToralAutomorphism& a,
                                     double t_max) {
    if (!is_hyperbolic(b) || !is_hyperbolic(a))
        throw std::domain_error("fiberwise rate check requires hyperbolic B and A");
    if (t_max <= 0) throw std::invalid_argument("t_max must be positive");

    SplittingReport rep;
    auto [ns, nu] = stable_unstable_dims(b);
    rep.dim_stable = ns;
    rep.dim_unstable = nu;

    EigenBasis eb = eigen_adapted_basis(b);
    const int n = b.dim();

    // Sample vectors: each stable basis direction plus their sum.
    auto sample_set = [&](bool stable) {
        std::vector<Eigen::VectorXd> vs;
        Eigen::VectorXd sum = Eigen::VectorXd::Zero(n);
        for (int j = 0; j < n; ++j) {
            bool is_stable = eb.moduli[j] < 1.0;
            if (is_stable != stable) continue;
            Eigen::VectorXd v = eb.basis.col(j);
            vs.push_back(v);
            sum += v;
        }
        if (vs.size() > 1) vs.push_back(sum.normalized());
        return vs;
    };

    // Stable family under forward time.
    RateSamples all;
    for (const auto& v : sample_set(true)) {
        RateSamples r = collect_rates(b, eb, v, t_max, /*backward=*/false);
        all.times.insert(all.times.end(), r.times.begin(), r.times.end());
        all.log_ratio_adapted.insert(all.log_ratio_adapted.end(), r.log_ratio_adapted.begin(),
                                     r.log_ratio_adapted.end());
        all.log_ratio_euclid.insert(all.log_ratio_euclid.end(), r.log_ratio_euclid.begin(),
                                    r.log_ratio_euclid.end());
    }
    double log_lambda = fit_rate(all.times, all.log_ratio_adapted);
    rep.contraction_rate = std::exp(log_lambda);
    rep.constant_adapted = fit_constant(all.times, all.log_ratio_adapted, log_lambda);
    rep.constant_euclidean = fit_constant(all.times, all.log_ratio_euclid, log_lambda);

    // Unstable family under backward time contracts at 1/expansion_rate.
    RateSamples uns;
    for (const auto& v : sample_set(false)) {
        RateSamples r = collect_rates(b, eb, v, t_max, /*backward=*/true);
        uns.times.insert(uns.times.end(), r.times.begin(), r.times.end());
        uns.log_ratio_adapted.insert(uns.log_ratio_adapted.end(), r.log_ratio_adapted.begin(),
                                     r.log_ratio_adapted.end());
    }
    double log_mu = fit_rate(uns.times, uns.log_ratio_adapted);
    rep.expansion_rate = std::exp(-log_mu);

    rep.pass = rep.contraction_rate < 1.0 && rep.expansion_rate > 1.0;
    if (!rep.pass) {
        rep.detail = "rate fit failed: lambda = " + fmt_double(rep.contraction_rate) +
                     ", mu = " + fmt_double(rep.expansion_rate);
    }
    return rep;
}

ToralAutomorphism section_return_map(const ToralAutomorphism& a, const ToralAutomorphism& b) {
    if (!is_hyperbolic(a) || !is_hyperbolic(b))
        throw std::domain_error("section return map requires hyperbolic factors");
    const int db = b.dim(), da = a.dim();
    Eigen::MatrixXi block = Eigen::MatrixXi::Zero(db + da, db + da);
    block.topLeftCorner(db, db) = b.entries();
    block.bottomRightCorner(da, da) = a.entries();
    return ToralAutomorphism(block);
}

ToralAutomorphism read_matrix_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open matrix file " + path);
    int d = 0;
    if (!(f >> d) || d < 1) throw std::runtime_error("bad matrix header in " + path);
    Eigen::MatrixXi m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (!(f >> m(i, j))) throw std::runtime_error("truncated matrix file " + path);
    return ToralAutomorphism(m);
}

void write_matrix_file(const ToralAutomorphism& a, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    f << a.dim() << '\n';
    for (int i = 0; i < a.dim(); ++i) {
        for (int j = 0; j < a.dim(); ++j) f << a.entries()(i, j) << (j + 1 < a.dim() ? ' ' : '\n');
    }
}

}  // namespace anosov
