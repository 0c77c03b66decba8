#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "anosov/sampling.hpp"
#include "anosov/toral.hpp"

#include <cmath>
#include <filesystem>

using namespace anosov;

namespace {

Eigen::MatrixXi mat2(int a, int b, int c, int d) {
    Eigen::MatrixXi m(2, 2);
    m << a, b, c, d;
    return m;
}

ToralAutomorphism cat() { return ToralAutomorphism(mat2(2, 1, 1, 1)); }

ToralAutomorphism block_cat_cat() {
    Eigen::MatrixXi m = Eigen::MatrixXi::Zero(4, 4);
    m.topLeftCorner(2, 2) = mat2(2, 1, 1, 1);
    m.bottomRightCorner(2, 2) = mat2(2, 1, 1, 1);
    return ToralAutomorphism(m);
}

}  // namespace

TEST_CASE("hyperbolicity with quadratic-formula oracle") {
    // Oracle: roots of t^2 - 3t + 1 by the quadratic formula.
    double lam_u = (3.0 + std::sqrt(5.0)) / 2.0;
    double lam_s = (3.0 - std::sqrt(5.0)) / 2.0;

    std::vector<double> moduli;
    CHECK(is_hyperbolic(cat(), &moduli));
    REQUIRE(moduli.size() == 2);
    CHECK(moduli[0] == doctest::Approx(lam_s).epsilon(1e-12));
    CHECK(moduli[1] == doctest::Approx(lam_u).epsilon(1e-12));

    CHECK_FALSE(is_hyperbolic(ToralAutomorphism(mat2(1, 0, 0, 1))));
    CHECK_FALSE(is_hyperbolic(ToralAutomorphism(mat2(0, -1, 1, 0))));
}

TEST_CASE("non-unimodular matrices are rejected with the determinant") {
    try {
        ToralAutomorphism bad(mat2(2, 0, 0, 1));
        FAIL("expected rejection");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("2") != std::string::npos);
    }
}

TEST_CASE("stable/unstable dimensions") {
    auto [s1, u1] = stable_unstable_dims(cat());
    CHECK(s1 == 1);
    CHECK(u1 == 1);

    auto [s2, u2] = stable_unstable_dims(block_cat_cat());
    CHECK(s2 == 2);
    CHECK(u2 == 2);

    CHECK_THROWS_AS(stable_unstable_dims(ToralAutomorphism(mat2(1, 1, 0, 1))),
                    std::domain_error);
}

TEST_CASE("spectral inversion: dims of the inverse are swapped") {
    std::vector<ToralAutomorphism> corpus = {
        cat(),
        ToralAutomorphism(mat2(1, 1, 1, 2)),
        ToralAutomorphism(mat2(3, 2, 1, 1)),
        ToralAutomorphism(mat2(5, 2, 2, 1)),
        block_cat_cat(),
    };
    for (const auto& a : corpus) {
        auto [s, u] = stable_unstable_dims(a);
        auto [si, ui] = stable_unstable_dims(a.inverse());
        CHECK(si == u);
        CHECK(ui == s);
        CHECK((a.entries() * a.inverse().entries()).isIdentity());
    }
}

TEST_CASE("gluing conjugacy condition C D = D B") {
    ToralAutomorphism b = cat();
    ToralAutomorphism id(mat2(1, 0, 0, 1));
    CHECK(check_gluing_conjugacy(b, b, id));

    ToralAutomorphism b2(Eigen::MatrixXi(b.entries() * b.entries()));
    CHECK_FALSE(check_gluing_conjugacy(b, b2, id));

    // Oracle: C = D B D^{-1} by explicit integer products.
    ToralAutomorphism d(mat2(1, 1, 0, 1));
    Eigen::MatrixXi c_entries = d.entries() * b.entries() * d.inverse().entries();
    ToralAutomorphism c{c_entries};
    CHECK(check_gluing_conjugacy(b, c, d));

    // Conjugacy invariance: matching characteristic polynomials.
    CHECK(b.char_poly() == c.char_poly());

    ToralAutomorphism small(Eigen::MatrixXi::Identity(3, 3));
    CHECK_THROWS_AS(check_gluing_conjugacy(b, b, small), std::invalid_argument);
}

TEST_CASE("suspension flow examples") {
    ToralAutomorphism a = cat();
    SuspensionPoint p;
    p.x = Eigen::Vector2d(0.3, 0.7);
    p.s = 0.2;

    SuspensionPoint q = suspension_flow(p, 0.5, a);
    CHECK(q.x[0] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(q.x[1] == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(q.s == doctest::Approx(0.7).epsilon(1e-15));

    // One full unit applies the automorphism once.
    SuspensionPoint p0;
    p0.x = Eigen::Vector2d(0.3, 0.7);
    p0.s = 0.0;
    SuspensionPoint r = suspension_flow(p0, 1.0, a);
    Eigen::Vector2d ax(2 * 0.3 + 0.7, 0.3 + 0.7);
    CHECK(r.s == doctest::Approx(0.0));
    CHECK(r.x[0] == doctest::Approx(ax[0] - std::floor(ax[0])).epsilon(1e-12));
    CHECK(r.x[1] == doctest::Approx(ax[1] - std::floor(ax[1])).epsilon(1e-12));

    // Time reversal without a crossing.
    SuspensionPoint h;
    h.x = Eigen::Vector2d(0.25, 0.5);
    h.s = 0.5;
    SuspensionPoint back = suspension_flow(h, -0.5, a);
    CHECK(back.s == doctest::Approx(0.0));
    CHECK(back.x[0] == doctest::Approx(0.25));
}

TEST_CASE("suspension flow satisfies the one-parameter group law") {
    ToralAutomorphism a = cat();
    SplitMix rng(20240501ULL);
    for (int i = 0; i < 1000; ++i) {
        SuspensionPoint p;
        p.x = Eigen::Vector2d(rng.next_double(), rng.next_double());
        p.s = rng.next_double();
        double t1 = rng.uniform(-3.0, 3.0);
        double t2 = rng.uniform(-3.0, 3.0);
        SuspensionPoint one = suspension_flow(suspension_flow(p, t1, a), t2, a);
        SuspensionPoint two = suspension_flow(p, t1 + t2, a);
        CHECK(suspension_distance(one, two) < kTolFlow);
    }
}

TEST_CASE("fiberwise rate check on the linear model") {
    double lam_s = (3.0 - std::sqrt(5.0)) / 2.0;
    SplittingReport rep = fiberwise_rate_check(cat(), cat(), 5.0);
    CHECK(rep.pass);
    CHECK(rep.dim_stable == 1);
    CHECK(rep.dim_unstable == 1);
    // Exact eigen-rates of the linear model: lambda per unit time, C = 1 in
    // the eigen-adapted norm.
    CHECK(rep.contraction_rate == doctest::Approx(lam_s).epsilon(1e-9));
    CHECK(rep.constant_adapted == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep.expansion_rate == doctest::Approx(1.0 / lam_s).epsilon(1e-9));
    CHECK(rep.constant_euclidean >= 1.0 - 1e-12);
}

TEST_CASE("forward iteration of an unstable vector grows") {
    // Oracle: forward iteration of the unstable eigenvector.
    ToralAutomorphism b = cat();
    EigenBasis eb = eigen_adapted_basis(b);
    int ucol = eb.moduli[0] > 1.0 ? 0 : 1;
    Eigen::VectorXd v = eb.basis.col(ucol);
    double n0 = v.norm();
    Eigen::VectorXd w = b.power(5).cast<double>() * v;
    CHECK(w.norm() > 50.0 * n0);  // (2.618)^5 ~ 122
}

TEST_CASE("fiberwise splitting invariance: V^s is preserved exactly") {
    ToralAutomorphism b = block_cat_cat();
    EigenBasis eb = eigen_adapted_basis(b);
    Eigen::MatrixXd bk = b.power(3).cast<double>();
    for (int j = 0; j < 4; ++j) {
        if (eb.moduli[j] >= 1.0) continue;
        Eigen::VectorXd image_coeff = eb.basis_inv * (bk * eb.basis.col(j));
        for (int k = 0; k < 4; ++k) {
            if (eb.moduli[k] > 1.0) CHECK(std::abs(image_coeff[k]) < 1e-12);
        }
    }
}

TEST_CASE("section return map is the block automorphism") {
    ToralAutomorphism a = cat(), b = cat();
    ToralAutomorphism ret = section_return_map(a, b);
    CHECK(ret.entries() == block_cat_cat().entries());

    // Oracle: one-period flow composition on the product suspension.
    SuspensionPoint p;
    p.x = Eigen::Vector4d(0.1, 0.2, 0.3, 0.4);
    p.s = 0.0;
    SuspensionPoint via_flow = suspension_flow(p, 1.0, ret);
    Eigen::VectorXd direct = ret.entries().cast<double>() * p.x;
    for (int i = 0; i < 4; ++i) {
        double want = direct[i] - std::floor(direct[i]);
        CHECK(via_flow.x[i] == doctest::Approx(want).epsilon(1e-12));
    }

    // Return map applied twice equals the doubled-period return.
    Eigen::MatrixXi twice = ret.entries() * ret.entries();
    CHECK(twice == ret.power(2));

    CHECK_THROWS_AS(section_return_map(a, ToralAutomorphism(mat2(1, 0, 0, 1))),
                    std::domain_error);
}

TEST_CASE("matrix file round trip") {
    namespace fs = std::filesystem;
    fs::path tmp = fs::temp_directory_path() / "anosov_cat.mat";
    write_matrix_file(cat(), tmp.string());
    ToralAutomorphism back = read_matrix_file(tmp.string());
    CHECK(back.entries() == cat().entries());
    fs::remove(tmp);
}
