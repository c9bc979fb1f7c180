#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "touchtell/rng.hpp"
#include "touchtell/stats.hpp"
#include "support/stat_oracles.hpp"

using namespace touchtell;

TEST_CASE("zscore: hand case with population std") {
    Matrix m(3, 1);
    m(0, 0) = 1;
    m(1, 0) = 2;
    m(2, 0) = 3;
    const ZscoreModel z = zscore_fit(m);
    const Matrix out = zscore_apply(z, m);
    CHECK(out(0, 0) == doctest::Approx(-1.224744871).epsilon(1e-8));
    CHECK(out(1, 0) == doctest::Approx(0.0).scale(1.0));
    CHECK(out(2, 0) == doctest::Approx(1.224744871).epsilon(1e-8));
}

TEST_CASE("zscore: constant column maps to zero with a flag") {
    Matrix m(4, 2);
    for (int i = 0; i < 4; ++i) {
        m(i, 0) = 7.0;
        m(i, 1) = i;
    }
    const ZscoreModel z = zscore_fit(m);
    CHECK(z.zero_variance[0]);
    CHECK_FALSE(z.zero_variance[1]);
    CHECK(z.any_zero_variance());
    const Matrix out = zscore_apply(z, m);
    for (int i = 0; i < 4; ++i) CHECK(out(i, 0) == 0.0);
}

TEST_CASE("zscore: fit-then-apply columns have near-zero mean and unit std") {
    Rng rng(1);
    Matrix m(200, 5);
    for (auto& v : m.data) v = rng.normal(3.0, 10.0);
    const Matrix out = zscore_apply(zscore_fit(m), m);
    for (std::size_t c = 0; c < 5; ++c) {
        double mean = 0.0;
        for (std::size_t r = 0; r < 200; ++r) mean += out(r, c);
        mean /= 200;
        CHECK(std::abs(mean) < 1e-9);
        double ss = 0.0;
        for (std::size_t r = 0; r < 200; ++r) ss += (out(r, c) - mean) * (out(r, c) - mean);
        CHECK(std::sqrt(ss / 200) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("zscore: column mismatch on apply is a shape error") {
    Matrix m(3, 2, 1.0);
    m(0, 0) = 0.0;
    m(1, 1) = 2.0;
    const ZscoreModel z = zscore_fit(m);
    Matrix wrong(3, 3, 0.0);
    CHECK_THROWS_AS(zscore_apply(z, wrong), Error);
}

TEST_CASE("pca: axis-aligned data") {
    Rng rng(2);
    Matrix m(100, 3, 0.0);
    for (std::size_t r = 0; r < 100; ++r) m(r, 0) = rng.normal(0.0, 2.0);
    const PcaModel pca = pca_fit(m);
    CHECK(std::abs(pca.loadings(0, 0)) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(pca.loadings(0, 0) > 0.0);  // sign rule: biggest entry positive
    // first eigenvalue equals the population variance of column 0
    double mean = 0.0;
    for (std::size_t r = 0; r < 100; ++r) mean += m(r, 0);
    mean /= 100;
    double var = 0.0;
    for (std::size_t r = 0; r < 100; ++r) var += (m(r, 0) - mean) * (m(r, 0) - mean);
    var /= 100;
    CHECK(pca.eigenvalues[0] == doctest::Approx(var).epsilon(1e-9));
    CHECK(pca.retained == 1);
}

TEST_CASE("pca: eigenvalue sum equals total variance and scores decorrelate") {
    Rng rng(3);
    Matrix m(150, 6);
    for (std::size_t r = 0; r < 150; ++r) {
        const double shared = rng.normal();
        for (std::size_t c = 0; c < 6; ++c) m(r, c) = shared * (1.0 + 0.3 * c) + rng.normal();
    }
    const ZscoreModel z = zscore_fit(m);
    const Matrix zs = zscore_apply(z, m);
    const PcaModel pca = pca_fit(zs);

    double total = 0.0;
    for (std::size_t c = 0; c < 6; ++c) {
        double mean = 0.0;
        for (std::size_t r = 0; r < 150; ++r) mean += zs(r, c);
        mean /= 150;
        for (std::size_t r = 0; r < 150; ++r) total += (zs(r, c) - mean) * (zs(r, c) - mean);
    }
    total /= 150;
    double sum = 0.0;
    for (double ev : pca.eigenvalues) sum += ev;
    CHECK(sum == doctest::Approx(total).epsilon(1e-9));

    // eigenvalues descending and loadings orthonormal
    for (std::size_t i = 1; i < pca.eigenvalues.size(); ++i)
        CHECK(pca.eigenvalues[i] <= pca.eigenvalues[i - 1] + 1e-12);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) {
            double dot = 0.0;
            for (std::size_t c = 0; c < 6; ++c) dot += pca.loadings(i, c) * pca.loadings(j, c);
            CHECK(dot == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-8).scale(1.0));
        }

    const Matrix scores = pca_transform(pca, zs);
    // score covariance is diagonal with the eigenvalues on the diagonal
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) {
            double mi = 0.0, mj = 0.0;
            for (std::size_t r = 0; r < 150; ++r) {
                mi += scores(r, i);
                mj += scores(r, j);
            }
            mi /= 150;
            mj /= 150;
            double cov = 0.0;
            for (std::size_t r = 0; r < 150; ++r)
                cov += (scores(r, i) - mi) * (scores(r, j) - mj);
            cov /= 150;
            if (i == j)
                CHECK(cov == doctest::Approx(pca.eigenvalues[i]).epsilon(1e-8).scale(1.0));
            else
                CHECK(std::abs(cov) < 1e-8);
        }
}

TEST_CASE("pca: non-finite input is a domain error") {
    Matrix m(3, 2, 0.0);
    m(1, 1) = std::nan("");
    CHECK_THROWS_AS(pca_fit(m), Error);
}

TEST_CASE("icc: rater offsets give exactly 1") {
    Matrix m(3, 2);
    m(0, 0) = 1;
    m(0, 1) = 2;
    m(1, 0) = 2;
    m(1, 1) = 3;
    m(2, 0) = 3;
    m(2, 1) = 4;
    const IccResult r = icc_consistency(m);
    CHECK(r.icc == 1.0);
    CHECK(std::isinf(r.f));
    CHECK(r.p == 0.0);
}

TEST_CASE("icc: matches the two-way ANOVA oracle on 100 random matrices") {
    Rng rng(20240816);
    for (int k = 0; k < 100; ++k) {
        const int n = 3 + static_cast<int>(rng.uniform_index(8));
        const int kk = 2 + static_cast<int>(rng.uniform_index(7));
        Matrix m(n, kk);
        for (auto& v : m.data) v = rng.normal(0.0, 2.0);
        const IccResult got = icc_consistency(m);
        const oracle::TwoWayAnova want = oracle::two_way_anova(m);
        REQUIRE(got.icc == doctest::Approx(want.icc_c1).epsilon(1e-9));
        REQUIRE(got.ms_rows == doctest::Approx(want.ms_rows).epsilon(1e-9));
        REQUIRE(got.ms_error == doctest::Approx(want.ms_error).epsilon(1e-9).scale(1.0));
        REQUIRE(got.f == doctest::Approx(want.f).epsilon(1e-9));
        REQUIRE(got.p >= 0.0);
        REQUIRE(got.p <= 1.0);
    }
}

TEST_CASE("icc: null Monte-Carlo mean is near zero") {
    Rng rng(77);
    double sum = 0.0;
    const int reps = 1000;
    for (int k = 0; k < reps; ++k) {
        Matrix m(10, 8);
        for (auto& v : m.data) v = rng.normal();
        sum += icc_consistency(m).icc;
    }
    CHECK(std::abs(sum / reps) < 0.05);
}

TEST_CASE("icc: affine invariance and rater-offset invariance") {
    Rng rng(11);
    Matrix m(6, 5);
    for (auto& v : m.data) v = rng.normal();
    const double base = icc_consistency(m).icc;

    Matrix affine = m;
    for (auto& v : affine.data) v = 3.5 * v + 11.0;
    CHECK(icc_consistency(affine).icc == doctest::Approx(base).epsilon(1e-9));

    Matrix offset = m;
    for (std::size_t j = 0; j < offset.cols; ++j)
        for (std::size_t i = 0; i < offset.rows; ++i) offset(i, j) += 10.0 * (j + 1);
    CHECK(icc_consistency(offset).icc == doctest::Approx(base).epsilon(1e-9));
}

TEST_CASE("icc: degenerate all-equal data errors") {
    Matrix m(3, 3, 5.0);
    CHECK_THROWS_AS(icc_consistency(m), Error);
}

TEST_CASE("permanova: one feature, two groups equals one-way ANOVA F") {
    Rng rng(20240817);
    for (int k = 0; k < 10; ++k) {
        std::vector<std::vector<double>> g(2);
        const int na = 5 + static_cast<int>(rng.uniform_index(10));
        const int nb = 5 + static_cast<int>(rng.uniform_index(10));
        Matrix x(na + nb, 1);
        std::vector<int> groups;
        for (int i = 0; i < na; ++i) {
            x(i, 0) = rng.normal(0.0, 1.0);
            g[0].push_back(x(i, 0));
            groups.push_back(0);
        }
        for (int i = 0; i < nb; ++i) {
            x(na + i, 0) = rng.normal(0.7, 1.0);
            g[1].push_back(x(na + i, 0));
            groups.push_back(1);
        }
        const PermanovaResult r = permanova(x, groups, 99, 1);
        REQUIRE(r.pseudo_f == doctest::Approx(oracle::one_way_anova_f(g)).epsilon(1e-9));
    }
}

TEST_CASE("permanova: huge separation hits the permutation floor") {
    Rng rng(5);
    Matrix x(30, 2);
    std::vector<int> groups;
    for (int i = 0; i < 15; ++i) {
        x(i, 0) = rng.normal(0.0, 1.0);
        x(i, 1) = rng.normal(0.0, 1.0);
        groups.push_back(0);
    }
    for (int i = 15; i < 30; ++i) {
        x(i, 0) = rng.normal(10.0, 1.0);
        x(i, 1) = rng.normal(10.0, 1.0);
        groups.push_back(1);
    }
    const PermanovaResult r = permanova(x, groups, 999, 3);
    CHECK(r.p == doctest::Approx(1.0 / 1000.0));
    CHECK(r.group_sizes == std::vector<int>{15, 15});
}

TEST_CASE("permanova: null rejection rate is calibrated (quick version)") {
    int rejections = 0;
    const int reps = 200;
    Rng data_rng(20240818);
    for (int k = 0; k < reps; ++k) {
        Matrix x(20, 3);
        for (auto& v : x.data) v = data_rng.normal();
        std::vector<int> groups(20);
        for (int i = 10; i < 20; ++i) groups[i] = 1;
        if (permanova(x, groups, 199, 1000 + k).p <= 0.05) ++rejections;
    }
    const double rate = static_cast<double>(rejections) / reps;
    CHECK(rate > 0.01);
    CHECK(rate < 0.10);
}

TEST_CASE("permanova: invariant to relabeling and row order") {
    Rng rng(9);
    Matrix x(24, 4);
    for (auto& v : x.data) v = rng.normal();
    std::vector<int> groups(24);
    for (int i = 0; i < 24; ++i) groups[i] = i % 3;
    const double f0 = permanova(x, groups, 99, 7).pseudo_f;

    std::vector<int> relabeled(24);
    for (int i = 0; i < 24; ++i) relabeled[i] = (groups[i] + 1) % 3;
    CHECK(permanova(x, relabeled, 99, 7).pseudo_f == doctest::Approx(f0).epsilon(1e-12));

    std::vector<std::size_t> perm(24);
    std::iota(perm.begin(), perm.end(), 0);
    Rng prng(4);
    prng.shuffle(perm);
    Matrix xp = x.select_rows(perm);
    std::vector<int> gp(24);
    for (int i = 0; i < 24; ++i) gp[i] = groups[perm[i]];
    CHECK(permanova(xp, gp, 99, 7).pseudo_f == doctest::Approx(f0).epsilon(1e-12));
}

TEST_CASE("permanova: configuration errors") {
    Matrix x(4, 1, 0.0);
    x(1, 0) = 1.0;
    x(2, 0) = 2.0;
    x(3, 0) = 3.0;
    CHECK_THROWS_AS(permanova(x, {0, 0, 0, 1}, 999, 1), Error);   // group with 1 member
    CHECK_THROWS_AS(permanova(x, {0, 0, 0, 0}, 999, 1), Error);   // single group
    CHECK_THROWS_AS(permanova(x, {0, 0, 1, 1}, 50, 1), Error);    // too few permutations
}

TEST_CASE("pairwise permanova: pair count and Holm monotonicity") {
    Rng rng(13);
    Matrix x(40, 2);
    std::vector<int> groups(40);
    for (int i = 0; i < 40; ++i) {
        groups[i] = i % 4;
        x(i, 0) = rng.normal(groups[i] * 2.0, 1.0);
        x(i, 1) = rng.normal(0.0, 1.0);
    }
    const auto rows = pairwise_permanova_holm(x, groups, 199, 21);
    CHECK(rows.size() == 6);  // C(4,2)
    for (const auto& row : rows) {
        CHECK(row.p_adjusted >= row.p_raw);
        CHECK(row.p_adjusted <= 1.0);
    }
}

TEST_CASE("pairwise permanova: identical distributions rarely reach significance") {
    Rng rng(20240819);
    int any_significant = 0;
    const int reps = 60;
    for (int k = 0; k < reps; ++k) {
        Matrix x(30, 2);
        for (auto& v : x.data) v = rng.normal();
        std::vector<int> groups(30);
        for (int i = 0; i < 30; ++i) groups[i] = i % 3;
        bool sig = false;
        for (const auto& row : pairwise_permanova_holm(x, groups, 199, 5000 + k))
            if (row.p_adjusted < 0.05) sig = true;
        if (sig) ++any_significant;
    }
    CHECK(static_cast<double>(any_significant) / reps < 0.05 + 0.06);
}

TEST_CASE("holm adjustment: hand cases") {
    const auto r1 = holm_adjust({0.01, 0.04, 0.03});
    REQUIRE(r1.size() == 3);
    CHECK(r1[0] == doctest::Approx(0.03));
    CHECK(r1[1] == doctest::Approx(0.06));
    CHECK(r1[2] == doctest::Approx(0.06));

    const auto r2 = holm_adjust({0.5});
    CHECK(r2[0] == doctest::Approx(0.5));

    CHECK_THROWS_AS(holm_adjust({0.5, 1.2}), Error);
    CHECK_THROWS_AS(holm_adjust({-0.1}), Error);
}

TEST_CASE("holm adjustment: output dominates input and caps at 1") {
    Rng rng(31);
    for (int k = 0; k < 50; ++k) {
        std::vector<double> p(1 + rng.uniform_index(20));
        for (auto& v : p) v = rng.uniform01();
        const auto adj = holm_adjust(p);
        for (std::size_t i = 0; i < p.size(); ++i) {
            CHECK(adj[i] >= p[i]);
            CHECK(adj[i] <= 1.0);
        }
    }
}

namespace {

std::vector<double> formula_sample(int n) {
    std::vector<double> x(n);
    for (int i = 1; i <= n; ++i) x[i - 1] = std::sin(1.37 * i * i + 0.1 * i);
    return x;
}

std::vector<double> formula_skew_sample(int n) {
    std::vector<double> x(n);
    for (int i = 1; i <= n; ++i) x[i - 1] = std::exp(2.0 * std::sin(0.9 * i * i + 0.3 * i));
    return x;
}

}  // namespace

TEST_CASE("shapiro-wilk matches the reference oracle within 1e-3") {
    // expected values computed with an independent AS R94 implementation
    struct Case {
        std::vector<double> data;
        double w, p;
    };
    const std::vector<Case> cases = {
        {{1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, 0.970164611085606, 0.892367306190298},
        {formula_sample(10), 0.93562904539848, 0.505476675291331},
        {formula_sample(50), 0.914098590863039, 0.00145249462949673},
        {formula_sample(200), 0.909788095929196, 1.10688913305775e-9},
        {formula_skew_sample(50), 0.799057810883588, 8.34060400516161e-7},
        {formula_skew_sample(200), 0.823501231806789, 2.62570466953805e-14},
    };
    for (const auto& c : cases) {
        const ShapiroResult r = shapiro_wilk(c.data);
        CHECK(std::abs(r.w - c.w) < 1e-3);
        CHECK(std::abs(r.p - c.p) < 1e-3);
    }
}

TEST_CASE("shapiro-wilk: calibration under normal data") {
    Rng rng(20240820);
    int accept = 0;
    for (int k = 0; k < 100; ++k) {
        std::vector<double> x(50);
        for (auto& v : x) v = rng.normal();
        if (shapiro_wilk(x).p > 0.05) ++accept;
    }
    CHECK(accept >= 90);
}

TEST_CASE("shapiro-wilk: power against heavy tails") {
    Rng rng(20240821);
    int reject = 0;
    for (int k = 0; k < 100; ++k) {
        std::vector<double> x(50);
        // Cauchy draws via the tangent transform
        for (auto& v : x) v = std::tan(std::numbers::pi * (rng.uniform01() - 0.5));
        if (shapiro_wilk(x).p < 0.05) ++reject;
    }
    CHECK(reject >= 90);
}

TEST_CASE("shapiro-wilk: size and degeneracy errors") {
    CHECK_THROWS_AS(shapiro_wilk({1.0, 2.0}), Error);
    std::vector<double> big(5001, 0.0);
    CHECK_THROWS_AS(shapiro_wilk(big), Error);
    CHECK_THROWS_AS(shapiro_wilk({2.0, 2.0, 2.0, 2.0}), Error);
}

TEST_CASE("t-test: hand cases") {
    const TTestResult r = t_test_one_sample({0.0, 2.0}, 0.0, Alternative::Greater);
    CHECK(r.t == doctest::Approx(1.0));
    CHECK(r.df == 1);

    const TTestResult sym =
        t_test_one_sample({-3.0, -1.0, 1.0, 3.0}, 0.0, Alternative::TwoSided);
    CHECK(sym.t == doctest::Approx(0.0).scale(1.0));
    CHECK(sym.p == doctest::Approx(1.0));

    CHECK_THROWS_AS(t_test_one_sample({1.0}, 0.0, Alternative::Greater), Error);
    CHECK_THROWS_AS(t_test_one_sample({2.0, 2.0, 2.0}, 0.0, Alternative::Greater), Error);
}

TEST_CASE("t-test: matches an independent reference on a fixed dataset") {
    const std::vector<double> x = {0.41, 0.38, 0.44, 0.40, 0.39, 0.42, 0.37, 0.43, 0.40, 0.41};
    const TTestResult g = t_test_one_sample(x, 0.375, Alternative::Greater);
    CHECK(g.t == doctest::Approx(4.36564125065399).epsilon(1e-10));
    CHECK(g.p == doctest::Approx(0.000904267805236499).epsilon(1e-9));
    const TTestResult l = t_test_one_sample(x, 0.375, Alternative::Less);
    CHECK(l.p == doctest::Approx(0.999095732194763).epsilon(1e-9));
    const TTestResult two = t_test_one_sample(x, 0.375, Alternative::TwoSided);
    CHECK(two.p == doctest::Approx(0.001808535610473).epsilon(1e-9));
}

TEST_CASE("t-test p matches the quadrature CDF oracle within 1e-6") {
    Rng rng(20240822);
    for (int k = 0; k < 40; ++k) {
        const int n = 3 + static_cast<int>(rng.uniform_index(30));
        std::vector<double> x(n);
        for (auto& v : x) v = rng.normal(0.3, 1.5);
        const TTestResult r = t_test_one_sample(x, 0.0, Alternative::Greater);
        const double want = oracle::t_sf_quadrature(r.t, r.df);
        REQUIRE(std::abs(r.p - want) < 1e-6);
    }
}

TEST_CASE("distribution helpers: sanity against known values") {
    // standard normal
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959963985).epsilon(1e-8));
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0).scale(1.0));
    // t with df=1 is Cauchy: P(T >= 1) = 1/4
    CHECK(t_sf(1.0, 1.0) == doctest::Approx(0.25).epsilon(1e-10));
    // F(1, d2) right tail at f equals two-sided t tail at sqrt(f)
    CHECK(f_sf(4.0, 1.0, 10.0) == doctest::Approx(2.0 * t_sf(2.0, 10.0)).epsilon(1e-10));
}
