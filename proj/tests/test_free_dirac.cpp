#include <gtest/gtest.h>

#include <numbers>

#include "nlds/free_dirac.hpp"
#include "support/oracles.hpp"

using namespace nlds;
using oracle::random_field;

namespace {
constexpr double pi = std::numbers::pi;

SpinorField mode_field(const GridPtr& grid, int l, cplx amp1, cplx amp2) {
    SpinorField f(grid);
    for (int j = 0; j < f.size(); ++j) {
        const double phase = grid->freq(l) * (grid->node(j) - grid->a());
        const cplx w(std::cos(phase), std::sin(phase));
        f.c1[j] = amp1 * w;
        f.c2[j] = amp2 * w;
    }
    return f;
}

SpinorField lincomb(const SpinorField& f, cplx a, const SpinorField& g, cplx b) {
    SpinorField out(f.grid);
    for (int j = 0; j < f.size(); ++j) {
        out.c1[j] = a * f.c1[j] + b * g.c1[j];
        out.c2[j] = a * f.c2[j] + b * g.c2[j];
    }
    return out;
}
}  // namespace

TEST(Symbol, ZeroFrequencyIsSigma3) {
    const Mat2c s = dirac_symbol(0.0, 0.3);
    EXPECT_EQ(s.m00, cplx(1.0, 0.0));
    EXPECT_EQ(s.m01, cplx(0.0, 0.0));
    EXPECT_EQ(s.m10, cplx(0.0, 0.0));
    EXPECT_EQ(s.m11, cplx(-1.0, 0.0));
    EXPECT_DOUBLE_EQ(symbol_gap(0.0, 0.3), 1.0);
}

TEST(Symbol, HandValueAndEigenvalues) {
    // eps = 1, mu = 1: [[1,1],[1,-1]], char poly lambda^2 - 2 -> +-sqrt(2)
    const Mat2c s = dirac_symbol(1.0, 1.0);
    EXPECT_EQ(s.m01, cplx(1.0, 0.0));
    EXPECT_EQ(s.m10, cplx(1.0, 0.0));
    EXPECT_DOUBLE_EQ(symbol_gap(1.0, 1.0), std::sqrt(2.0));
}

TEST(Symbol, HermitianForRandomArguments) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> mu(-50.0, 50.0);
    std::uniform_real_distribution<double> eps(0.01, 1.0);
    for (int k = 0; k < 100; ++k) {
        const Mat2c s = dirac_symbol(mu(rng), eps(rng));
        EXPECT_EQ(s.m01, std::conj(s.m10));
        EXPECT_EQ(s.m00.imag(), 0.0);
        EXPECT_EQ(s.m11.imag(), 0.0);
    }
}

TEST(FreeFlow, DcModePhases) {
    const GridPtr g = make_grid(-2.0, 2.0, 8);
    SpinorField f(g);
    for (int j = 0; j < 8; ++j) {
        f.c1[j] = cplx(0.7, 0.2);
        f.c2[j] = cplx(-0.3, 1.1);
    }
    const double eps = 0.5, t = 0.37;
    const SpinorField out = free_flow(f, t, eps);
    const cplx w1 = std::polar(1.0, t / (eps * eps));
    const cplx w2 = std::conj(w1);
    for (int j = 0; j < 8; ++j) {
        EXPECT_NEAR(std::abs(out.c1[j] - w1 * f.c1[j]), 0.0, 1e-13);
        EXPECT_NEAR(std::abs(out.c2[j] - w2 * f.c2[j]), 0.0, 1e-13);
    }
}

TEST(FreeFlow, MatchesMatrixExponentialOracle) {
    const GridPtr g = make_grid(-1.0, 1.0, 8);
    const SpinorField f = random_field(g, 21);
    const double eps = 0.5, t = 0.3;
    const SpinorField out = free_flow(f, t, eps);

    // per mode: exp(i t/eps^2 * symbol) on the coefficients
    const auto g1 = oracle::dft_forward(f.c1);
    const auto g2 = oracle::dft_forward(f.c2);
    std::vector<cplx> e1(8), e2(8);
    for (int i = 0; i < 8; ++i) {
        const int l = (i < 4) ? i : i - 8;
        const double mu = 2.0 * pi * l / g->length();
        const double em = eps * mu;
        const cplx itheta(0.0, t / (eps * eps));
        oracle::Mat2 m{itheta * 1.0, itheta * em, itheta * em, itheta * -1.0};
        const oracle::Mat2 u = oracle::expm(m);
        cplx a = g1[i], b = g2[i];
        u.apply(a, b);
        e1[i] = a;
        e2[i] = b;
    }
    const auto p1 = oracle::dft_inverse(e1);
    const auto p2 = oracle::dft_inverse(e2);
    for (int j = 0; j < 8; ++j) {
        EXPECT_NEAR(std::abs(out.c1[j] - p1[j]), 0.0, 1e-10);
        EXPECT_NEAR(std::abs(out.c2[j] - p2[j]), 0.0, 1e-10);
    }
}

TEST(FreeFlow, IdentityAtZeroTime) {
    const GridPtr g = make_grid(0.0, 1.0, 16);
    const SpinorField f = random_field(g, 3);
    EXPECT_LE(l2_distance(free_flow(f, 0.0, 0.7), f), 1e-13 * l2_norm(f));
}

TEST(FreeFlow, UnitaryGroupWithInverse) {
    const GridPtr g = make_grid(-4.0, 4.0, 32);
    const SpinorField f = random_field(g, 11);
    const double eps = 0.35;
    const SpinorField a = free_flow(f, 0.4, eps);
    EXPECT_NEAR(l2_norm(a) / l2_norm(f), 1.0, 1e-12);

    const SpinorField b = free_flow(a, 0.25, eps);
    const SpinorField c = free_flow(f, 0.65, eps);
    EXPECT_LE(l2_distance(b, c), 1e-12 * l2_norm(f));

    const SpinorField back = free_flow(a, -0.4, eps);
    EXPECT_LE(l2_distance(back, f), 1e-12 * l2_norm(f));
}

TEST(Projector, DcModeSplitsComponents) {
    const GridPtr g = make_grid(-2.0, 2.0, 8);
    SpinorField f(g);
    for (int j = 0; j < 8; ++j) {
        f.c1[j] = cplx(1.2, -0.5);
        f.c2[j] = cplx(0.4, 0.9);
    }
    const SpinorField plus = projector(f, Branch::plus, 0.8);
    const SpinorField minus = projector(f, Branch::minus, 0.8);
    for (int j = 0; j < 8; ++j) {
        EXPECT_NEAR(std::abs(plus.c1[j] - f.c1[j]), 0.0, 1e-13);
        EXPECT_NEAR(std::abs(plus.c2[j]), 0.0, 1e-13);
        EXPECT_NEAR(std::abs(minus.c1[j]), 0.0, 1e-13);
        EXPECT_NEAR(std::abs(minus.c2[j] - f.c2[j]), 0.0, 1e-13);
    }
}

TEST(Projector, AlgebraOnRandomFields) {
    const GridPtr g = make_grid(-3.0, 3.0, 32);
    const SpinorField f = random_field(g, 77);
    const double eps = 0.25;
    const SpinorField p = projector(f, Branch::plus, eps);
    const SpinorField q = projector(f, Branch::minus, eps);
    const double scale = l2_norm(f);

    EXPECT_LE(l2_distance(lincomb(p, 1.0, q, 1.0), f), 1e-12 * scale);                 // P+ + P- = I
    EXPECT_LE(l2_norm(projector(q, Branch::plus, eps)), 1e-12 * scale);                // P+ P- = 0
    EXPECT_LE(l2_norm(projector(p, Branch::minus, eps)), 1e-12 * scale);               // P- P+ = 0
    EXPECT_LE(l2_distance(projector(p, Branch::plus, eps), p), 1e-12 * scale);         // P+^2 = P+
    EXPECT_LE(l2_distance(projector(q, Branch::minus, eps), q), 1e-12 * scale);        // P-^2 = P-
}

TEST(Projector, MatchesEigendecompositionOracle) {
    const GridPtr g = make_grid(0.0, 2.0, 8);
    const SpinorField f = random_field(g, 13);
    const double eps = 0.6;
    for (const bool plus : {true, false}) {
        const SpinorField got = projector(f, plus ? Branch::plus : Branch::minus, eps);
        const auto g1 = oracle::dft_forward(f.c1);
        const auto g2 = oracle::dft_forward(f.c2);
        std::vector<cplx> e1(8), e2(8);
        for (int i = 0; i < 8; ++i) {
            const int l = (i < 4) ? i : i - 8;
            const double mu = 2.0 * pi * l / g->length();
            cplx a = g1[i], b = g2[i];
            oracle::eig_projector(mu, eps, plus).apply(a, b);
            e1[i] = a;
            e2[i] = b;
        }
        const auto p1 = oracle::dft_inverse(e1);
        const auto p2 = oracle::dft_inverse(e2);
        for (int j = 0; j < 8; ++j) {
            EXPECT_NEAR(std::abs(got.c1[j] - p1[j]), 0.0, 1e-12);
            EXPECT_NEAR(std::abs(got.c2[j] - p2[j]), 0.0, 1e-12);
        }
    }
}

TEST(Dsemigroup, DcModeIsIdentity) {
    const GridPtr g = make_grid(-1.0, 1.0, 8);
    SpinorField f(g);
    for (int j = 0; j < 8; ++j) f.c1[j] = cplx(0.3, 0.4);
    const SpinorField out = dsemigroup(f, 5.3, 0.7);
    EXPECT_LE(l2_distance(out, f), 1e-13 * l2_norm(f));
}

TEST(Dsemigroup, SingleModeMultiplier) {
    // eps = 1, mu = 1, t = pi -> multiplier exp(i pi (sqrt(2) - 1))
    const GridPtr g = make_grid(0.0, 2.0 * pi, 16);
    ASSERT_DOUBLE_EQ(g->freq(1), 1.0);
    const SpinorField f = mode_field(g, 1, cplx(1.0, 0.0), cplx(0.5, -0.2));
    const SpinorField out = dsemigroup(f, pi, 1.0);
    const cplx want = std::polar(1.0, pi * (std::sqrt(2.0) - 1.0));
    for (int j = 0; j < f.size(); ++j) {
        EXPECT_NEAR(std::abs(out.c1[j] - want * f.c1[j]), 0.0, 1e-13);
        EXPECT_NEAR(std::abs(out.c2[j] - want * f.c2[j]), 0.0, 1e-13);
    }
}

TEST(Dsemigroup, EvolutionOperatorDecomposition) {
    // e^{itQ/eps^2} f = e^{it/eps^2} e^{itD} P+ f + e^{-it/eps^2} e^{-itD} P- f
    const GridPtr g = make_grid(-2.0, 2.0, 16);
    const SpinorField f = random_field(g, 4242);
    const double eps = 0.5, t = 0.7;
    const SpinorField lhs = free_flow(f, t, eps);
    const SpinorField rhs =
        lincomb(dsemigroup(projector(f, Branch::plus, eps), t, eps),
                std::polar(1.0, t / (eps * eps)),
                dsemigroup(projector(f, Branch::minus, eps), -t, eps),
                std::polar(1.0, -t / (eps * eps)));
    EXPECT_LE(l2_distance(lhs, rhs), 1e-12 * l2_norm(f));
}

TEST(FreeDirac, RejectsNonPositiveEps) {
    const GridPtr g = make_grid(0.0, 1.0, 8);
    const SpinorField f = random_field(g, 1);
    EXPECT_THROW(free_flow(f, 0.1, 0.0), std::invalid_argument);
    EXPECT_THROW(projector(f, Branch::plus, -1.0), std::invalid_argument);
    EXPECT_THROW(dsemigroup(f, 0.1, 0.0), std::invalid_argument);
    EXPECT_THROW(dirac_symbol(1.0, 0.0), std::invalid_argument);
}
