#include "wron/wronskian.hpp"

#include "common/test_support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace wron;
using testsupport::max_abs;
using testsupport::max_abs_diff;
using testsupport::random_system;

namespace {

FunctionSystem system_of(std::initializer_list<std::string> sources) {
    const std::vector<std::string> v(sources);
    return FunctionSystem::parse(v);
}

} // namespace

TEST_CASE("build_wronskian on the Euler fixture", "[wronskian]") {
    const WronskianData d = build_wronskian(system_of({"t", "t^2"}), 1.0);
    CHECK(d.W == Matrix{{1, 1}, {1, 2}});
    CHECK(d.Wprime == Matrix{{1, 2}, {0, 2}});
    CHECK(d.w == 1.0);
    CHECK(d.wprime == 2.0); // w = t^2
    CHECK_FALSE(d.degenerate);
    REQUIRE(d.jets.size() == 2);
    CHECK(d.jets[0].order() == 2);
}

TEST_CASE("build_wronskian structure and simple systems", "[wronskian]") {
    const double t = 0.7;
    const WronskianData d = build_wronskian(system_of({"1", "t"}), t);
    CHECK(d.W == Matrix{{1, t}, {0, 1}});
    CHECK(d.w == 1.0);
    CHECK(d.wprime == 0.0);

    // rows 1..n-1 of W' are exactly rows 2..n of W
    const WronskianData m = build_wronskian(system_of({"exp(t)", "sin(t)", "t^3"}), 0.4);
    for (int r = 0; r + 1 < m.n; ++r)
        for (int k = 0; k < m.n; ++k) CHECK(m.Wprime(r, k) == m.W(r + 1, k));

    const WronskianData rot = build_wronskian(system_of({"cos(t)", "sin(t)"}), 1.3);
    CHECK(std::fabs(rot.w - 1.0) <= 1e-12); // cos^2 + sin^2
    CHECK(std::fabs(rot.wprime) <= 1e-12);

    try {
        build_wronskian(system_of({"t", "ln(t)"}), -0.5);
        FAIL("expected DomainError");
    } catch (const JetError& e) {
        CHECK(e.kind() == JetErrorKind::DomainError);
        CHECK(std::string(e.what()).find("function 2") != std::string::npos);
    }
}

TEST_CASE("degeneracy detection", "[wronskian]") {
    CHECK(build_wronskian(system_of({"t", "2*t"}), 0.8).degenerate);
    CHECK(build_wronskian(system_of({"t", "t^2"}), 0.0).degenerate); // w = t^2 vanishes
    CHECK_FALSE(build_wronskian(system_of({"t", "t^2"}), 0.5).degenerate);
}

TEST_CASE("cramer_coefficients fixtures", "[wronskian]") {
    CHECK(cramer_coefficients(build_wronskian(system_of({"t", "t^2"}), 1.0)) ==
          std::vector<double>{2, -2}); // Euler: y'' = (2/t) y' - (2/t^2) y at t=1

    const auto p = cramer_coefficients(build_wronskian(system_of({"cos(t)", "sin(t)"}), 0.9));
    CHECK(std::fabs(p[0]) <= 1e-12); // y'' = -y
    CHECK(std::fabs(p[1] + 1.0) <= 1e-12);

    CHECK(cramer_coefficients(build_wronskian(system_of({"1", "t"}), 0.3)) ==
          std::vector<double>{0, 0});

    CHECK_THROWS_AS(cramer_coefficients(build_wronskian(system_of({"t", "2*t"}), 0.5)),
                    DegenerateWronskianError);
}

TEST_CASE("solve_coefficients fixtures", "[wronskian]") {
    CHECK(solve_coefficients(build_wronskian(system_of({"t", "t^2"}), 1.0)) ==
          std::vector<double>{2, -2});

    // characteristic roots 1, 2: lambda^2 - 3 lambda + 2, so y'' = 3y' - 2y
    const auto p = solve_coefficients(build_wronskian(system_of({"exp(t)", "exp(2*t)"}), 0.0));
    CHECK(max_abs_diff(p, std::vector<double>{3, -2}) <= 1e-12);

    CHECK(solve_coefficients(build_wronskian(system_of({"1", "t", "t^2"}), 0.5)) ==
          std::vector<double>{0, 0, 0});

    CHECK_THROWS_AS(solve_coefficients(build_wronskian(system_of({"t", "2*t"}), 0.5)),
                    DegenerateWronskianError);
}

TEST_CASE("CrossCheckError carries both routes", "[wronskian]") {
    // Not reachable through well-posed inputs (the tolerance scales with the
    // same conditioning that drives the disagreement), so exercise the
    // payload directly.
    const CrossCheckError e("routes disagree", {1.0, 2.0}, {1.0, 2.5}, 0.5, 0.1);
    CHECK(e.p_solve() == std::vector<double>{1.0, 2.0});
    CHECK(e.p_cramer() == std::vector<double>{1.0, 2.5});
    CHECK(e.residual() == 0.5);
    CHECK(e.tolerance() == 0.1);
}

TEST_CASE("full pipeline at the n = 8 limit", "[wronskian]") {
    const FunctionSystem sys = FunctionSystem::parse(std::vector<std::string>{
        "1", "t", "t^2", "t^3", "exp(t)", "exp(-t)", "sin(t)", "cos(t)"});
    const WronskianData d = build_wronskian(sys, 0.5);
    REQUIRE_FALSE(d.degenerate);
    // annihilated by D^4 (D^2 - 1)(D^2 + 1) = D^8 - D^4, so p_4 = 1 alone
    std::vector<double> expected(8, 0.0);
    expected[3] = 1.0;
    CHECK(max_abs_diff(solve_coefficients(d), expected) <= 1e-10);

    CHECK_THROWS_AS(FunctionSystem::parse(std::vector<std::string>(9, "t")), Error);
}

TEST_CASE("apply_basis_change", "[wronskian]") {
    std::mt19937_64 rng(51);
    const WronskianData d = build_wronskian(system_of({"1", "t"}), 0.3);

    const auto same = apply_basis_change(d.jets, Matrix::identity(2));
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i <= 2; ++i) CHECK(same[static_cast<size_t>(k)].coeff(i) == d.jets[static_cast<size_t>(k)].coeff(i));

    // T = [[1,1],[0,1]] sends {1, t} to {1, 1+t}
    const Matrix T{{1, 1}, {0, 1}};
    const WronskianData dt = wronskian_from_jets(apply_basis_change(d.jets, T), d.t);
    CHECK(dt.W == d.W * T);
    CHECK(dt.W == Matrix{{1, 1 + d.t}, {0, 1}});

    // T then T^-1 is the identity
    const WronskianData mixed = build_wronskian(system_of({"exp(t)", "sin(t)", "t^2"}), 0.6);
    const Matrix T3 = random_invertible(3, rng);
    const Matrix T3inv = solve(T3, Matrix::identity(3));
    const auto round = apply_basis_change(apply_basis_change(mixed.jets, T3), T3inv);
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i <= 3; ++i)
            CHECK(std::fabs(round[static_cast<size_t>(k)].coeff(i) -
                            mixed.jets[static_cast<size_t>(k)].coeff(i)) <= 1e-12);

    CHECK_THROWS_AS(apply_basis_change(d.jets, Matrix{{1, 2}, {2, 4}}), SingularMatrixError);
}

TEST_CASE("recovered p satisfies the ODE at fresh points", "[wronskian]") {
    std::mt19937_64 rng(57);
    for (int iter = 0; iter < 30; ++iter) {
        const int n = 2 + static_cast<int>(uniform_unit(rng) * 4);
        const FunctionSystem sys = random_system(n, rng);
        const double t = 0.1 + 0.8 * uniform_unit(rng);
        const WronskianData d = build_wronskian(sys, t);
        if (d.degenerate || d.kappa > 1e6) continue;
        const auto p = solve_coefficients(d);
        double scale = 1.0;
        for (const Jet& jet : d.jets) {
            double row = 0.0;
            for (int j = 0; j <= n; ++j) row += jet.derivative(j) * jet.derivative(j);
            scale = std::max(scale, std::sqrt(row));
        }
        for (const Jet& jet : d.jets) {
            double acc = jet.derivative(n);
            for (int j = 1; j <= n; ++j) acc -= p[static_cast<size_t>(j - 1)] * jet.derivative(n - j);
            CHECK(std::fabs(acc) <= 1e-8 * scale);
        }
    }
}

TEST_CASE("Cramer and solve routes agree", "[wronskian]") {
    std::mt19937_64 rng(61);
    for (int iter = 0; iter < 40; ++iter) {
        const int n = 2 + static_cast<int>(uniform_unit(rng) * 4);
        const FunctionSystem sys = random_system(n, rng);
        const double t = uniform_unit(rng);
        const WronskianData d = build_wronskian(sys, t);
        if (d.degenerate) continue;
        const auto pc = cramer_coefficients(d);
        const auto ps = solve_coefficients(d);
        CHECK(max_abs_diff(pc, ps) <= 1e-9 * d.kappa * (1.0 + max_abs(ps)));
    }
}

TEST_CASE("Wronskian transforms as W T under basis change", "[wronskian]") {
    std::mt19937_64 rng(67);
    for (int iter = 0; iter < 40; ++iter) {
        const int n = 2 + static_cast<int>(uniform_unit(rng) * 4);
        const FunctionSystem sys = random_system(n, rng);
        const double t = uniform_unit(rng);
        const WronskianData d = build_wronskian(sys, t);
        if (d.degenerate) continue;
        const Matrix T = random_invertible(n, rng);
        const WronskianData dt = wronskian_from_jets(apply_basis_change(d.jets, T), t);
        const Matrix expected = d.W * T;
        CHECK((dt.W - expected).max_abs() <= 1e-10 * expected.max_abs());
    }
}

TEST_CASE("p is independent of the basis", "[wronskian]") {
    std::mt19937_64 rng(71);
    for (int iter = 0; iter < 30; ++iter) {
        const int n = 2 + static_cast<int>(uniform_unit(rng) * 3);
        const FunctionSystem sys = random_system(n, rng);
        const double t = uniform_unit(rng);
        const WronskianData d = build_wronskian(sys, t);
        if (d.degenerate) continue;
        const Matrix T = random_invertible(n, rng);
        const WronskianData dt = wronskian_from_jets(apply_basis_change(d.jets, T), t);
        if (dt.degenerate) continue;
        CHECK(max_abs_diff(solve_coefficients(d), solve_coefficients(dt)) <= 1e-8 * d.kappa);
    }
}

TEST_CASE("Abel identity in determinant form", "[wronskian]") {
    std::mt19937_64 rng(73);
    for (int iter = 0; iter < 40; ++iter) {
        const int n = 1 + static_cast<int>(uniform_unit(rng) * 5);
        const FunctionSystem sys = random_system(n, rng);
        const double t = uniform_unit(rng);
        const WronskianData d = build_wronskian(sys, t);
        if (d.degenerate || d.kappa > 1e6) continue;
        const auto p = solve_coefficients(d);
        CHECK(std::fabs(d.wprime / d.w - p[0]) <= 1e-8 * (1.0 + std::fabs(p[0])));
    }
}
