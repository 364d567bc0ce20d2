#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tns/initial_conditions.hpp"
#include "tns/nonlinear.hpp"
#include "test_helpers.hpp"

using namespace tns;
using namespace tns::testing;

TEST_CASE("single divergence-free mode pair has no self-advection") {
    const SpectralField u = synthesize(WaveGrid(12), {{{2, 1, 0}, {Complex(0.1, 0.2), Complex(-0.2, -0.4), Complex(0.3, 0.0)}}});
    const SpectralField up = leray_project(u);
    CHECK(max_coeff_magnitude(advective_term(up)) <= 1e-13 * std::max(1.0, max_coeff_magnitude(up)));
    CHECK(max_coeff_magnitude(advective_term_direct(up)) <= 1e-13 * std::max(1.0, max_coeff_magnitude(up)));
}

TEST_CASE("Taylor-Green advection is a pure gradient, killed by the projector") {
    const SpectralField u = ic_taylor_green(16);
    CHECK(max_coeff_magnitude(advective_term(u)) <= 1e-14);
    CHECK(max_coeff_magnitude(advective_term_direct(u)) <= 1e-14);
}

TEST_CASE("two random modes: collocation route matches the convolution oracle") {
    const SpectralField u = leray_project(
        synthesize(WaveGrid(12), {
                                     {{1, 2, 0}, {Complex(0.4, -0.1), Complex(0.0, 0.3), Complex(-0.2, 0.5)}},
                                     {{-1, 1, 2}, {Complex(0.1, 0.1), Complex(0.7, 0.0), Complex(0.0, -0.4)}},
                                 }));
    const SpectralField fast = advective_term(u);
    const SpectralField direct = advective_term_direct(u);
    CHECK(field_distance(fast, direct) <= 1e-10 * field_norm(direct));
}

TEST_CASE("oracle equivalence on dense random masked fields") {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const SpectralField u = random_masked_field(8, 40 + seed);
        const SpectralField fast = advective_term(u);
        const SpectralField direct = advective_term_direct(u);
        CHECK(field_distance(fast, direct) <= 1e-10 * field_norm(direct));
    }
}

TEST_CASE("advection output: divergence-free, mean-free, dealiased") {
    const SpectralField u = random_masked_field(12, 5);
    const SpectralField a = advective_term(u);
    CHECK(divergence_sup(a) <= 1e-12 * max_coeff_magnitude(a));
    CHECK(std::abs(a.at({0, 0, 0})[0]) == 0.0);
    CHECK(std::abs(a.at({0, 0, 0})[1]) == 0.0);
    CHECK(std::abs(a.at({0, 0, 0})[2]) == 0.0);
    for (std::size_t i = 0; i < a.grid.mode_count(); ++i)
        if (!in_dealias_mask(a.grid, a.grid.wavevector_at(i)))
            CHECK(coeff_magnitude(a, i) == 0.0);
}

TEST_CASE("energy neutrality of the projected truncated advection") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const SpectralField u = random_masked_field(16, 70 + seed);
        const SpectralField a = advective_term(u);
        const double ip = inner_product(a, u);
        CHECK(std::abs(ip) <= 1e-11 * field_norm(a) * field_norm(u));
    }
}

TEST_CASE("advective_term rejects non-divergence-free input naming the defect") {
    const SpectralField bad = synthesize(WaveGrid(8), {{{1, 0, 0}, {Complex(1.0), Complex(0.0), Complex(0.0)}}});
    try {
        advective_term(bad);
        FAIL("expected rejection");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("divergence_sup") != std::string::npos);
    }
}

TEST_CASE("galerkin_truncate: shell selection and identity case") {
    const SpectralField u = synthesize(WaveGrid(12), {
                                                         {{1, 0, 0}, {Complex(0.0), Complex(1.0), Complex(0.0)}},
                                                         {{3, 0, 0}, {Complex(0.0), Complex(0.5), Complex(0.0)}},
                                                     });
    const SpectralField cut = galerkin_truncate(u, 2.0);
    CHECK(coeff_magnitude(cut, cut.grid.index_of({1, 0, 0})) == doctest::Approx(1.0));
    CHECK(coeff_magnitude(cut, cut.grid.index_of({3, 0, 0})) == 0.0);

    const SpectralField same = galerkin_truncate(u, 6.0);
    CHECK(field_distance(same, u) == 0.0);
}

TEST_CASE("galerkin_truncate: energy splits exactly, idempotent, commutes with the projector") {
    const SpectralField u = random_raw_field(12, 9);
    for (const double n : {1.0, 2.0, 3.5}) {
        const SpectralField low = galerkin_truncate(u, n);
        double high_sq = 0.0;
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < u.grid.mode_count(); ++i)
                high_sq += std::norm(u.comp[c][i] - low.comp[c][i]);
        const double total = field_norm(u) * field_norm(u);
        CHECK(field_norm(low) * field_norm(low) + high_sq == doctest::Approx(total).epsilon(1e-14));

        CHECK(field_distance(galerkin_truncate(low, n), low) == 0.0);

        const SpectralField a = leray_project(galerkin_truncate(u, n));
        const SpectralField b = galerkin_truncate(leray_project(u), n);
        CHECK(field_distance(a, b) <= 1e-15 * field_norm(u));
    }
}

TEST_CASE("dealias mask geometry") {
    CHECK(dealias_limit(8) == 2);
    CHECK(dealias_limit(12) == 4);
    CHECK(dealias_limit(32) == 10);
    const WaveGrid grid(12);
    CHECK(in_dealias_mask(grid, {4, 0, 0}));
    CHECK(!in_dealias_mask(grid, {3, 3, 0})); // |k|^2 = 18 > 16
    CHECK(!in_dealias_mask(grid, {5, 0, 0}));
}

TEST_CASE("workspace: buffers sized to the grid, mask symmetric under k -> -k") {
    const WaveGrid grid(12);
    AdvectionWorkspace ws(grid);
    CHECK(ws.dealias_mask().size() == grid.mode_count());
    CHECK(ws.mirror().size() == grid.mode_count());
    for (std::size_t i = 0; i < grid.mode_count(); ++i)
        CHECK(ws.dealias_mask()[i] == ws.dealias_mask()[ws.mirror()[i]]);
}
