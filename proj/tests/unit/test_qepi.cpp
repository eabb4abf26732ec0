#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <sstream>

#include "gcap/bounds.hpp"
#include "gcap/qepi.hpp"

using namespace gcap;
using Catch::Approx;

namespace {

QepiGridSpec tiny_grid(std::vector<double> mixing,
                       std::vector<NoiseSpec> f1, std::vector<NoiseSpec> f2) {
    QepiGridSpec grid;
    grid.mixing = std::move(mixing);
    grid.family1 = std::move(f1);
    grid.family2 = std::move(f2);
    return grid;
}

std::string serialize(const QepiReport& report) {
    std::ostringstream os;
    write_qepi_csv_header(os);
    append_qepi_csv_rows(os, report);
    return os.str();
}

} // namespace

TEST_CASE("default grids have the documented shape") {
    const QepiGridSpec bs = default_beamsplitter_grid();
    CHECK(bs.mixing.size() == 9);
    CHECK(bs.family1.size() == 6);
    CHECK(bs.family2.size() == 6 * 4 * 3);
    const QepiGridSpec amp = default_amplifier_grid();
    CHECK(amp.mixing.size() == 4);
    CHECK(amp.mixing.front() == 1.1);
}

TEST_CASE("beamsplitter QEPI") {
    SECTION("equal thermal pairs sit on the equality line") {
        for (double n : {0.0, 1.0, 4.0, 10.0}) {
            const NoiseSpec th{n, 0.0, 0.0};
            const QepiReport report = check_beamsplitter_qepi(
                tiny_grid({0.25, 0.5, 0.75}, {th}, {th}));
            for (const QepiPoint& p : report.points) {
                CHECK(std::fabs(*p.exp_slack) < 1e-10);
                CHECK(std::fabs(*p.ent_slack) < 1e-12);
            }
        }
    }
    SECTION("vacuum pair gives exactly zero slack") {
        const QepiReport report = check_beamsplitter_qepi(
            tiny_grid({0.3}, {NoiseSpec{}}, {NoiseSpec{}}));
        CHECK(*report.points.at(0).exp_slack == Approx(0.0).margin(1e-14));
    }
    SECTION("thermal vs squeezed-thermal point") {
        const QepiReport report = check_beamsplitter_qepi(
            tiny_grid({0.3}, {{1.0, 0.0, 0.0}}, {{1.0, 1.0, 0.0}}));
        CHECK(*report.points.at(0).exp_slack >= 0.0);
        CHECK(!report.violation);
    }
    SECTION("default grid is violation-free") {
        const QepiReport report =
            check_beamsplitter_qepi(default_beamsplitter_grid());
        CHECK(report.points.size() == 9 * 6 * 72);
        CHECK(report.min_slack >= kQepiSlackTol);
        CHECK(!report.violation);
    }
    SECTION("rejects tau outside (0,1)") {
        CHECK_THROWS_AS(check_beamsplitter_qepi(
                            tiny_grid({1.0}, {NoiseSpec{}}, {NoiseSpec{}})),
                        DomainError);
    }
}

TEST_CASE("amplifier QEPI") {
    SECTION("vacuum pair at kappa = 2: slack is exactly 1") {
        // e^{g(1)} = 2^2 / 1 = 4, right side = kappa + (kappa - 1) = 3.
        const QepiReport report = check_amplifier_qepi(
            tiny_grid({2.0}, {NoiseSpec{}}, {NoiseSpec{}}));
        CHECK(*report.points.at(0).exp_slack == Approx(1.0).margin(1e-10));
    }
    SECTION("kappa -> 1 collapses the slack") {
        const QepiReport report = check_amplifier_qepi(
            tiny_grid({1.0 + 1e-9}, {{2.0, 0.0, 0.0}}, {{5.0, 1.0, 0.4}}));
        CHECK(*report.points.at(0).exp_slack >= kQepiSlackTol);
        CHECK(*report.points.at(0).exp_slack < 1e-6);
    }
    SECTION("thermal vs pure squeezed") {
        const QepiReport report = check_amplifier_qepi(
            tiny_grid({1.5}, {{1.0, 0.0, 0.0}}, {{0.0, 1.0, 0.0}}));
        CHECK(*report.points.at(0).exp_slack >= 0.0);
    }
    SECTION("default grid is violation-free") {
        const QepiReport report =
            check_amplifier_qepi(default_amplifier_grid());
        CHECK(report.min_slack >= kQepiSlackTol);
        CHECK(!report.violation);
    }
    SECTION("rejects kappa <= 1") {
        CHECK_THROWS_AS(check_amplifier_qepi(
                            tiny_grid({0.9}, {NoiseSpec{}}, {NoiseSpec{}})),
                        DomainError);
    }
}

TEST_CASE("entropic form") {
    SECTION("equal inputs give zero slack") {
        const NoiseSpec st{2.0, 0.5, 0.3};
        const QepiReport report =
            check_entropic_form(tiny_grid({0.4}, {st}, {st}));
        CHECK(std::fabs(*report.points.at(0).ent_slack) < 1e-12);
        CHECK(!report.points.at(0).exp_slack.has_value());
    }
    SECTION("vacuum against thermal reproduces the concavity gap") {
        for (double n : {1.0, 4.0, 10.0}) {
            const QepiReport report = check_entropic_form(
                tiny_grid({0.5}, {NoiseSpec{}}, {{n, 0.0, 0.0}}));
            const double expected = g(n / 2.0) - 0.5 * g(n);
            CHECK(*report.points.at(0).ent_slack ==
                  Approx(expected).margin(1e-12));
            CHECK(expected >= 0.0);
        }
    }
    SECTION("randomized squeezed pairs stay non-negative") {
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> tau_dist(0.05, 0.95);
        std::uniform_real_distribution<double> photons(0.0, 8.0);
        std::uniform_real_distribution<double> squeeze(-1.5, 1.5);
        std::uniform_real_distribution<double> angle(0.0, 6.28);
        QepiGridSpec grid;
        grid.mixing = {tau_dist(rng)};
        for (int i = 0; i < 32; ++i) {
            grid.family1.emplace_back(photons(rng), squeeze(rng), angle(rng));
            grid.family2.emplace_back(photons(rng), squeeze(rng), angle(rng));
        }
        const QepiReport report = check_entropic_form(grid);
        CHECK(report.points.size() == 1024);
        CHECK(report.min_slack >= kQepiSlackTol);
    }
    SECTION("default grid reports no finding") {
        const QepiReport report =
            check_entropic_form(default_beamsplitter_grid());
        CHECK(report.min_slack >= kQepiSlackTol);
        CHECK(!report.violation);
    }
}

TEST_CASE("reports are deterministic") {
    const QepiGridSpec grid = default_beamsplitter_grid();
    const std::string a = serialize(check_beamsplitter_qepi(grid));
    const std::string b = serialize(check_beamsplitter_qepi(grid));
    CHECK(a == b);
    CHECK(a.find("beamsplitter,") != std::string::npos);
}

TEST_CASE("theorem chain check") {
    SECTION("vacuum input against thermal noise") {
        for (double tau : {0.25, 0.5, 0.75})
            for (double n_env : {1.0, 4.0}) {
                const ChainReport report = theorem_chain_check(
                    tau, {n_env, 0.0, 0.0}, {thermal_cov(0.0)});
                // S_out = g((1-tau) N_E) >= (1-tau) g(N_E) by concavity.
                const ChainPoint& p = report.points.at(0);
                CHECK(p.s_out ==
                      Approx(g((1.0 - tau) * n_env)).margin(1e-12));
                CHECK(p.rhs ==
                      Approx((1.0 - tau) * g(n_env)).margin(1e-12));
                CHECK(p.slack >= 0.0);
                CHECK(!report.violation);
            }
    }
    SECTION("additivity over product modes") {
        const ChainReport report = theorem_chain_check(
            0.5, {1.0, 1.0, 0.0},
            {thermal_cov(0.0), thermal_cov(2.0),
             general_noise_cov({0.5, 0.8, 0.2})},
            8);
        CHECK(report.additivity_max_dev <= 1e-10);
    }
    SECTION("squeezed noise grid stays non-negative") {
        std::vector<CovarianceMatrix> inputs;
        for (double n : {0.0, 0.5, 1.0, 2.0, 4.0, 10.0})
            inputs.push_back(thermal_cov(n));
        for (double r : {0.0, 1.0}) {
            const ChainReport report =
                theorem_chain_check(0.5, {1.0, r, 0.0}, inputs);
            CHECK(report.min_slack >= 0.0);
        }
    }
    SECTION("domain checks") {
        CHECK_THROWS_AS(theorem_chain_check(0.0, {}, {thermal_cov(0.0)}),
                        DomainError);
        CHECK_THROWS_AS(theorem_chain_check(0.5, {}, {}), DomainError);
    }
}
