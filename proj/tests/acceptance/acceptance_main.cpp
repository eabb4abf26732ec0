// Acceptance suite: one check per shipped guarantee, one printed line per
// check. Returns nonzero if any criterion fails.
//
// Usage: gcap_acceptance <path-to-gcap-cli> <path-to-configs-dir>
//
// The two arguments are consumed by the reproducibility criterion, which
// re-runs the committed sweep configs through the real binary; the ctest
// entry passes them automatically.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "gcap/bounds.hpp"
#include "gcap/qepi.hpp"
#include "gcap/sweep.hpp"

using namespace gcap;

namespace {

int failures = 0;

void criterion(int id, const std::string& name,
               const std::function<void()>& body) {
    try {
        body();
        std::printf("[PASS] criterion %2d: %s\n", id, name.c_str());
    } catch (const std::exception& e) {
        std::printf("[FAIL] criterion %2d: %s: %s\n", id, name.c_str(),
                    e.what());
        ++failures;
    }
    std::fflush(stdout);
}

void require(bool cond, const std::string& msg) {
    if (!cond)
        throw std::runtime_error(msg);
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i)] =
            i == n - 1 ? b : a + i * (b - a) / (n - 1);
    return v;
}

int run_cli(const std::string& command) {
    const int rc = std::system(command.c_str());
    require(rc != -1, "failed to launch: " + command);
    require(WIFEXITED(rc), "abnormal termination: " + command);
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    require(static_cast<bool>(is), "cannot read " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

constexpr double kPi = std::numbers::pi;

} // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    const std::string configs = argc > 2 ? argv[2] : "";

    criterion(1, "determinant invariance over 10^4 random noise specs", [] {
        std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
        std::uniform_real_distribution<double> photons(0.0, 10.0);
        std::uniform_real_distribution<double> squeeze(-2.0, 2.0);
        std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
        for (int i = 0; i < 10000; ++i) {
            const double n = photons(rng);
            const CovarianceMatrix v =
                general_noise_cov({n, squeeze(rng), angle(rng)});
            const double expected = (2.0 * n + 1.0) * (2.0 * n + 1.0);
            require(std::fabs(v.det() - expected) / expected < 1e-10,
                    "det V_G deviates at sample " + std::to_string(i));
        }
    });

    criterion(2, "symplecticity of 10^3 random Euler compositions", [] {
        std::mt19937_64 rng(0xc2b2ae3d27d4eb4full);
        std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
        std::uniform_real_distribution<double> squeeze(-2.0, 2.0);
        for (int i = 0; i < 1000; ++i) {
            const Mat2 m =
                compose_euler({angle(rng), squeeze(rng), angle(rng)});
            const double residual =
                max_abs(sandwich(m, Mat2::omega()) - Mat2::omega());
            require(residual < 1e-13,
                    "residual " + std::to_string(residual) + " at sample " +
                        std::to_string(i));
        }
    });

    const auto taus = linspace(0.0, 1.0, 20);
    const auto inputs = linspace(0.0, 20.0, 20);
    const auto envs = linspace(0.0, 5.0, 20);

    criterion(3, "general bound reduces to the thermal bound at r = 0", [&] {
        for (double tau : taus)
            for (double n : inputs)
                for (double ne : envs) {
                    const double a = general_upper(tau, n, {ne, 0.0, 0.7});
                    const double b = sk_upper(tau, n, ne);
                    require(std::fabs(a - b) < 1e-12,
                            "mismatch at tau=" + std::to_string(tau) +
                                " n=" + std::to_string(n) +
                                " ne=" + std::to_string(ne));
                }
    });

    criterion(4, "capacity sandwich: holevo <= sk bound, strictly inside", [&] {
        for (std::size_t i = 0; i < taus.size(); ++i)
            for (double n : inputs)
                for (double ne : envs) {
                    const double tau = taus[i];
                    const double h = holevo_thermal(tau, n, ne);
                    const double s = sk_upper(tau, n, ne);
                    require(h <= s + 1e-12, "holevo exceeds sk bound");
                    const bool interior = i > 0 && i + 1 < taus.size();
                    if (interior && ne >= 0.5)
                        require(s - h > 1e-6,
                                "sandwich not strict at tau=" +
                                    std::to_string(tau) +
                                    " ne=" + std::to_string(ne));
                }
    });

    criterion(5, "log-sum bound tightens the general bound", [&] {
        for (double tau : taus)
            for (double n : inputs)
                for (double ne : envs)
                    for (double r : {0.0, 0.5, 1.0}) {
                        const NoiseSpec noise{ne, r, 0.7};
                        require(log_sum_upper(tau, n, noise) <=
                                    general_upper(tau, n, noise) + 1e-12,
                                "log-sum above general at tau=" +
                                    std::to_string(tau));
                    }
    });

    criterion(6, "beamsplitter QEPI holds on the default grid", [] {
        const QepiReport report =
            check_beamsplitter_qepi(default_beamsplitter_grid());
        require(report.min_slack >= -1e-9,
                "min slack " + std::to_string(report.min_slack));
        for (double n : {0.0, 0.5, 1.0, 2.0, 4.0, 10.0}) {
            QepiGridSpec pair;
            for (int i = 1; i <= 9; ++i)
                pair.mixing.push_back(0.1 * i);
            pair.family1.emplace_back(n, 0.0, 0.0);
            pair.family2.emplace_back(n, 0.0, 0.0);
            for (const QepiPoint& p :
                 check_beamsplitter_qepi(pair).points)
                require(std::fabs(*p.exp_slack) < 1e-10,
                        "equal-thermal slack not zero at n=" +
                            std::to_string(n));
        }
    });

    criterion(7, "amplifier QEPI holds; vacuum point slack is exactly 1", [] {
        const QepiReport report =
            check_amplifier_qepi(default_amplifier_grid());
        require(report.min_slack >= -1e-9,
                "min slack " + std::to_string(report.min_slack));
        QepiGridSpec vac;
        vac.mixing = {2.0};
        vac.family1.emplace_back();
        vac.family2.emplace_back();
        const double slack =
            *check_amplifier_qepi(vac).points.at(0).exp_slack;
        require(std::fabs(slack - 1.0) <= 1e-10,
                "vacuum slack " + std::to_string(slack));
    });

    criterion(8, "theorem chain inequality and product additivity", [] {
        std::vector<CovarianceMatrix> states;
        for (double n : {0.0, 0.5, 1.0, 2.0, 4.0, 10.0})
            states.push_back(thermal_cov(n));
        states.push_back(general_noise_cov({0.0, 1.0, 0.4}));
        states.push_back(general_noise_cov({2.0, -0.8, 1.2}));
        for (double n_th : {1.0, 4.0})
            for (double r : {0.0, 1.0}) {
                const ChainReport report =
                    theorem_chain_check(0.5, {n_th, r, 0.0}, states, 8);
                require(report.min_slack >= -1e-12,
                        "chain slack negative at n_th=" +
                            std::to_string(n_th) + " r=" + std::to_string(r));
                require(report.additivity_max_dev <= 1e-10,
                        "product additivity deviates by " +
                            std::to_string(report.additivity_max_dev));
            }
    });

    criterion(9, "limit behavior at tau -> 1 and tau = 0", [] {
        // tau -> 1 along a pure-loss sweep: every bound reaches g(N).
        for (double n : {1.0, 5.0, 20.0}) {
            SweepRequest req;
            req.variable = SweepVariable::Tau;
            req.start = 0.5;
            req.stop = 1.0 - 1e-9;
            req.steps = 2;
            req.base = ChannelSpec::beamsplitter(0.5, NoiseSpec{});
            req.n_in = n;
            const BoundSet last = run_sweep(req).back().bounds;
            const double expected = g(n);
            for (const auto* f : {&last.holevo, &last.sk_upper,
                                  &last.general_upper, &last.log_sum_upper})
                require(std::fabs(**f - expected) < 1e-9,
                        "bound does not reach g(N) at tau = 1 - 1e-9");
        }
        // tau = 0 with thermal noise: holevo exactly 0, general within 1e-12.
        for (double n_th : {0.0, 1.0, 4.0})
            for (double n : {1.0, 20.0}) {
                const NoiseSpec noise{n_th, 0.0, 0.3};
                const double n_env =
                    mean_photon_number(general_noise_cov(noise));
                require(holevo_thermal(0.0, n, n_env) == 0.0,
                        "holevo not exactly 0 at tau = 0");
                require(std::fabs(general_upper(0.0, n, noise)) < 1e-12,
                        "general bound not 0 at tau = 0");
            }
    });

    criterion(10, "amplifier bound reduces to its thermal closed form", [] {
        for (double kappa : linspace(1.1, 5.0, 12))
            for (double n : linspace(0.0, 20.0, 10))
                for (double ne : linspace(0.0, 5.0, 10)) {
                    const double got =
                        amplifier_general_upper(kappa, n, {ne, 0.0, 0.7});
                    const double expected =
                        g(kappa * n + (kappa - 1.0) * (ne + 1.0)) -
                        (kappa - 1.0) / (2.0 * kappa - 1.0) * g(ne);
                    require(std::fabs(got - expected) < 1e-12,
                            "mismatch at kappa=" + std::to_string(kappa));
                }
    });

    criterion(11, "committed sweep configs reproduce byte-identically", [&] {
        require(!cli.empty() && !configs.empty(),
                "usage: gcap_acceptance <cli> <configs-dir>");
        for (const std::string fig : {"fig2a", "fig2b"}) {
            const std::string cfg = configs + "/" + fig + ".cfg";
            const std::string out1 = "acc_" + fig + "_run1.csv";
            const std::string out2 = "acc_" + fig + "_run2.csv";
            for (const std::string& out : {out1, out2})
                require(run_cli(cli + " sweep --config " + cfg + " --out " +
                                out + " >/dev/null") == 0,
                        "sweep run failed for " + cfg);
            require(slurp(out1) == slurp(out2),
                    fig + " runs are not byte-identical");
        }
        // fig2b rows: holevo <= general_upper <= g(tau N + (1-tau) N_E).
        const NoiseSpec noise{4.0, 1.0, 0.0};
        const double n_env = mean_photon_number(general_noise_cov(noise));
        std::istringstream is(slurp("acc_fig2b_run1.csv"));
        std::string line;
        std::getline(is, line);  // units comment
        std::getline(is, line);  // header
        int rows = 0;
        while (std::getline(is, line)) {
            double tau, holevo, sk, general, log_sum;
            require(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &tau,
                                &holevo, &sk, &general, &log_sum) == 5,
                    "unparseable row: " + line);
            const double first = g(tau * 20.0 + (1.0 - tau) * n_env);
            require(holevo <= general + 1e-12,
                    "general below holevo at tau=" + std::to_string(tau));
            require(general <= first + 1e-12,
                    "general above max-entropy term at tau=" +
                        std::to_string(tau));
            ++rows;
        }
        require(rows == 49, "expected 49 data rows in fig2b replica");
    });

    if (failures != 0) {
        std::printf("%d of 11 criteria FAILED\n", failures);
        return 1;
    }
    std::printf("all 11 criteria passed\n");
    return 0;
}
