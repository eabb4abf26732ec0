// Runs the default entropy-power-inequality grids and prints the minimum
// slack of each form together with the grid point where it occurs.

#include <cstdio>

#include "gcap/qepi.hpp"

namespace {

void show(const char* name, const gcap::QepiReport& report) {
    const gcap::QepiPoint& p = report.points.at(report.argmin);
    std::printf("%-14s points=%5zu  min slack=%+.3e  at mix=%.2f "
                "(n1=%.1f r1=%.1f | n2=%.1f r2=%.1f)%s\n",
                name, report.points.size(), report.min_slack, p.mixing,
                p.in1.n_th, p.in1.r, p.in2.n_th, p.in2.r,
                report.violation ? "  VIOLATION" : "");
}

} // namespace

int main() {
    using namespace gcap;
    show("beamsplitter", check_beamsplitter_qepi(default_beamsplitter_grid()));
    show("amplifier", check_amplifier_qepi(default_amplifier_grid()));
    show("entropic", check_entropic_form(default_beamsplitter_grid()));
    return 0;
}
