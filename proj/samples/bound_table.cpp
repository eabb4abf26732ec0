// Prints the capacity bounds of a squeezed-noise beamsplitter channel next
// to its thermal (r = 0) counterpart, for a handful of input photon numbers.

#include <cstdio>

#include "gcap/bounds.hpp"

int main() {
    using namespace gcap;

    const NoiseSpec squeezed{4.0, 1.0, 0.0};
    const NoiseSpec thermal{4.0, 0.0, 0.0};

    std::printf("%10s %14s %14s %14s %14s\n", "n_in", "holevo",
                "general(r=1)", "general(r=0)", "log_sum(r=1)");
    for (double n_in : {0.0, 1.0, 5.0, 10.0, 20.0}) {
        const BoundSet sq = evaluate_bound_set(
            ChannelSpec::beamsplitter(0.5, squeezed), n_in);
        const BoundSet th = evaluate_bound_set(
            ChannelSpec::beamsplitter(0.5, thermal), n_in);
        std::printf("%10.2f %14.8f %14.8f %14.8f %14.8f\n", n_in, *sq.holevo,
                    *sq.general_upper, *th.general_upper, *sq.log_sum_upper);
    }
    return 0;
}
