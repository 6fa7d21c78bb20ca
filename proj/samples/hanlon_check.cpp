// Compare the top homology of Q_n(C_3) computed from the posets with the
// closed form, degree by degree, and print the dimensions.
#include <cstdlib>
#include <iostream>

#include "dowling/dowling.hpp"

int main()
{
    using namespace dowling;
    const auto G = cyclic_group(3);
    const auto report = verify(theorem_id::hanlon, G, "c3", 4, 0, 4);
    for (const auto &deg : report.degrees) {
        std::cout << "n=" << deg.degree << (deg.equal ? " agrees" : " differs") << '\n';
    }
    for (int n = 1; n <= 4; ++n) {
        const dowling_poset D({family_kind::Q, 0}, G, n);
        std::cout << "|mu(Q_" << n << ")| = " << std::abs(mobius_bottom_top(D.P())) << '\n';
    }
    return report.ok() ? 0 : 1;
}
