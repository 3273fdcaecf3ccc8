// Carleson boxes, the one-box sweep and Bessel capacities for the identity symbol.

#include <holocomp/capacity.hpp>
#include <holocomp/carleson.hpp>

#include <iostream>

using namespace holocomp;

int main()
{
    const CarlesonBox box{0.0, 0.0, 0.5, 0.5};
    const BoxVolume v = box_volume(box, 0.0);
    std::cout << "V_0(S)                " << v.value << " (Monte Carlo " << v.monte_carlo.value << ")\n";

    const PsiReport psi = psi_admissibility(psi_power(1.0));
    std::cout << "psi(t) = t            " << to_string(psi.verdict) << ", integral " << psi.value << '\n';

    const PullbackMeasure m{BidiscSymbol::identity(), 0.0, 200000, 1};
    const OneBoxReport one = one_box_sufficient_check(m, psi_power(1.0));
    std::cout << "one-box verdict       " << to_string(one.verdict) << '\n';

    const TorusGrid grid{32};
    const RectUnion quarter{{{0.0, 0.0, pi / 2, pi / 2}}};
    const CapacityResult cap = capacity(grid, quarter);
    std::cout << "Cap(quarter arc box)  " << cap.value << " (lower bound " << cap.lower_bound << ")\n";

    const auto sweep = capacity_condition_check(m, dyadic_single_box_families(6), grid);
    std::cout << "capacity condition    " << to_string(sweep.verdict) << ", ratios";
    for (double r : sweep.profile) std::cout << ' ' << r;
    std::cout << '\n';
}
