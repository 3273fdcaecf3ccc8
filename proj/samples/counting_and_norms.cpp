// Norms, counting functions and the separated-symbol sweep for a Moebius x z^2 symbol.

#include <holocomp/analytic.hpp>
#include <holocomp/disc_criteria.hpp>
#include <holocomp/nevanlinna.hpp>

#include <iostream>

using namespace holocomp;

int main()
{
    const WeightPair a(0.25, 0.25);
    TaylorGrid2D f(2, 1);
    f(1, 0) = 1.0;
    f(2, 1) = cplx(0.5, -0.25);
    std::cout << "coefficient norm      " << dirichlet_norm_coeff(f, a) << '\n'
              << "integral energy       " << dirichlet_energy_integral(f, a).value << '\n';

    const auto phi1 = DiscSymbol::moebius(0.5);
    const auto phi2 = DiscSymbol::polynomial({0.0, 0.0, 1.0});
    std::cout << "N_{z^2,1/4}(0.25)     " << counting_function(phi2, 0.25, 0.25) << '\n';

    const auto expansion = verify_separated_norm_expansion({phi1, phi2}, a, f);
    std::cout << "|C_Phi f|^2 series    " << expansion.total_series << '\n'
              << "|C_Phi f|^2 counting  " << expansion.total_counting << " (gap " << expansion.gap << ")\n";

    const auto v = separated_verdict(BidiscSymbol::separated(phi1, phi2), a);
    std::cout << "separated verdict     " << to_string(v.verdict) << " (sups " << v.sup1() << ", " << v.sup2() << ")\n";
}
