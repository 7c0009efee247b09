// Compares f(N2) - f(N1) with the divided-difference representation and the
// certified Lipschitz bound for one random pair of normal matrices.
#include <cstdio>

#include "opcalc/opcalc.hpp"

int main() {
    using namespace opcalc;
    Rng rng(2024);
    const TrigPolynomial f = random_trig_polynomial(0.5, 3.0, 8, 7);
    const NormalPair pair = independent_pair(5, {}, rng);

    const CMatrix direct = apply_function(f, pair.second) - apply_function(f, pair.first);
    const CMatrix formula = difference_formula(f, pair.second, pair.first);
    const double lhs = operator_norm(direct);
    const double rhs = certified_lipschitz_constant(f) * operator_norm(pair.difference());

    std::printf("identity residual   %.3e\n", operator_norm(direct - formula));
    std::printf("||f(N2) - f(N1)||   %.6f\n", lhs);
    std::printf("L * ||N2 - N1||     %.6f\n", rhs);
    return lhs <= rhs ? 0 : 1;
}
