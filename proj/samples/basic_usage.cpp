#include <iostream>

#include "assoc2x2/assoc2x2.hpp"

int main() {
    using namespace assoc2x2;

    const ProbTable t = make_table(40, 10, 20, 30);
    std::cout << "odds-ratio " << odds_ratio(t) << ", Y " << yule_y(t) << ", HS4 " << hs(t) << '\n';

    const MarginCoords c = theta(t);
    std::cout << "coordinates " << c.x << ' ' << c.y << ' ' << c.z << '\n';
    std::cout << "margin representative p00 " << margin_representative(t).p00() << '\n';

    std::cout << "magic odds-ratio " << magic_odds_ratio() << '\n';
    for (const auto& cp : critical_points(40.0)) {
        std::cout << to_string(cp.branch) << ' ' << to_string(cp.classification) << ':';
        for (double p : cp.table.cells()) std::cout << ' ' << p;
        std::cout << '\n';
    }
}
