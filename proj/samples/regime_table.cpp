// Prints the alpha breakpoints of one (beta, gamma) point per regime, at
// unlimited backhaul and at R_BS = n^0.2.

#include <iostream>

#include "hybridcap/hybridcap.hpp"

int main() {
  using namespace hybridcap;
  const Extended<double> etas[] = {Extended<double>::pos_inf(), Extended<double>(0.2)};
  const std::pair<double, double> points[] = {{0.2, 0.1}, {0.3, 0.3}, {0.3, 0.4}, {0.6, 0.3}, {0.6, 0.4}};
  for (const auto& eta : etas) {
    std::cout << "eta = " << to_string(eta, [](double v) { return format_number(v); }) << "\n";
    for (auto [beta, gamma] : points) {
      std::cout << "  beta=" << beta << " gamma=" << gamma << "  regime " << to_string(classify_regime_3d(beta, gamma, eta))
                << "\n";
      for (const auto& iv : alpha_breakpoints(beta, gamma, eta)) {
        std::cout << "    alpha " << (iv.lo_closed ? "[" : "(") << format_number(iv.lo) << ", "
                  << (iv.hi.is_pos_inf() ? std::string("inf") : format_number(iv.hi.value())) << "): " << to_string(iv.scheme)
                  << "  e = " << to_string(iv.formula) << "\n";
      }
    }
  }
}
