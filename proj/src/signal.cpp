#include "sdsc/signal.hpp"

#include <sstream>

namespace sdsc {

std::string describe(const PerturbationSpec &spec) {
  std::ostringstream out;
  std::visit(
      [&](const auto &p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, perturbation::Invert>) {
          out << "invert";
        } else if constexpr (std::is_same_v<P, perturbation::Scale>) {
          out << "scale(" << p.factor << ")";
        } else if constexpr (std::is_same_v<P, perturbation::Shift>) {
          out << "shift(" << p.offset << ")";
        } else if constexpr (std::is_same_v<P, perturbation::Zero>) {
          out << "zero";
        } else if constexpr (std::is_same_v<P, perturbation::AddNoise>) {
          out << "add_noise(sigma=" << p.sigma << ", seed=" << p.seed << ")";
        } else {
          out << "jitter(sigma=" << p.sigma << ", seed=" << p.seed << ")";
        }
      },
      spec);
  return out.str();
}

} // namespace sdsc
