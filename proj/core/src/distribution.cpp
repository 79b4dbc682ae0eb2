#include "salss/distribution.hpp"

#include <cmath>
#include <sstream>

namespace salss {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

double sample(const DistributionSpec& dist, SplitMix64& rng) {
    return std::visit(Overloaded{
                          [&](const Uniform& d) { return d.lo + rng.uniform01() * (d.hi - d.lo); },
                          [](const Constant& d) { return d.value; },
                          [&](const Exponential& d) { return -std::log(1.0 - rng.uniform01()) / d.rate; },
                      },
                      dist);
}

std::optional<std::string> check(const DistributionSpec& dist) {
    return std::visit(Overloaded{
                          [](const Uniform& d) -> std::optional<std::string> {
                              if (!std::isfinite(d.lo) || !std::isfinite(d.hi)) {
                                  return "uniform bounds must be finite";
                              }
                              if (d.lo < 0.0) {
                                  return "uniform lower bound must be >= 0";
                              }
                              if (!(d.lo < d.hi)) {
                                  return "uniform requires lo < hi";
                              }
                              return std::nullopt;
                          },
                          [](const Constant& d) -> std::optional<std::string> {
                              if (!std::isfinite(d.value) || d.value < 0.0) {
                                  return "constant delay must be finite and >= 0";
                              }
                              return std::nullopt;
                          },
                          [](const Exponential& d) -> std::optional<std::string> {
                              if (!std::isfinite(d.rate) || !(d.rate > 0.0)) {
                                  return "exponential rate must be > 0";
                              }
                              return std::nullopt;
                          },
                      },
                      dist);
}

std::string describe(const DistributionSpec& dist) {
    std::ostringstream os;
    std::visit(Overloaded{
                   [&](const Uniform& d) { os << "Uni(" << d.lo << ", " << d.hi << ")"; },
                   [&](const Constant& d) { os << "Const(" << d.value << ")"; },
                   [&](const Exponential& d) { os << "Exp(" << d.rate << ")"; },
               },
               dist);
    return os.str();
}

}  // namespace salss
