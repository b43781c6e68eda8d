#pragma once

#include <cstddef>
#include <string_view>

#include "chemo/grid.hpp"

namespace chemo {

enum class Mode { ParabolicParabolic, ParabolicElliptic };

std::string_view to_string(Mode mode);

/// Snapshot of the evolution. Steps return new snapshots; a SimState is never
/// mutated after it has been handed out.
struct SimState {
  Field u;
  Field v;
  double t = 0;
  double dt = 0;  ///< last step taken (0 before the first step)
  Mode mode = Mode::ParabolicParabolic;
  std::size_t steps = 0;

  SimState(Field u_, Field v_, Mode m) : u(std::move(u_)), v(std::move(v_)), mode(m) {}
};

}  // namespace chemo
