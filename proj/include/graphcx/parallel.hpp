#pragma once

namespace gcx {

// Worker-pool width for the OpenMP kernels. 0 = runtime default, 1 = serial.
// Outputs are bit-identical regardless of the width (all merges are
// canonical-ordered).
void set_parallelism(int width);
int parallelism();

}  // namespace gcx
