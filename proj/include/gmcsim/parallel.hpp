#pragma once

namespace gmc {

// Worker count for OpenMP kernels. 0 means "all hardware threads", 1 runs the
// serial reference path. All kernels produce bit-identical results at any
// setting; parallelism only reorders independent work items.
void set_jobs(int jobs);
int jobs();
int effective_threads();

}  // namespace gmc
