#include "gmcsim/parallel.hpp"

#include <omp.h>

namespace gmc {

namespace {
int g_jobs = 0;
}

void set_jobs(int j) { g_jobs = j < 0 ? 0 : j; }

int jobs() { return g_jobs; }

int effective_threads() { return g_jobs == 0 ? omp_get_max_threads() : g_jobs; }

}  // namespace gmc
