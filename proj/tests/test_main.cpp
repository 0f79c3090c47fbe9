#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <omp.h>

int main(int argc, char** argv) {
  // Run the parallel kernels with several threads even on a single core.
  if (omp_get_max_threads() < 4) omp_set_num_threads(4);
  doctest::Context context(argc, argv);
  return context.run();
}
