#include <benchmark/benchmark.h>

// Local main instead of benchmark::benchmark_main: the distro's static
// benchmark_main archive ships LTO bytecode tied to one compiler minor
// version, which breaks linking with any other; the shared core library
// has no such coupling.
BENCHMARK_MAIN();
