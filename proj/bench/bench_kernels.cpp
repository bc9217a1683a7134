// Timing comparison of the OpenMP kernels against their serial reference
// implementations: information-matrix accumulation, equivalence-certificate
// sweep, and quadrature verification.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "groupdesign/criteria.hpp"
#include "groupdesign/design.hpp"
#include "groupdesign/model.hpp"

using namespace groupdesign;

namespace {

template <typename F>
double time_ms(F&& f, int repeats = 3) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-28s %10.2f ms %10.2f ms %8.2fx\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; both columns run the serial path\n");
#endif
  std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

  {
    const Model model = Model::sphere2_x_so3(2, 1);  // D = 90
    const Design grid = product_design(sphere2_grid(4, 6, AngleConvention::Endpoints),
                                       euler_grid(6, 4, 6, AngleConvention::Endpoints));
    ComplexMatrix m;
    const double ts = time_ms([&] { m = information_matrix_serial(grid, model); });
    const double tp = time_ms([&] { m = information_matrix(grid, model); });
    report("info_matrix product D=90", ts, tp);
  }
  {
    const Model model = Model::sphere3(4);  // D = 55
    const Design d = haar_sample(model.manifold(), 20000, 7);
    ComplexMatrix m;
    const double ts = time_ms([&] { m = information_matrix_serial(d, model); });
    const double tp = time_ms([&] { m = information_matrix(d, model); });
    report("info_matrix s3 n=20000", ts, tp);
  }
  {
    const Model model = Model::so3(2);  // D = 35
    const Design d = euler_grid(10, 6, 10);
    const SelectionSet sel = SelectionSet::full(model);
    const Design test = certificate_test_points(d, 11, 4096);
    CertificateReport rep;
    const double ts =
        time_ms([&] { rep = equivalence_certificate_serial(d, model, sel, -1.0, test); });
    const double tp = time_ms([&] { rep = equivalence_certificate(d, model, sel, -1.0, test); });
    report("certificate so3 4k points", ts, tp);
  }
  {
    const Model model = Model::sphere3(5);
    const Design d = haar_sample(model.manifold(), 20000, 13);
    LambdaReport rep;
    const double ts = time_ms([&] { rep = verify_lambda_serial(d, model); });
    const double tp = time_ms([&] { rep = verify_lambda(d, model); });
    report("verify_lambda s3 n=20000", ts, tp);
  }
  return 0;
}
