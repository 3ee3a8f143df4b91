// Compares the serial and OpenMP paths of the two parallel kernels: the
// error-table cell evaluation and the RANSAC hypothesis search.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "gravity/fit.hpp"
#include "gravity/sim.hpp"

using namespace gravity;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

void bench_table() {
    TableOptions options;
    options.parallel = false;
    auto t0 = clock_type::now();
    const Eigen::MatrixXd serial = appendix_error_table(options);
    const double t_serial = seconds_since(t0);

    options.parallel = true;
    t0 = clock_type::now();
    const Eigen::MatrixXd parallel = appendix_error_table(options);
    const double t_parallel = seconds_since(t0);

    const double diff = (serial - parallel).cwiseAbs().maxCoeff();
    std::printf("error_table   serial %.3fs  parallel %.3fs  speedup %.2fx  max_diff %.3g\n",
                t_serial, t_parallel, t_serial / t_parallel, diff);
}

void bench_ransac() {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> noise(0.0, 0.5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<TimedValue> samples;
    for (int i = 0; i < 2000; ++i) {
        const double t = i / 240.0;
        double y = -1200.0 * t * t + 300.0 * t + 400.0 + noise(rng);
        if (unit(rng) < 0.2) y += 50.0;
        samples.push_back({t, y});
    }

    RansacParams params;
    params.iterations = 20000;
    params.seed = 99;

    params.parallel = false;
    auto t0 = clock_type::now();
    const ParabolaFit serial = fit_parabola_ransac(samples, params);
    const double t_serial = seconds_since(t0);

    params.parallel = true;
    t0 = clock_type::now();
    const ParabolaFit parallel = fit_parabola_ransac(samples, params);
    const double t_parallel = seconds_since(t0);

    std::printf("ransac        serial %.3fs  parallel %.3fs  speedup %.2fx  c2_diff %.3g\n",
                t_serial, t_parallel, t_serial / t_parallel,
                std::abs(serial.c2 - parallel.c2));
}

}  // namespace

int main() {
    bench_table();
    bench_ransac();
    return 0;
}
