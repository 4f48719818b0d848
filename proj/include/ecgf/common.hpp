#pragma once
// Shared plumbing: evaluation results with error bounds, the error taxonomy
// used across the library (domain violations vs. resource limits), and a
// small thread-pool helper for embarrassingly parallel grids.

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace ecgf {

// A numeric evaluation result together with an estimated absolute error
// bound on |value - true value|.
struct ComplexEval {
    std::complex<double> value{0.0, 0.0};
    double abs_error = 0.0;
};

// Violations of resource limits (enumeration sizes, iteration caps).
// Kept distinct from std::domain_error so the CLI can map the two classes
// to different exit codes.
class resource_error : public std::runtime_error {
  public:
    explicit resource_error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

// Run body(i) for i in [0, n). jobs <= 0 selects the process default (see
// set_default_jobs), which in turn falls back to the hardware thread count.
// The body must be safe to run concurrently for distinct indices.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& body);

// Process-wide worker cap used by parallel_for when a call site passes
// jobs <= 0.  0 restores the hardware default.  Thread safe.
void set_default_jobs(int jobs);
int default_jobs();

}  // namespace ecgf
