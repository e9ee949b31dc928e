#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace callias {

// Worker cap; 0 means "CALLIAS_THREADS or hardware concurrency".
void set_thread_count(int n);
int thread_count();

// Runs body(i) for i in [0, count) over a static block partition.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

// Fixed-order pairwise summation; result does not depend on thread count.
double pairwise_sum(const std::vector<double>& v);
std::complex<double> pairwise_sum(const std::vector<std::complex<double>>& v);

}  // namespace callias
