#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace muskat {

// Compensated (Kahan) accumulator. Every inner quadrature reduction in the
// project runs through one of these in a fixed iteration order, so reruns
// are bit-identical regardless of thread count.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

// Requested worker count for data-parallel outer loops. 0 = auto.
void set_thread_count(int n);
int thread_count();

// Static partition of [0, count) across workers. Each index is written by
// exactly one worker, so results do not depend on the thread count.
void parallel_for(int count, const std::function<void(int)>& body);
// Range form: each worker receives one contiguous [begin, end) block.
void parallel_for(int count, const std::function<void(int, int)>& body);

}  // namespace muskat
