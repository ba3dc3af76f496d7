// Copyright 2026 The qedge Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#include "qedge/exact.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <mutex>
#include <thread>

#include "qedge/alloc.hpp"

namespace qedge {

namespace {

// Totals closer than this are a tie; enumeration runs reach the same value
// along different summation paths.
bool same_total(double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

struct Candidate {
    double total = 0.0;
    Placement placement;
    Allocation allocation;
};

void consider(std::optional<Candidate>& best, Candidate cand) {
    if (!best || better_candidate(cand.total, cand.placement, best->total, best->placement)) {
        best = std::move(cand);
    }
}

// Visits the Gray-code sequence positions [first, last).
std::optional<Candidate> scan(const ProblemInstance& inst, std::uint64_t first, std::uint64_t last) {
    std::optional<Candidate> best;
    Placement z(inst.n);
    for (std::uint64_t k = first; k < last; ++k) {
        const std::uint64_t code = k ^ (k >> 1);
        for (std::size_t j = 0; j < inst.n; ++j) z.z[j] = static_cast<std::uint8_t>((code >> j) & 1u);
        if (placement_cost(inst, z) > inst.budget) continue;
        auto alloc = solve_allocation(inst, z);
        const double total = placement_cost(inst, z) + alloc.objective;
        consider(best, {total, z, std::move(alloc.allocation)});
    }
    return best;
}

}  // namespace

bool better_candidate(double total_a, const Placement& a, double total_b, const Placement& b) {
    if (!same_total(total_a, total_b)) return total_a < total_b;
    if (a.open_count() != b.open_count()) return a.open_count() < b.open_count();
    return a.z < b.z;
}

Solution enumerate_solve(const ProblemInstance& inst, const ExactOptions& options) {
    if (inst.n > options.max_n) {
        throw_capacity("enumerate_solve: n = " + std::to_string(inst.n) + " exceeds the enumeration limit " +
                       std::to_string(options.max_n) + "; use the ADMM method for larger instances");
    }
    const std::uint64_t count = std::uint64_t{1} << inst.n;
    const unsigned workers =
        static_cast<unsigned>(std::clamp<std::uint64_t>(options.threads, 1, std::max<std::uint64_t>(1, count / 64)));

    std::optional<Candidate> best;
    if (workers <= 1) {
        best = scan(inst, 0, count);
    } else {
        std::vector<std::optional<Candidate>> partial(workers);
        std::vector<std::thread> pool;
        std::exception_ptr failure;
        std::mutex failure_mutex;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    partial[w] = scan(inst, count * w / workers, count * (w + 1) / workers);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
        for (auto& p : partial) {
            if (p) consider(best, std::move(*p));
        }
    }
    // z = 0 always fits (budget >= 0), so best is set.
    Solution s;
    s.placement = std::move(best->placement);
    s.allocation = std::move(best->allocation);
    s.cost = total_objective(inst, s);
    return s;
}

}  // namespace qedge
