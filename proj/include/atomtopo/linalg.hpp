#pragma once

#include <functional>

#include "atomtopo/types.hpp"

namespace atomtopo {

struct EigenSystem {
    VecXc values;
    MatXc vectors;  // right eigenvectors, unit 2-norm columns
};

// General complex eigenproblem. Small matrices use Eigen, larger ones LAPACK zgeev.
EigenSystem eig(const MatXc& m, bool want_vectors = true);
VecXc eigenvalues(const MatXc& m);

// out = a * b through BLAS (zgemv for a single column).
void multiply(const MatXc& a, const MatXc& b, MatXc& out);

// Reorders an eigensystem by ascending real part.
void sort_by_real(EigenSystem& es);

// Worker count used by parallel_for; 0 means hardware concurrency.
void set_num_threads(int n);
int num_threads();

// Runs f(i) for i in [0, n). Each index is processed exactly once, so callers
// writing into slot i of a pre-sized container get deterministic output.
void parallel_for(int n, const std::function<void(int)>& f);

}  // namespace atomtopo
