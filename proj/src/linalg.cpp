#include "atomtopo/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>
#include <vector>

#include <cblas.h>
#include <lapacke.h>

namespace atomtopo {

namespace {

std::atomic<int> g_threads{0};

EigenSystem eig_lapack(const MatXc& m, bool want_vectors) {
    const lapack_int n = static_cast<lapack_int>(m.rows());
    MatXc a = m;  // overwritten by zgeev
    EigenSystem es;
    es.values.resize(n);
    MatXc vr;
    if (want_vectors) vr.resize(n, n);
    const lapack_int info = LAPACKE_zgeev(
        LAPACK_COL_MAJOR, 'N', want_vectors ? 'V' : 'N', n, reinterpret_cast<lapack_complex_double*>(a.data()),
        n, reinterpret_cast<lapack_complex_double*>(es.values.data()), nullptr, 1,
        want_vectors ? reinterpret_cast<lapack_complex_double*>(vr.data()) : nullptr, want_vectors ? n : 1);
    if (info != 0) throw ConvergenceError("zgeev failed with info = " + std::to_string(info));
    if (want_vectors) es.vectors = std::move(vr);
    return es;
}

}  // namespace

EigenSystem eig(const MatXc& m, bool want_vectors) {
    if (m.rows() != m.cols()) throw DomainError("eig: matrix must be square");
    if (m.rows() > 16) return eig_lapack(m, want_vectors);
    Eigen::ComplexEigenSolver<MatXc> solver(m, want_vectors);
    if (solver.info() != Eigen::Success) throw ConvergenceError("eig: Eigen solver did not converge");
    EigenSystem es;
    es.values = solver.eigenvalues();
    if (want_vectors) {
        es.vectors = solver.eigenvectors();
        for (Eigen::Index j = 0; j < es.vectors.cols(); ++j) es.vectors.col(j).normalize();
    }
    return es;
}

VecXc eigenvalues(const MatXc& m) { return eig(m, false).values; }

void multiply(const MatXc& a, const MatXc& b, MatXc& out) {
    if (a.cols() != b.rows()) throw DomainError("multiply: inner dimensions differ");
    out.resize(a.rows(), b.cols());
    const cd one(1.0), zero(0.0);
    const auto m = static_cast<blasint>(a.rows()), k = static_cast<blasint>(a.cols());
    if (b.cols() == 1) {
        cblas_zgemv(CblasColMajor, CblasNoTrans, m, k, &one, a.data(), m, b.data(), 1, &zero, out.data(), 1);
    } else {
        cblas_zgemm(CblasColMajor, CblasNoTrans, CblasNoTrans, m, static_cast<blasint>(b.cols()), k, &one, a.data(), m,
                    b.data(), k, &zero, out.data(), m);
    }
}

void sort_by_real(EigenSystem& es) {
    const Eigen::Index n = es.values.size();
    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index i, Eigen::Index j) { return es.values[i].real() < es.values[j].real(); });
    VecXc v(n);
    MatXc vec(es.vectors.rows(), es.vectors.cols());
    for (Eigen::Index j = 0; j < n; ++j) {
        v[j] = es.values[order[j]];
        if (es.vectors.size()) vec.col(j) = es.vectors.col(order[j]);
    }
    es.values = v;
    if (es.vectors.size()) es.vectors = vec;
}

void set_num_threads(int n) { g_threads = std::max(0, n); }

int num_threads() {
    const int n = g_threads.load();
    if (n > 0) return n;
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(int n, const std::function<void(int)>& f) {
    const int workers = std::min(num_threads(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next++; i < n; i = next++) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace atomtopo
