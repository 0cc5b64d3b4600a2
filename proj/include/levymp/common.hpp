// Shared small utilities: dense vectors/matrices, deterministic reductions,
// thread partitioning, empirical statistics, hashing, interpolation tables.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace levymp {

using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vec& a) { return dot(a, a); }
inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }

inline Vec vec1(double x) { return Vec{x}; }

std::vector<double> linspace(double lo, double hi, int n);

// Dense row-major matrix; only the small operations this project needs.
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, fill) {}

    static Mat identity(int n);
    static Mat diag(const Vec& d);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    bool is_symmetric(double tol = 1e-12) const;

    // Eigenvalues of a symmetric matrix (cyclic Jacobi), ascending.
    std::vector<double> sym_eigenvalues() const;

    // Spectral norm of a symmetric matrix: max |eigenvalue|.
    double sym_spectral_norm() const;

    Vec apply(const Vec& x) const;
    double quad_form(const Vec& xi) const;       // xi . (A xi)
    double trace_product(const Mat& b) const;    // tr(A b)

private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

// ---------------------------------------------------------------------------
// Errors

struct LevympError : std::runtime_error {
    explicit LevympError(const std::string& msg) : std::runtime_error(msg) {}
};

struct QuadratureError : LevympError {
    QuadratureError(const std::string& msg, double partial_sum, double err_estimate)
        : LevympError(msg + " (partial sum " + std::to_string(partial_sum) +
                      ", error estimate " + std::to_string(err_estimate) + ")"),
          partial(partial_sum), error_estimate(err_estimate) {}
    double partial;
    double error_estimate;
};

struct BlowUpError : LevympError {
    BlowUpError(double t, std::size_t path)
        : LevympError("path state exceeded the blow-up guard at t=" + std::to_string(t) +
                      " (path " + std::to_string(path) + ")"),
          time(t), path_index(path) {}
    double time;
    std::size_t path_index;
};

struct ConfigError : LevympError {
    explicit ConfigError(const std::string& msg) : LevympError(msg) {}
};

struct PreconditionError : LevympError {
    explicit PreconditionError(const std::string& msg) : LevympError(msg) {}
};

// ---------------------------------------------------------------------------
// Threading. Results must not depend on the partition, so workers write to
// disjoint slots and reductions happen afterwards in index order.

int thread_count();
void set_thread_count(int n);

// Runs fn(begin, end) over a partition of [0, n) across worker threads.
void parallel_for_blocks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

// Deterministic pairwise summation (independent of thread count).
double pairwise_sum(std::span<const double> xs);

struct MeanSE {
    double mean = 0.0;
    double se = 0.0;  // standard error of the mean
    std::size_t n = 0;
};
MeanSE mean_se(std::span<const double> xs);

// ---------------------------------------------------------------------------
// Empirical distribution helpers

double ks_two_sample(std::vector<double> a, std::vector<double> b);
double ks_one_sample(std::vector<double> a, const std::function<double(double)>& cdf);

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// ---------------------------------------------------------------------------
// Hashing (FNV-1a/64) for reproducibility metadata

std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h = 0xcbf29ce484222325ULL);
std::string hash_hex(std::uint64_t h);

struct HashAccumulator {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    void add_bytes(const void* data, std::size_t len) { h = fnv1a(data, len, h); }
    void add(double x) { add_bytes(&x, sizeof x); }
    void add(std::uint64_t x) { add_bytes(&x, sizeof x); }
    void add(const std::string& s) { add_bytes(s.data(), s.size()); }
    std::string hex() const { return hash_hex(h); }
};

// ---------------------------------------------------------------------------
// Cubic interpolation on a uniform grid (Catmull-Rom, clamped ends).
// Used to cache expensive pointwise-defined functions on dense grids.

class UniformTable {
public:
    UniformTable() = default;
    UniformTable(double lo, double hi, std::vector<double> values);

    double operator()(double x) const;
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    bool empty() const { return values_.empty(); }

    static UniformTable tabulate(double lo, double hi, int n,
                                 const std::function<double(double)>& f);

private:
    double lo_ = 0.0, hi_ = 0.0, h_ = 1.0;
    std::vector<double> values_;
};

}  // namespace levymp
