#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace dce {

/// LU factorization of a complex tridiagonal matrix with partial pivoting
/// (the zgttrf/zgttrs scheme). Row interchanges introduce a second
/// superdiagonal, kept in `upper2_`.
class TridiagonalLU {
public:
    using Complex = std::complex<double>;

    /// `lower` and `upper` have size n - 1, `diagonal` size n. Throws
    /// std::runtime_error when the matrix is singular to working precision.
    TridiagonalLU(std::span<const Complex> lower,
                  std::span<const Complex> diagonal,
                  std::span<const Complex> upper);

    std::size_t size() const noexcept { return diag_.size(); }

    /// Solves A x = b in place.
    void solve(std::span<Complex> rhs) const;

private:
    std::vector<Complex> lower_;
    std::vector<Complex> diag_;
    std::vector<Complex> upper_;
    std::vector<Complex> upper2_;
    std::vector<unsigned char> swapped_;
};

}  // namespace dce
