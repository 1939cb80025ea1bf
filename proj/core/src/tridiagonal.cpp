#include "dce/tridiagonal.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace dce {

TridiagonalLU::TridiagonalLU(std::span<const Complex> lower,
                             std::span<const Complex> diagonal,
                             std::span<const Complex> upper)
    : lower_(lower.begin(), lower.end()),
      diag_(diagonal.begin(), diagonal.end()),
      upper_(upper.begin(), upper.end()) {
    const std::size_t n = diag_.size();
    if (n == 0) throw std::invalid_argument("TridiagonalLU: empty matrix");
    if (lower_.size() != n - 1 || upper_.size() != n - 1) {
        throw std::invalid_argument("TridiagonalLU: band sizes do not match the diagonal");
    }
    upper2_.assign(n > 2 ? n - 2 : 0, Complex{});
    swapped_.assign(n > 1 ? n - 1 : 0, 0);

    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(diag_[i]) >= std::abs(lower_[i])) {
            if (diag_[i] == Complex{}) throw std::runtime_error("TridiagonalLU: singular matrix");
            const Complex fact = lower_[i] / diag_[i];
            lower_[i] = fact;
            diag_[i + 1] -= fact * upper_[i];
        } else {
            // Swap rows i and i+1.
            const Complex fact = diag_[i] / lower_[i];
            diag_[i] = lower_[i];
            lower_[i] = fact;
            const Complex temp = upper_[i];
            upper_[i] = diag_[i + 1];
            diag_[i + 1] = temp - fact * diag_[i + 1];
            if (i + 2 < n) {
                upper2_[i] = upper_[i + 1];
                upper_[i + 1] = -fact * upper_[i + 1];
            }
            swapped_[i] = 1;
        }
    }
    if (diag_[n - 1] == Complex{}) throw std::runtime_error("TridiagonalLU: singular matrix");
}

void TridiagonalLU::solve(std::span<Complex> b) const {
    const std::size_t n = diag_.size();
    if (b.size() != n) throw std::invalid_argument("TridiagonalLU::solve: size mismatch");

    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (swapped_[i]) {
            const Complex temp = b[i];
            b[i] = b[i + 1];
            b[i + 1] = temp - lower_[i] * b[i];
        } else {
            b[i + 1] -= lower_[i] * b[i];
        }
    }

    b[n - 1] /= diag_[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - upper_[n - 2] * b[n - 1]) / diag_[n - 2];
    for (std::size_t k = n; k-- > 2;) {
        const std::size_t i = k - 2;
        b[i] = (b[i] - upper_[i] * b[i + 1] - upper2_[i] * b[i + 2]) / diag_[i];
    }
}

}  // namespace dce
