#pragma once

#include "dce/model.hpp"
#include "dce/scattering.hpp"

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include <array>
#include <complex>

namespace dce {

enum class Method { perturbative, numeric };

std::string_view to_string(Method method) noexcept;
Method method_from_string(std::string_view name);

/// Second moments of the two output modes.
struct MomentSet {
    double n_plus = 0.0;    // ⟨b₊†b₊⟩
    double n_minus = 0.0;   // ⟨b₋†b₋⟩
    Complex w{};            // ⟨b₊b₋⟩
    Complex s_plus{};       // ⟨b₊b₊⟩
    Complex s_minus{};      // ⟨b₋b₋⟩
    Complex x{};            // ⟨b₊†b₋⟩
};

/// 4×4 quadrature covariance in ordering (q₋, p₋, q₊, p₊),
/// q = (b + b†)/√2, p = −i(b − b†)/√2. Vacuum is diag(½, ½, ½, ½).
class CovarianceMatrix {
public:
    using Matrix = Eigen::Matrix4d;

    CovarianceMatrix() : v_(0.5 * Matrix::Identity()) {}
    /// Stores (m + mᵀ)/2 so the result is exactly symmetric.
    explicit CovarianceMatrix(const Matrix& m) : v_(0.5 * (m + m.transpose())) {}

    static CovarianceMatrix vacuum() { return {}; }

    const Matrix& matrix() const noexcept { return v_; }
    double operator()(int i, int j) const { return v_(i, j); }

    Eigen::Matrix2d block_minus() const { return v_.topLeftCorner<2, 2>(); }   // A
    Eigen::Matrix2d block_plus() const { return v_.bottomRightCorner<2, 2>(); }  // B
    Eigen::Matrix2d block_cross() const { return v_.topRightCorner<2, 2>(); }  // C

private:
    Matrix v_;
};

/// Contracts the rows at ω₊, ω₋ against thermal input at config.temperature.
MomentSet moments_from_rows(const CircuitConfig& config, const RowPair& rows);

/// Perturbative branch: n± = n̄± + λ²(1 + n̄₊ + n̄₋), W = iλ(1 + n̄₊ + n̄₋).
/// Numeric branch: adaptive ladder rows contracted with thermal occupations.
MomentSet output_moments(const CircuitConfig& config, const ModePair& pair, Method method);

CovarianceMatrix covariance_matrix(const MomentSet& m);

/// Inverse of covariance_matrix (exact for any real symmetric V).
MomentSet moments_from_covariance(const CovarianceMatrix& v);

/// ⟨b₊†b₊ b₋†b₋⟩ for a Gaussian state: n₊n₋ + |W|² + |X|².
double pair_statistics(const MomentSet& m);

/// Symplectic eigenvalues (ν₋, ν₊) of V, ascending. A covariance is physical
/// iff V > 0 and ν₋ ≥ ½.
std::array<double, 2> symplectic_eigenvalues(const CovarianceMatrix& v);

nlohmann::json to_json(const MomentSet& m);
nlohmann::json to_json(const CovarianceMatrix& v);
MomentSet moment_set_from_json(const nlohmann::json& doc);
CovarianceMatrix covariance_from_json(const nlohmann::json& doc);

}  // namespace dce
