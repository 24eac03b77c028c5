#pragma once

// Brute-force oracles used to cross-check the spectral pipeline. Everything
// here goes through Eigen or plain iteration, never through the library's
// own decomposition path.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "crw/model.hpp"

namespace oracle {

inline Eigen::MatrixXd to_eigen(const crw::Matrix& m) {
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
    return out;
}

/// All eigenvalues of a real matrix expected to have a real spectrum,
/// sorted descending.
inline std::vector<double> brute_force_spectrum(const crw::Matrix& m,
                                                double imag_tol = 1e-8) {
    const Eigen::EigenSolver<Eigen::MatrixXd> solver(to_eigen(m));
    std::vector<double> out;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const std::complex<double> ev = solver.eigenvalues()(i);
        if (std::abs(ev.imag()) > imag_tol)
            throw std::runtime_error("oracle found a complex eigenvalue");
        out.push_back(ev.real());
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

/// Power iteration on dense U from |0,L> until the marginal stops moving.
inline crw::Distribution power_iteration_marginal(const crw::PathCRWModel& model,
                                                  double tol = 1e-13,
                                                  std::size_t max_iters = 2000000) {
    const crw::Matrix u = crw::dense_U(model);
    std::vector<double> state(model.dim(), 0.0);
    state[0] = 1.0; // (0, L)
    for (std::size_t iter = 0; iter < max_iters; ++iter) {
        const std::vector<double> next = u * state;
        double change = 0.0;
        for (std::size_t i = 0; i < state.size(); ++i)
            change = std::max(change, std::abs(next[i] - state[i]));
        state = next;
        if (change < tol) break;
    }
    return crw::marginal(state);
}

} // namespace oracle
