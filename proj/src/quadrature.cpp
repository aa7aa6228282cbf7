#include "cgl/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace cgl {

const GaussHermite& gauss_hermite(int n) {
    static std::mutex mu;
    static std::map<int, GaussHermite> cache;
    std::lock_guard lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    if (n < 1) throw std::invalid_argument("gauss_hermite: need at least one node");

    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) J(k, k - 1) = J(k - 1, k) = std::sqrt(k / 2.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    GaussHermite gh;
    gh.x.resize(n);
    gh.w.resize(n);
    const double sqpi = std::sqrt(std::numbers::pi);
    for (int i = 0; i < n; ++i) {
        gh.x[i] = es.eigenvalues()(i);
        double v0 = es.eigenvectors()(0, i);
        gh.w[i] = sqpi * v0 * v0;
    }
    return cache.emplace(n, std::move(gh)).first->second;
}

std::complex<double> interp_cubic(const std::vector<std::complex<double>>& v, const UniformGrid& g, double y) {
    if (y < -g.L || y > g.L) return 0.0;
    const double h = g.dy();
    double t = (y + g.L) / h;
    int i = static_cast<int>(std::floor(t)) - 1;
    i = std::clamp(i, 0, g.N - 4);
    double u = t - i;  // position relative to node i, in [0,3]
    double l0 = -(u - 1) * (u - 2) * (u - 3) / 6.0;
    double l1 = u * (u - 2) * (u - 3) / 2.0;
    double l2 = -u * (u - 1) * (u - 3) / 2.0;
    double l3 = u * (u - 1) * (u - 2) / 6.0;
    return l0 * v[i] + l1 * v[i + 1] + l2 * v[i + 2] + l3 * v[i + 3];
}

}  // namespace cgl
