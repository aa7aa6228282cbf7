#pragma once
#include <complex>
#include <vector>

namespace cgl {

struct UniformGrid {
    double L = 0;  // half width
    int N = 0;     // number of points, y_i = -L + i*dy, i = 0..N-1
    double dy() const { return 2 * L / (N - 1); }
    double y(int i) const { return -L + i * dy(); }
};

enum class QuadratureKind { gauss_hermite, trapezoid };

struct QuadratureRule {
    QuadratureKind kind = QuadratureKind::gauss_hermite;
    int nodes = 200;
};

struct GaussHermite {
    std::vector<double> x, w;  // for int e^{-x^2} g(x) dx
};

// Golub-Welsch; cached per n
const GaussHermite& gauss_hermite(int n);

// cubic Lagrange interpolation on a uniform grid; zero outside [-L, L]
std::complex<double> interp_cubic(const std::vector<std::complex<double>>& v, const UniformGrid& g, double y);

}  // namespace cgl
