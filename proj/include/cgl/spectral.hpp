#pragma once
// Weight rho_beta, Hermite-type eigenfunctions f_n of L_beta, the Jordan pairs
// (h_n, ht_n) of L_{beta,delta}, exact and sampled projections, and the heat kernel
// of L_beta.
//
//   L_beta q       = (1+i beta) q'' - (y/2) q'
//   L_{beta,delta} = L_beta q + (1+i delta) Re q
//   rho_beta(y)    = exp(-y^2 / (4(1+i beta))) / sqrt(4 pi (1+i beta))
//
#include "cgl/exactnum.hpp"
#include "cgl/kernels.hpp"
#include "cgl/quadrature.hpp"

#include <vector>

namespace cgl {

PolyG hermite_f(int n, const Rational& beta);

// int y^k rho_beta dy
Gauss gaussian_moment(int k, const Rational& beta);

// int f_n^2 rho_beta dy = n! (2(1+i beta))^n
Gauss hermite_norm(int n, const Rational& beta);

enum class LVariant { beta, beta_delta };

template <class T>
Poly<T> apply_L(const Poly<T>& P, LVariant v, const Rational& beta, const Rational& delta) {
    const T ib = scalar_from<T>(Gauss(Rational(1), beta));
    Poly<T> r = P.derivative().derivative() * ib - P.derivative().shifted() * scalar_from<T>(Gauss(Rational(1, 2)));
    if (v == LVariant::beta_delta) r += P.real_part() * scalar_from<T>(Gauss(Rational(1), delta));
    return r;
}

struct BasisTable {
    int M = 0;
    Rational p, delta, beta;
    std::vector<PolyG> f, h, ht;
    std::vector<Gauss> fnorm;
    std::vector<Rational> c;  // Jordan coupling: L ht_n = (1-n/2) ht_n + c_n h_{n-2}

    // h_n, ht_n expanded on f_0..f_n: h_n = sum_m H[n][m] f_m
    std::vector<std::vector<Gauss>> H, Ht;

    // the same objects with coefficients lifted to Ext, cached for the constants pipeline
    std::vector<PolyE> f_ext, h_ext, ht_ext;
};

// Throws std::logic_error if the triangular solve is inconsistent (cannot happen
// unless the arithmetic is broken).
BasisTable build_basis(int M, const Rational& p, const Rational& delta, const Rational& beta);

// Exact f-expansion: P = sum Q_n f_n, computed top-down (f_n monic).
template <class T>
std::vector<T> f_expand(const Poly<T>& P, const BasisTable& B);

template <class T>
struct ExactModes {
    std::vector<T> q, qt, Q;  // n = 0..M; q, qt have zero imaginary part
    Poly<T> remainder;        // P minus the reconstruction from modes n <= M
};

// q-coordinates from f-coordinates for n <= M: solves
//   sum_{n<=M} Q_n f_n = sum (q_n h_n + qt_n ht_n)  top-down.
template <class T>
void modes_from_f(const std::vector<T>& Q, const BasisTable& B, std::vector<T>& q, std::vector<T>& qt);

template <class T>
ExactModes<T> project_poly(const Poly<T>& P, const BasisTable& B);

template <class T>
Poly<T> reconstruct(const std::vector<T>& q, const std::vector<T>& qt, const BasisTable& B);

// ---------------------------------------------------------------- numerics

struct FloatBasis {
    int M = 0;
    double beta = 0, delta = 0;
    std::vector<cplx> fnorm;
    std::vector<std::vector<cplx>> H, Ht;
};
FloatBasis float_basis(const BasisTable& B);

// f_0..f_M at y by the three-term recurrence
void eval_f(double y, double beta, int M, std::vector<cplx>& out);
cplx rho_beta(double y, double beta);

// sampled-value modes
struct ModeCoeffs {
    std::vector<double> q, qt;
    std::vector<cplx> Q;
    std::vector<cplx> remainder;  // on the input grid
};

void modes_from_f(const std::vector<cplx>& Q, const FloatBasis& B, std::vector<double>& q, std::vector<double>& qt);

struct GridTooNarrow : std::domain_error {
    using std::domain_error::domain_error;
};

// int_{|y|>L} |rho_beta|
double rho_tail_mass(double L, double beta);

// Samples on a uniform grid y_i = -L + i*dy.  The default rule is Gauss-Hermite
// on the modulus of rho_beta with cubic interpolation of the samples.
ModeCoeffs project_sampled(const std::vector<cplx>& samples, const UniformGrid& grid, const FloatBasis& B,
                           const QuadratureRule& rule = QuadratureRule{});

// Trapezoid projection on one fixed grid.  The weights dy rho_beta(y_i) f_n(y_i)/|f_n|^2
// are tabulated once and kept only on the band where rho_beta is not negligible, so a
// projection costs M+1 dot products.  Same result as project_sampled with the
// trapezoid rule, up to the dropped tail.
class GridProjector {
public:
    GridProjector(const UniformGrid& g, const FloatBasis& B, int M, Exec ex = Exec::serial);

    int M() const { return M_; }
    const UniformGrid& grid() const { return g_; }
    void moments(const cplx* g, std::vector<cplx>& Q) const;
    void modes(const cplx* g, std::vector<double>& q, std::vector<double>& qt) const;
    void modes_of(const std::vector<cplx>& Q, std::vector<double>& q, std::vector<double>& qt) const;
    double q0(const cplx* g) const;
    // g - sum_{n<=M} Q_n f_n on the whole grid
    void remainder(const cplx* g, const std::vector<cplx>& Q, std::vector<cplx>& out) const;

private:
    UniformGrid g_;
    FloatBasis B_;
    int M_ = 0;
    Exec ex_ = Exec::serial;
    int lo_ = 0, hi_ = 0;
    std::vector<std::vector<cplx>> w_, f_;
    std::vector<const cplx*> rows_;
};

// Heat kernel of L_beta:  (e^{s L_beta} g)(y) = int K(s,y,x) g(x) dx
cplx semigroup_kernel(double s, double y, double x, double beta);

// Upper bound for sup |V_i| used to pick the default M.
int default_M(double delta, double sup_V);

}  // namespace cgl
