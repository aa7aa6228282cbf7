#include "cgl/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cgl {

PolyG hermite_f(int n, const Rational& beta) {
    if (n < 0) throw std::invalid_argument("hermite_f: negative degree");
    const Gauss ib(Rational(1), beta);
    PolyG prev = PolyG::constant(Gauss(1));
    if (n == 0) return prev;
    PolyG cur = PolyG::monomial(1, Gauss(1));
    for (int k = 1; k < n; ++k) {
        PolyG next = cur.shifted() - prev * (ib * Gauss(2 * k));
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

Gauss gaussian_moment(int k, const Rational& beta) {
    if (k < 0) throw std::invalid_argument("gaussian_moment: negative order");
    if (k % 2) return Gauss();
    const Gauss two_ib(Rational(2), beta * Rational(2));
    Gauss r(1);
    for (int i = 0; i < k / 2; ++i) r *= two_ib * Gauss(2 * i + 1);  // (k-1)!! accumulates as 1*3*5*...
    return r;
}

Gauss hermite_norm(int n, const Rational& beta) {
    const Gauss two_ib(Rational(2), beta * Rational(2));
    Gauss r(1);
    for (int i = 1; i <= n; ++i) r *= two_ib * Gauss(i);
    return r;
}

namespace {

// the Jordan chain, solved coefficient by coefficient from the top degree
void solve_pairs(BasisTable& B) {
    const Rational& d = B.delta;
    const Gauss ib(Rational(1), B.beta);
    const Gauss I = Gauss::i();
    const int M = B.M;
    B.h.resize(M + 1);
    B.ht.resize(M + 1);
    B.c.assign(M + 1, Rational());
    for (int n = 0; n <= M; ++n) {
        std::vector<Gauss> c(n + 1);
        c[n] = I;
        for (int k = n - 2; k >= 0; k -= 2) {
            Gauss r = ib * Gauss(-(k + 1) * (k + 2)) * c[k + 2];
            Rational u = r.re / Rational((n - k) / 2 + 1);
            Rational v = (r.im - u * d) / Rational((n - k) / 2);
            c[k] = Gauss(u, v);
        }
        B.h[n] = PolyG(std::move(c));

        std::vector<Gauss> t(n + 1);
        t[n] = Gauss(Rational(1), d);
        Rational cn;
        for (int k = n - 2; k >= 0; k -= 2) {
            const int m = (n - k) / 2 - 1;
            Gauss rhs = ib * Gauss(-(k + 1) * (k + 2)) * t[k + 2];
            if (m == 0) {
                // the imaginary row reads delta*u = Im(rhs) + c_n * Im([h_{n-2}]_{n-2}) and fixes c_n
                Rational u = rhs.re;
                cn = d * u - rhs.im;  // [h_{n-2}]_{n-2} = i
                // one free imaginary part remains; this choice reproduces the printed tables
                Rational v = (n == 2) ? d * u : Rational();
                t[k] = Gauss(u, v);
            } else {
                rhs += B.h[n - 2].coeff(k) * Gauss(cn);
                Rational u = rhs.re / Rational(m + 1);
                Rational v = (rhs.im - d * u) / Rational(m);
                t[k] = Gauss(u, v);
            }
        }
        B.ht[n] = PolyG(std::move(t));
        B.c[n] = cn;
    }
}

}  // namespace

template <class T>
std::vector<T> f_expand(const Poly<T>& P, const BasisTable& B) {
    int deg = P.degree();
    if (deg > B.M) throw std::invalid_argument("f_expand: degree " + std::to_string(deg) + " exceeds basis size");
    std::vector<T> Q(std::max(deg + 1, 0));
    Poly<T> rest = P;
    for (int n = deg; n >= 0; --n) {
        T c = rest.coeff(n);
        if (is_zero(c)) continue;
        Q[n] = c;
        if constexpr (std::is_same_v<T, Gauss>) rest -= B.f[n] * c;
        else rest -= B.f_ext[n] * c;
    }
    if (!rest.is_zero()) throw std::logic_error("f_expand: residual after top-down solve");
    return Q;
}

template <class T>
void modes_from_f(const std::vector<T>& Qin, const BasisTable& B, std::vector<T>& q, std::vector<T>& qt) {
    const int M = B.M;
    std::vector<T> Q = Qin;
    Q.resize(M + 1);
    q.assign(M + 1, T{});
    qt.assign(M + 1, T{});
    const T d = scalar_from<T>(Gauss(B.delta));
    for (int n = M; n >= 0; --n) {
        const T c = Q[n];
        if (is_zero(c)) continue;
        T a = real_of(c);
        T b = imag_of(c) - d * a;
        qt[n] = a;
        q[n] = b;
        for (int m = 0; m <= n; ++m) {
            if (!B.H[n][m].is_zero()) Q[m] -= b * scalar_from<T>(B.H[n][m]);
            if (!B.Ht[n][m].is_zero()) Q[m] -= a * scalar_from<T>(B.Ht[n][m]);
        }
    }
}

template <class T>
ExactModes<T> project_poly(const Poly<T>& P, const BasisTable& B) {
    ExactModes<T> r;
    std::vector<T> Q;
    if (P.degree() <= B.M) {
        Q = f_expand(P, B);
    } else {
        // expand in a larger f-family, split off n > M
        BasisTable big = build_basis(P.degree() + (P.degree() % 2), B.p, B.delta, B.beta);
        Q = f_expand(P, big);
        for (int n = B.M + 1; n < static_cast<int>(Q.size()); ++n) {
            if (is_zero(Q[n])) continue;
            if constexpr (std::is_same_v<T, Gauss>) r.remainder += big.f[n] * Q[n];
            else r.remainder += to_ext(big.f[n]) * Q[n];
        }
    }
    Q.resize(B.M + 1);
    r.Q = Q;
    modes_from_f(Q, B, r.q, r.qt);
    return r;
}

template <class T>
Poly<T> reconstruct(const std::vector<T>& q, const std::vector<T>& qt, const BasisTable& B) {
    Poly<T> r;
    for (int n = 0; n <= B.M && n < static_cast<int>(q.size()); ++n) {
        if constexpr (std::is_same_v<T, Gauss>) {
            if (!is_zero(q[n])) r += B.h[n] * q[n];
            if (!is_zero(qt[n])) r += B.ht[n] * qt[n];
        } else {
            if (!is_zero(q[n])) r += B.h_ext[n] * q[n];
            if (!is_zero(qt[n])) r += B.ht_ext[n] * qt[n];
        }
    }
    return r;
}

template std::vector<Gauss> f_expand(const PolyG&, const BasisTable&);
template std::vector<Ext> f_expand(const PolyE&, const BasisTable&);
template void modes_from_f(const std::vector<Gauss>&, const BasisTable&, std::vector<Gauss>&, std::vector<Gauss>&);
template void modes_from_f(const std::vector<Ext>&, const BasisTable&, std::vector<Ext>&, std::vector<Ext>&);
template ExactModes<Gauss> project_poly(const PolyG&, const BasisTable&);
template ExactModes<Ext> project_poly(const PolyE&, const BasisTable&);
template PolyG reconstruct(const std::vector<Gauss>&, const std::vector<Gauss>&, const BasisTable&);
template PolyE reconstruct(const std::vector<Ext>&, const std::vector<Ext>&, const BasisTable&);

BasisTable build_basis(int M, const Rational& p, const Rational& delta, const Rational& beta) {
    if (M < 0 || M % 2) throw std::invalid_argument("build_basis: M must be even and nonnegative");
    BasisTable B;
    B.M = M;
    B.p = p;
    B.delta = delta;
    B.beta = beta;
    for (int n = 0; n <= M; ++n) {
        B.f.push_back(hermite_f(n, beta));
        B.f_ext.push_back(to_ext(B.f.back()));
        B.fnorm.push_back(hermite_norm(n, beta));
    }
    solve_pairs(B);
    B.H.resize(M + 1);
    B.Ht.resize(M + 1);
    for (int n = 0; n <= M; ++n) {
        B.H[n] = f_expand(B.h[n], B);
        B.Ht[n] = f_expand(B.ht[n], B);
        B.H[n].resize(n + 1);
        B.Ht[n].resize(n + 1);
        B.h_ext.push_back(to_ext(B.h[n]));
        B.ht_ext.push_back(to_ext(B.ht[n]));
    }
    return B;
}

// ---------------------------------------------------------------- numerics

FloatBasis float_basis(const BasisTable& B) {
    FloatBasis F;
    F.M = B.M;
    F.beta = B.beta.to_double();
    F.delta = B.delta.to_double();
    for (const auto& g : B.fnorm) F.fnorm.push_back(g.to_complex());
    for (int n = 0; n <= B.M; ++n) {
        std::vector<cplx> h, t;
        for (const auto& g : B.H[n]) h.push_back(g.to_complex());
        for (const auto& g : B.Ht[n]) t.push_back(g.to_complex());
        F.H.push_back(std::move(h));
        F.Ht.push_back(std::move(t));
    }
    return F;
}

void eval_f(double y, double beta, int M, std::vector<cplx>& out) {
    out.resize(M + 1);
    const cplx ib(1.0, beta);
    out[0] = 1.0;
    if (M >= 1) out[1] = y;
    for (int n = 1; n < M; ++n) out[n + 1] = y * out[n] - 2.0 * n * ib * out[n - 1];
}

cplx rho_beta(double y, double beta) {
    const cplx ib(1.0, beta);
    return std::exp(-y * y / (4.0 * ib)) / std::sqrt(4.0 * std::numbers::pi * ib);
}

double rho_tail_mass(double L, double beta) {
    const double s = std::sqrt(1 + beta * beta);
    return std::sqrt(s) * std::erfc(L / (2 * std::sqrt(s)));
}

void modes_from_f(const std::vector<cplx>& Qin, const FloatBasis& B, std::vector<double>& q, std::vector<double>& qt) {
    std::vector<cplx> Q = Qin;
    Q.resize(B.M + 1);
    q.assign(B.M + 1, 0.0);
    qt.assign(B.M + 1, 0.0);
    for (int n = B.M; n >= 0; --n) {
        double a = Q[n].real();
        double b = Q[n].imag() - B.delta * a;
        qt[n] = a;
        q[n] = b;
        for (int m = 0; m <= n; ++m) Q[m] -= b * B.H[n][m] + a * B.Ht[n][m];
    }
}

ModeCoeffs project_sampled(const std::vector<cplx>& samples, const UniformGrid& grid, const FloatBasis& B,
                           const QuadratureRule& rule) {
    if (static_cast<int>(samples.size()) != grid.N) throw std::invalid_argument("project_sampled: sample count != grid size");
    if (rho_tail_mass(grid.L, B.beta) > 1e-14)
        throw GridTooNarrow("project_sampled: |rho_beta| tail beyond L=" + std::to_string(grid.L) + " exceeds 1e-14");
    const int M = B.M;
    std::vector<cplx> acc(M + 1, 0.0), fv;
    if (rule.kind == QuadratureKind::gauss_hermite) {
        const auto& gh = gauss_hermite(rule.nodes);
        const double sc = 2 * std::sqrt(1 + B.beta * B.beta);
        const cplx pref = sc / std::sqrt(4.0 * std::numbers::pi * cplx(1.0, B.beta));
        for (size_t i = 0; i < gh.x.size(); ++i) {
            double y = sc * gh.x[i];
            cplx g = interp_cubic(samples, grid, y);
            if (g == 0.0) continue;
            cplx phase = std::exp(cplx(0.0, B.beta * y * y / (sc * sc)));
            eval_f(y, B.beta, M, fv);
            cplx wg = pref * gh.w[i] * phase * g;
            for (int n = 0; n <= M; ++n) acc[n] += wg * fv[n];
        }
    } else {
        const double h = grid.dy();
        for (int i = 0; i < grid.N; ++i) {
            double y = grid.y(i);
            double wt = (i == 0 || i == grid.N - 1) ? h / 2 : h;
            eval_f(y, B.beta, M, fv);
            cplx wg = wt * rho_beta(y, B.beta) * samples[i];
            for (int n = 0; n <= M; ++n) acc[n] += wg * fv[n];
        }
    }
    ModeCoeffs r;
    r.Q.resize(M + 1);
    for (int n = 0; n <= M; ++n) r.Q[n] = acc[n] / B.fnorm[n];
    modes_from_f(r.Q, B, r.q, r.qt);
    r.remainder.resize(grid.N);
    for (int i = 0; i < grid.N; ++i) {
        eval_f(grid.y(i), B.beta, M, fv);
        cplx s = 0;
        for (int n = 0; n <= M; ++n) s += r.Q[n] * fv[n];
        r.remainder[i] = samples[i] - s;
    }
    return r;
}

cplx semigroup_kernel(double s, double y, double x, double beta) {
    if (!(s > 0)) throw std::invalid_argument("semigroup_kernel: s must be positive");
    const cplx ib(1.0, beta);
    const double a = -std::expm1(-s);
    const double d = x - y * std::exp(-s / 2);
    return std::exp(-d * d / (4.0 * ib * a)) / std::sqrt(4.0 * std::numbers::pi * ib * a);
}

int default_M(double delta, double sup_V) {
    double bound = 4 * (std::sqrt(1 + delta * delta) + 1 + 2 * sup_V);
    int M = static_cast<int>(std::ceil(bound - 1e-12));
    return M + (M % 2);
}


GridProjector::GridProjector(const UniformGrid& g, const FloatBasis& B, int M, Exec ex)
    : g_(g), B_(B), M_(M), ex_(ex) {
    if (M > B.M) throw std::invalid_argument("GridProjector: M exceeds the basis");
    if (rho_tail_mass(g.L, B.beta) > 1e-14)
        throw GridTooNarrow("GridProjector: |rho_beta| tail beyond L=" + std::to_string(g.L) + " exceeds 1e-14");
    const double h = g.dy();
    w_.assign(M + 1, std::vector<cplx>(g.N));
    f_.assign(M + 1, std::vector<cplx>(g.N));
    std::vector<cplx> fv;
    lo_ = g.N;
    hi_ = 0;
    for (int i = 0; i < g.N; ++i) {
        const double y = g.y(i);
        eval_f(y, B.beta, M, fv);
        const cplx r = rho_beta(y, B.beta) * ((i == 0 || i == g.N - 1) ? h / 2 : h);
        bool live = false;
        for (int n = 0; n <= M; ++n) {
            f_[n][i] = fv[n];
            w_[n][i] = r * fv[n] / B.fnorm[n];
            if (std::abs(w_[n][i]) > 1e-40) live = true;
        }
        if (live) {
            lo_ = std::min(lo_, i);
            hi_ = i + 1;
        }
    }
    for (const auto& row : w_) rows_.push_back(row.data());
}

void GridProjector::moments(const cplx* g, std::vector<cplx>& Q) const {
    Q.assign(M_ + 1, 0.0);
    if (hi_ > lo_) cgl::moments(rows_, g, lo_, hi_, Q.data(), ex_);
}

void GridProjector::modes(const cplx* g, std::vector<double>& q, std::vector<double>& qt) const {
    std::vector<cplx> Q;
    moments(g, Q);
    modes_of(Q, q, qt);
}

void GridProjector::modes_of(const std::vector<cplx>& Q, std::vector<double>& q, std::vector<double>& qt) const {
    modes_from_f(Q, B_, q, qt);
    q.resize(M_ + 1);
    qt.resize(M_ + 1);
}

double GridProjector::q0(const cplx* g) const {
    std::vector<double> q, qt;
    modes(g, q, qt);
    return q[0];
}

void GridProjector::remainder(const cplx* g, const std::vector<cplx>& Q, std::vector<cplx>& out) const {
    out.resize(g_.N);
    for (int i = 0; i < g_.N; ++i) {
        cplx s = 0;
        for (int n = 0; n <= M_; ++n) s += Q[n] * f_[n][i];
        out[i] = g[i] - s;
    }
}

}  // namespace cgl
