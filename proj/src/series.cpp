#include "cgl/series.hpp"

namespace cgl {

namespace {

template <class A, class B, class R, class Op>
Series<R> convolve(const Series<A>& a, const Series<B>& b, int max_weight, Op op) {
    Series<R> r;
    for (const auto& [ka, va] : a.terms()) {
        for (const auto& [kb, vb] : b.terms()) {
            SKey key{ka.k + kb.k, ka.j + kb.j};
            if (key.weight() > max_weight) continue;
            r.add_term(key, op(va, vb));
        }
    }
    return r;
}

}  // namespace

Field mul(const Field& a, const Field& b, int max_weight) {
    return convolve<PolyE, PolyE, PolyE>(a, b, max_weight, [](const PolyE& x, const PolyE& y) { return x * y; });
}

Field mul(const Scalars& a, const Field& b, int max_weight) {
    return convolve<Ext, PolyE, PolyE>(a, b, max_weight, [](const Ext& x, const PolyE& y) { return y * x; });
}

Scalars mul(const Scalars& a, const Scalars& b, int max_weight) {
    return convolve<Ext, Ext, Ext>(a, b, max_weight, [](const Ext& x, const Ext& y) { return x * y; });
}

Field as_field(const Scalars& s) {
    Field r;
    for (const auto& [key, v] : s.terms()) r.add_term(key, PolyE::constant(v));
    return r;
}

Scalars as_scalars(const Field& f) {
    Scalars r;
    for (const auto& [key, v] : f.terms()) {
        if (v.degree() > 0) throw std::logic_error("as_scalars: coefficient depends on y");
        r.add_term(key, v.coeff(0));
    }
    return r;
}

Scalars inverse(const Scalars& s, int max_weight) {
    Ext c0 = s.get(0, 0);
    if (c0.is_zero()) throw DivideByZero("series inverse: zero leading term");
    Ext inv0 = c0.inv();
    Scalars rest;
    for (const auto& [key, v] : s.terms())
        if (!(key == SKey{0, 0})) rest.add_term(key, -(v * inv0));
    // 1/(c0 (1 - u)) = (1/c0) sum u^n, u has weight >= 1
    Scalars acc{{SKey{0, 0}, Ext(1)}};
    Scalars un = acc;
    for (int n = 1; n <= max_weight; ++n) {
        un = mul(un, rest, max_weight);
        if (un.empty()) break;
        acc += un;
    }
    return acc.scaled(inv0);
}

}  // namespace cgl
