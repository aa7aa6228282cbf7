#pragma once
// Truncated double series  sum_{k,j} c_{k,j} eps^k x^j  with eps = s^{-1/2} and x the
// null-mode amplitude.  Weight of a term is k + 2j; products drop everything above
// a caller-supplied weight.  Coefficients are either scalars (Ext) or polynomials
// in y (PolyE); a "field" is the latter.
#include "cgl/exactnum.hpp"

#include <compare>
#include <map>

namespace cgl {

struct SKey {
    int k = 0;  // power of eps
    int j = 0;  // power of x
    int weight() const { return k + 2 * j; }
    auto operator<=>(const SKey&) const = default;
};

template <class V>
class Series {
public:
    Series() = default;
    Series(std::initializer_list<std::pair<const SKey, V>> init) {
        for (const auto& [key, v] : init) add_term(key, v);
    }

    const std::map<SKey, V>& terms() const { return t_; }
    bool empty() const { return t_.empty(); }
    V get(int k, int j) const {
        auto it = t_.find({k, j});
        return it == t_.end() ? V{} : it->second;
    }
    void add_term(SKey key, const V& v) {
        auto [it, fresh] = t_.try_emplace(key, v);
        if (!fresh) it->second += v;
        if (is_zero_v(it->second)) t_.erase(it);
    }
    void set(SKey key, V v) {
        if (is_zero_v(v)) t_.erase(key);
        else t_[key] = std::move(v);
    }

    Series& operator+=(const Series& o) {
        for (const auto& [key, v] : o.t_) add_term(key, v);
        return *this;
    }
    Series& operator-=(const Series& o) {
        for (const auto& [key, v] : o.t_) add_term(key, -v);
        return *this;
    }
    Series operator-() const {
        Series r;
        for (const auto& [key, v] : t_) r.t_.emplace(key, -v);
        return r;
    }
    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }

    Series scaled(const Ext& c) const {
        Series r;
        for (const auto& [key, v] : t_) r.add_term(key, v * c);
        return r;
    }
    Series truncated(int max_weight) const {
        Series r;
        for (const auto& [key, v] : t_)
            if (key.weight() <= max_weight) r.t_.emplace(key, v);
        return r;
    }
    template <class F>
    Series map(F f) const {
        Series r;
        for (const auto& [key, v] : t_) r.add_term(key, f(v));
        return r;
    }
    Series conj() const {
        return map([](const V& v) { return conj_v(v); });
    }

    friend bool operator==(const Series& a, const Series& b) { return a.t_ == b.t_; }

private:
    static bool is_zero_v(const V& v) {
        if constexpr (requires { v.is_zero(); }) return v.is_zero();
        else return is_zero(v);
    }
    static V conj_v(const V& v) {
        if constexpr (requires { v.conj(); }) return v.conj();
        else return conj_of(v);
    }
    std::map<SKey, V> t_;
};

using Field = Series<PolyE>;
using Scalars = Series<Ext>;

Field mul(const Field& a, const Field& b, int max_weight);
Field mul(const Scalars& a, const Field& b, int max_weight);
Scalars mul(const Scalars& a, const Scalars& b, int max_weight);

Field as_field(const Scalars& s);
// constant-in-y field -> scalar series; throws if some coefficient depends on y
Scalars as_scalars(const Field& f);

// 1/s as a series when s(0,0) != 0
Scalars inverse(const Scalars& s, int max_weight);

// d/ds acting on eps^k only: d/ds eps^k = -(k/2) eps^{k+2}
template <class V>
Series<V> ds_eps(const Series<V>& f) {
    Series<V> r;
    for (const auto& [key, v] : f.terms())
        if (key.k) r.add_term({key.k + 2, key.j}, v * Ext(Rational(-key.k, 2)));
    return r;
}

}  // namespace cgl
