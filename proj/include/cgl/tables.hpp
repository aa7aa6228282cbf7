#pragma once
// Coefficient tables derived from (p, delta):
//   * the profile and everything built from it, expanded in eps = s^{-1/2}
//     at fixed y (psi = phi/kappa, V1, V2, R),
//   * the projections of potential and rest terms on the Jordan basis,
//   * the quadratic-term constants.
//
// Everything is exact.  Values carrying a power of kappa are stored divided by
// that power, and the power is reported by kappa_grade().
#include "cgl/params.hpp"
#include "cgl/series.hpp"
#include "cgl/spectral.hpp"

#include <map>
#include <string>
#include <tuple>

namespace cgl {

struct ProfileSeries {
    int order = 0;
    Field psi;  // phi / kappa
    Field V1, V2;
    Field R;    // R / kappa
};

ProfileSeries expand_profile(const ProfileParams& P, int order = 6);

// R* / kappa = R/kappa - i(nu/2 eps + mu eps^2) psi, and Theta = -i psi
Field rest_star(const ProfileParams& P, const ProfileSeries& S, const Ext& mu);
Field theta_field(const ProfileSeries& S);

struct PotentialPolys {
    PolyE W11, W12, W21, W22;
};
PotentialPolys potential_polys(const ProfileSeries& S);

// Basis large enough for every projection made by the constants pipeline.
constexpr int kConstantsBasisM = 16;

class CoeffTables {
public:
    // names: C D E F Ct Dt Et Ft K L Kt Lt   (n, j in {0,2,4,6})
    //        R Rt Th Tht                     (n in {0,2,4,6}, order k in {0..3})
    const Ext& at(const std::string& name, int n, int j) const;
    KappaGraded graded(const std::string& name, int n, int j) const;
    static int kappa_grade(const std::string& name);
    void set(const std::string& name, int n, int j, Ext v) { t_[{name, n, j}] = std::move(v); }
    const std::map<std::tuple<std::string, int, int>, Ext>& all() const { return t_; }

    std::vector<Rational> c;  // c_n from the basis

private:
    std::map<std::tuple<std::string, int, int>, Ext> t_;
};

// Projection tables C..Lt of the potential terms and of i h_j, i ht_j.
void projection_tables(const ProfileParams& P, const PotentialPolys& W, const BasisTable& B, CoeffTables& T);

// R*_{n,k}, Rt*_{n,k}, Theta*_{n,k}, Thetat*_{n,k}
void rest_tables(const ProfileParams& P, const ProfileSeries& S, const BasisTable& B, const Ext& mu, CoeffTables& T);

CoeffTables build_tables(const ProfileParams& P, const ProfileSeries& S, const BasisTable& B, const Ext& mu);

// Leading quadratic part of B, kappa-normalised:
//   (1+i delta)/8 [ (p-3) qbar^2 + 2(p+1) q qbar + (p+1) q^2 ]
PolyE quadratic_B(const ProfileParams& P, const PolyE& q);
Field quadratic_B(const ProfileParams& P, const Field& q, int max_weight);

struct BConstants {
    KappaGraded Bt2;        // Pt_2 of the q~_2^2 term, grade -1
    KappaGraded pair_h2h2;  // Pt_2 B(h2,h2)
    KappaGraded pair_ht0h2; // Pt_2 B(ht0,h2)
    KappaGraded pair_ht0ht2;
    KappaGraded pair_h2ht2;
    KappaGraded B1, B2;     // grades 0 and 1
};
BConstants b_quadratic_constants(const ProfileParams& P, const BasisTable& B, const CoeffTables& T);

}  // namespace cgl
