#pragma once
// Closed forms exactly as printed in the source derivation, kept apart from the
// computed values so that `verify` can compare the two.  Nothing in the rigorous
// pipeline reads from here.
//
// Table-like values follow the CoeffTables convention: they are stored divided by
// the power of kappa they carry.
#include "cgl/reduction.hpp"

#include <map>
#include <string>
#include <tuple>

namespace cgl::printed {

using TableKey = std::tuple<std::string, int, int>;
using TableMap = std::map<TableKey, Ext>;

// ---------------------------------------------------------------- b^2

// the formal-approach form (p-1)^4 (p+1)^2 delta^2 / (-16 (1+delta^2) L)
Rational b2_formal(const Rational& p, const Rational& delta);
// the p = 3 profile constant, squared: 8 delta^2 / (3 (1+delta^2)(15-delta^2)(delta^2+5))
Rational b2_p3(const Rational& delta);

// ---------------------------------------------------------------- H~_1

Rational htilde1_closed(const Rational& p, const Rational& delta);
// H~_1 + 3/2 in the three successive printed forms (0, 1, 2)
Rational htilde1_gap(const Rational& p, const Rational& delta, int form);

// ---------------------------------------------------------------- basis

// h_n and ht_n for n in {0, 1, 2, 4, 6}, for arbitrary (beta, delta)
PolyG basis_h(int n, const Rational& beta, const Rational& delta);
PolyG basis_ht(int n, const Rational& beta, const Rational& delta);
bool has_basis_entry(int n);

// ---------------------------------------------------------------- potentials

// The potential polynomials.  The two printings differ only in W22.
PotentialPolys potentials_compact(const ProfileParams& P);
PotentialPolys potentials_expanded(const ProfileParams& P);

// ---------------------------------------------------------------- tables

// projection constants listed in closed form (C..Lt families, Theta's)
TableMap projection_constants(const ProfileParams& P);
// R*_{n,k}, Rt*_{n,k} listed in closed form, at a given mu
TableMap rest_constants(const ProfileParams& P, const Ext& mu);
// coefficients of R*_k / kappa at y^deg: key (k, deg)
std::map<std::pair<int, int>, Ext> rest_polynomials(const ProfileParams& P, const Ext& mu);
// second printing of the y^4 coefficient of R*_2 / kappa
Ext rest_r2_y4_alternative(const ProfileParams& P);

// ---------------------------------------------------------------- B(q)

KappaGraded btilde2(const ProfileParams& P);      // grade -1
KappaGraded b2_over_r21sq(const ProfileParams& P);  // B_2 / (R*_{2,1})^2, grade -1

// ---------------------------------------------------------------- ODE of q~_2

// The long expressions of the q~_2 equation evaluated on a given set of tables.
// X2 and Xt0 come from the caller.
struct OdeExpressions {
    KappaGraded coef_1_over_s, coef_q2_over_sqrt_s, coef_q2sq, coef_s32;
    KappaGraded Htilde1, Htilde2;
};
OdeExpressions ode_expressions(const ProfileParams& P, const CoeffTables& T, const BConstants& bq,
                               const KappaGraded& X2, const KappaGraded& Xt0);

// Tables with every entry that has a printed closed form replaced by it.
CoeffTables with_printed_entries(const ProfileParams& P, const CoeffTables& T);

}  // namespace cgl::printed
