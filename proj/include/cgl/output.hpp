#pragma once
// File formats: CSV with a '#' header echoing version and resolved configuration,
// numbers at 17 significant digits; JSON with exact rationals as "num/den" strings.
#include "cgl/config.hpp"
#include "cgl/reduction.hpp"
#include "cgl/verify.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace cgl {

std::string version_string();

// "num/den" always, also for integers
std::string rational_string(const Rational& x);

nlohmann::json to_json(const Gauss& x);
nlohmann::json to_json(const Ext& x);
nlohmann::json to_json(const KappaGraded& x, double kappa);
nlohmann::json to_json(const PolyG& p);

nlohmann::json meta_json(const std::string& command, const RunConfig& cfg, double K_resolved = 0);
void write_header(std::ostream& os, const std::string& command, const RunConfig& cfg, double K_resolved = 0);

nlohmann::json constants_json(const ConstantsBundle& K);
nlohmann::json basis_json(const BasisTable& B);
nlohmann::json verify_json(const VerifyReport& r);
nlohmann::json shoot_json(const ShootResult& r);

std::vector<std::string> history_columns(int M_track);
void write_history_csv(std::ostream& os, const std::vector<StepRecord>& hist, int M_track);

// phi, R, R*, V1, V2 on N points of [-L, L] at time s
void write_profile_csv(std::ostream& os, const FloatParams& P, double s, double L, int N);

}  // namespace cgl
