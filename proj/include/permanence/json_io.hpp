#pragma once

#include "permanence/certificates.hpp"
#include "permanence/equilibria.hpp"
#include "permanence/model.hpp"
#include "permanence/nullcline.hpp"

#include <json.hpp>

#include <vector>

namespace permanence {

/// {"n": int, "family": string, "b": [[...]], "c": [...]}. Custom families
/// are library-only and not serializable.
nlohmann::json spec_to_json(const SystemSpec& spec);

/// Throws std::invalid_argument on malformed input.
SystemSpec spec_from_json(const nlohmann::json& j);

nlohmann::json equilibrium_to_json(const Equilibrium& eq);
nlohmann::json equilibria_to_json(const std::vector<Equilibrium>& eqs);

nlohmann::json sign_configuration_to_json(const SignConfiguration& cfg);

nlohmann::json verdict_to_json(const Verdict& v);

}  // namespace permanence
