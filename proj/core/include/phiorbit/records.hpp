#pragma once

#include <gmpxx.h>
#include <nlohmann/json.hpp>
#include <string>
#include <string_view>

#include "phiorbit/bounds.hpp"
#include "phiorbit/mertens.hpp"
#include "phiorbit/orbit.hpp"
#include "phiorbit/totient.hpp"

namespace phiorbit {

using json = nlohmann::json;

// Bumped whenever a record layout changes; schemas/records.schema.json
// documents this version.
inline constexpr std::string_view kRecordVersion = "1.0";

// {"record_type": type, "version": ..., "inputs": ..., "outputs": ...}
json make_record(std::string_view type, json inputs, json outputs);

// Arbitrary-precision values travel as decimal strings ("num/den" for
// rationals). Finite doubles are JSON numbers, +inf is the string "inf".
json bigint_to_json(const mpz_class& v);
mpz_class bigint_from_json(const json& j);
json rational_to_json(const mpq_class& v);
mpq_class rational_from_json(const json& j);
json real_to_json(double v);
double real_from_json(const json& j);

// Like bigint_to_json, but values with more than max_digits decimal digits
// become {"bits", "decimal_digits", "leading", "trailing"}; such summaries
// do not parse back.
json bigint_summary_json(const mpz_class& v, std::size_t max_digits);

// Witnesses list their primes inline up to this many; beyond it from_json
// re-enumerates them from X and r.
inline constexpr std::size_t kInlinePrimeLimit = 10'000;

void to_json(json& j, const PrimePower& v);
void from_json(const json& j, PrimePower& v);
void to_json(json& j, const FactoredInteger& v);
void from_json(const json& j, FactoredInteger& v);
void to_json(json& j, const PhiChain& v);
void from_json(const json& j, PhiChain& v);
void to_json(json& j, const PillaiBounds& v);
void from_json(const json& j, PillaiBounds& v);
void to_json(json& j, const AverageCheck& v);
void from_json(const json& j, AverageCheck& v);
void to_json(json& j, const LehmerHit& v);
void from_json(const json& j, LehmerHit& v);

void to_json(json& j, const Guards& v);
void from_json(const json& j, Guards& v);
void to_json(json& j, const OrbitSpec& v);
void from_json(const json& j, OrbitSpec& v);
void to_json(json& j, const OrbitResult& v);
void from_json(const json& j, OrbitResult& v);
void to_json(json& j, const GrowthSample& v);
void from_json(const json& j, GrowthSample& v);

void to_json(json& j, const DropWitness& v);
void from_json(const json& j, DropWitness& v);
void to_json(json& j, const Thm1Report& v);
void from_json(const json& j, Thm1Report& v);
void to_json(json& j, const Thm2Report& v);
void from_json(const json& j, Thm2Report& v);
void to_json(json& j, const Prop1Report& v);
void from_json(const json& j, Prop1Report& v);
void to_json(json& j, const ExploreRecord& v);
void from_json(const json& j, ExploreRecord& v);
void to_json(json& j, const ExploreReport& v);
void from_json(const json& j, ExploreReport& v);

void to_json(json& j, const MertensEnvelope& v);
void from_json(const json& j, MertensEnvelope& v);
void to_json(json& j, const CorollaryCheck& v);
void from_json(const json& j, CorollaryCheck& v);
void to_json(json& j, const ChebyshevCheck& v);
void from_json(const json& j, ChebyshevCheck& v);
void to_json(json& j, const CrtWitness& v);
// As to_json, with q and y longer than max_digits replaced by summaries
// (such a record no longer parses back into a witness).
json witness_json(const CrtWitness& v, std::size_t max_digits);
void from_json(const json& j, CrtWitness& v);
void to_json(json& j, const WitnessVerification& v);
void from_json(const json& j, WitnessVerification& v);
void to_json(json& j, const PhiDropDetail& v);
void from_json(const json& j, PhiDropDetail& v);
void to_json(json& j, const PhiDropOutcome& v);
void from_json(const json& j, PhiDropOutcome& v);

}  // namespace phiorbit
