#pragma once

#include <iosfwd>
#include <span>
#include <string_view>

#include <nlohmann/json.hpp>

#include "specreg/filters.hpp"
#include "specreg/index_function.hpp"
#include "specreg/numeric.hpp"
#include "specreg/rates_exact.hpp"
#include "specreg/rates_noisy.hpp"
#include "specreg/source_conditions.hpp"
#include "specreg/spectral_analysis.hpp"

namespace specreg {

// Non-finite numbers and empty optionals serialize as null. nlohmann::json
// objects keep their keys sorted, so dump(2) gives the canonical form.
nlohmann::json to_json(const Witness& w);
nlohmann::json to_json(const ConditionResult& c);
nlohmann::json to_json(const GridRegion& g);
nlohmann::json to_json(const GeneratorReport& r);
nlohmann::json to_json(const QualificationReport& r);
nlohmann::json to_json(const RatioConditionReport& r);
nlohmann::json to_json(const LinearFit& f);
nlohmann::json to_json(const RateFit& f);
nlohmann::json to_json(const NoisyRateReport& r);
nlohmann::json to_json(const VariationalReport& r);
nlohmann::json to_json(const SscWitness& w);
nlohmann::json to_json(const DistanceProfile& p);
nlohmann::json to_json(const DistanceBoundReport& r);

/// CSV writers. A non-empty comment is emitted first as a `# ` line.
void write_error_curve_csv(std::ostream& out, const ErrorCurve& curve, std::string_view comment = {});
void write_noisy_csv(std::ostream& out, std::span<const NoisyRateReport> rows, std::string_view comment = {});
void write_distance_csv(std::ostream& out, const DistanceProfile& profile, std::string_view comment = {});

}  // namespace specreg
