#pragma once

// JSON and CSV serialisation. Multiprecision values are written as decimal
// strings with enough digits to round-trip; non-finite doubles as "inf",
// "-inf" or "nan".

#include <iosfwd>
#include <memory>
#include <string>

#include <json.hpp>

#include "qfourier/analysis.hpp"
#include "qfourier/fourier.hpp"
#include "qfourier/zeros.hpp"

namespace qfourier::io {

using json = nlohmann::ordered_json;

json number(double x);
double read_number(const json& j);

json to_json(const ZeroEntry& e);
json to_json(const ZeroTable& zt);
ZeroTable zero_table_from_json(const json& j);

json to_json(const FourierSeries& fs);
/// Coefficients are re-read at the table precision; the table must match q.
FourierSeries series_from_json(const json& j, std::shared_ptr<const ZeroTable> zt);

json to_json(const GridFunction& f);
GridFunction grid_from_json(const json& j);

json to_json(const IdentityCheck& c);
json to_json(const HolderReport& r);
json to_json(const DecayFit& f);
json to_json(const DecayReport& r);
json to_json(const GridError& e);
json to_json(const PointError& e);
json to_json(const OrthogonalityReport& r);
json to_json(const EnergyCheck& e);

void write_csv(std::ostream& os, const ZeroTable& zt);
void write_csv(std::ostream& os, const FourierSeries& fs);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace qfourier::io
