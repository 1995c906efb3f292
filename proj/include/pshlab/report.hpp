#pragma once

#include <string>

#include <json.hpp>

#include "pshlab/abp.hpp"
#include "pshlab/catalog.hpp"
#include "pshlab/pipeline.hpp"
#include "pshlab/viscosity.hpp"

namespace pshlab {

using Json = nlohmann::ordered_json;

Json to_json(const Witness& w, const GridDomain* domain = nullptr);
Json to_json(const Verdict& v, const GridDomain* domain = nullptr);
Json to_json(const AbpReport& r);
Json to_json(const ChainRecord& c);
Json to_json(const DeltaRecord& r);
Json to_json(const ExtensionReport& r);
Json to_json(const EntryVerdicts& v);

/// CSV table of chain records, one row per (delta, r, T): columns
/// delta,r,T_index,u_gap,gamma_gap,phi_bound,hessian_form_min (RFC 4180).
std::string chain_records_csv(const ExtensionReport& report);

/// CSV table of ABP reports, one row per delta.
std::string abp_reports_csv(const ExtensionReport& report);

}  // namespace pshlab
