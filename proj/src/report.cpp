#include "pshlab/report.hpp"

#include <sstream>

namespace pshlab {

namespace {

Json point_json(const ComplexPoint& p) {
    Json a = Json::array();
    for (double c : p.coords) a.push_back(c);
    return a;
}

}  // namespace

Json to_json(const Witness& w, const GridDomain* domain) {
    Json j;
    j["node"] = w.node;
    if (domain) j["point"] = point_json(domain->node_point(w.node));
    j["direction"] = w.direction;
    j["r"] = w.r;
    j["violation"] = w.violation;
    return j;
}

Json to_json(const Verdict& v, const GridDomain* domain) {
    Json j;
    j["status"] = to_string(v.status);
    j["tested_node_count"] = v.tested_node_count;
    j["skipped_node_count"] = v.skipped_node_count;
    Json ws = Json::array();
    for (const auto& w : v.witnesses) ws.push_back(to_json(w, domain));
    j["witnesses"] = ws;
    return j;
}

Json to_json(const AbpReport& r) {
    Json j;
    j["delta"] = r.delta;
    j["sup_abs"] = r.sup_abs;
    j["contact_integral"] = r.contact_integral;
    j["contact_count"] = r.contact_count;
    if (r.implied_C_defined) j["implied_C"] = r.implied_C;
    else j["implied_C"] = nullptr;
    j["lower_bound_ok"] = r.lower_bound_ok;
    return j;
}

Json to_json(const ChainRecord& c) {
    Json j;
    j["delta"] = c.delta;
    j["r"] = c.r;
    j["direction_index"] = c.direction_index;
    j["u_gap"] = c.u_gap;
    j["gamma_gap"] = c.gamma_gap;
    j["phi_bound"] = c.phi_bound;
    j["u_ok"] = c.u_ok;
    j["gamma_ok"] = c.gamma_ok;
    j["chain_ok"] = c.chain_ok;
    return j;
}

Json to_json(const DeltaRecord& r) {
    Json j;
    j["delta"] = r.delta;
    j["h"] = r.h;
    j["z_delta"] = point_json(r.z_delta);
    j["dist_to_E"] = r.dist_to_E;
    j["dist_to_z0"] = r.dist_to_z0;
    j["collar_ok"] = r.collar.ok;
    j["collar_worst_value"] = r.collar.worst_value;
    j["abp"] = to_json(r.abp);
    j["hessian_form_min"] = r.hessian_form_min;
    j["hessian_eigen_min"] = r.hessian_eigen_min;
    j["envelope_iterations"] = r.envelope_iterations;
    j["usable_radii"] = r.usable_radii;
    Json chains = Json::array();
    for (const auto& c : r.chains) chains.push_back(to_json(c));
    j["chains"] = chains;
    return j;
}

Json to_json(const ExtensionReport& r) {
    Json j;
    j["verdict"] = to_string(r.verdict);
    j["reason"] = r.reason;
    j["guard_subharmonic"] = to_json(r.guard_subharmonic);
    j["guard_psh"] = to_json(r.guard_psh);
    Json recs = Json::array();
    for (const auto& rec : r.records) recs.push_back(to_json(rec));
    j["per_delta"] = recs;
    if (r.extrapolation_defined) j["extrapolated_bound"] = r.extrapolated_bound;
    else j["extrapolated_bound"] = nullptr;
    if (r.grid_fraction_on_E > 0.0) j["grid_fraction_on_E"] = r.grid_fraction_on_E;
    return j;
}

Json to_json(const EntryVerdicts& v) {
    Json j;
    j["subharmonic"] = to_json(v.subharmonic);
    j["psh"] = to_json(v.psh);
    if (v.psh_off) j["psh_off"] = to_json(*v.psh_off);
    return j;
}

std::string chain_records_csv(const ExtensionReport& report) {
    std::ostringstream os;
    os << "delta,r,T_index,u_gap,gamma_gap,phi_bound,hessian_form_min\r\n";
    os.precision(17);
    for (const auto& rec : report.records) {
        for (const auto& c : rec.chains) {
            os << c.delta << ',' << c.r << ',' << c.direction_index << ',' << c.u_gap << ','
               << c.gamma_gap << ',' << c.phi_bound << ',' << rec.hessian_form_min << "\r\n";
        }
    }
    return os.str();
}

std::string abp_reports_csv(const ExtensionReport& report) {
    std::ostringstream os;
    os << "delta,sup_abs,contact_integral,contact_count,implied_C,lower_bound_ok\r\n";
    os.precision(17);
    for (const auto& rec : report.records) {
        const auto& a = rec.abp;
        os << a.delta << ',' << a.sup_abs << ',' << a.contact_integral << ',' << a.contact_count
           << ',';
        if (a.implied_C_defined) os << a.implied_C;
        os << ',' << (a.lower_bound_ok ? "true" : "false") << "\r\n";
    }
    return os.str();
}

}  // namespace pshlab
