#include "phmarket/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace phmarket {

namespace {

using nlohmann::json;

double num_field(const json& j, const char* name) {
    if (!j.contains(name))
        throw ConfigError(std::string("missing field '") + name + "'");
    const auto& v = j.at(name);
    if (!v.is_number())
        throw ConfigError(std::string("field '") + name + "' must be a number");
    return v.get<double>();
}

double num_field_or(const json& j, const char* name, double fallback) {
    return j.contains(name) ? num_field(j, name) : fallback;
}

TariffPlan plan_from(const json& j) {
    return {num_field(j, "quota_gb"), num_field(j, "lump_sum_usd"),
            num_field(j, "overage_rate_usd_per_gb")};
}

UsageModel usage_from(const json& j) {
    return {num_field(j, "mean_gb"), num_field(j, "std_gb"),
            num_field_or(j, "est_noise_var_gb2", 0.0)};
}

GeometryParams geometry_from(const json& j) {
    GeometryParams geo{num_field(j, "tx_power_w"),      num_field(j, "pathloss_const"),
                       num_field(j, "ref_dist_m"),      num_field(j, "pathloss_exp"),
                       num_field(j, "noise_power_w"),   num_field(j, "sinr_target"),
                       num_field(j, "density_per_m2")};
    geo.validate();
    return geo;
}

MarketParams market_from(const json& j) {
    MarketParams params;
    if (!j.contains("ph_types") || !j.at("ph_types").is_array() || j.at("ph_types").empty())
        throw ConfigError("missing or empty 'ph_types' array");
    for (const auto& jt : j.at("ph_types")) {
        if (!jt.contains("plan") || !jt.contains("usage"))
            throw ConfigError("each ph_type needs 'plan' and 'usage' objects");
        params.ph_types.push_back(
            {plan_from(jt.at("plan")), usage_from(jt.at("usage")), num_field(jt, "density_per_m2")});
    }
    params.roaming_fee_usd = num_field(j, "roaming_fee_usd");
    params.demand_gb = num_field(j, "demand_gb");
    params.reservation_usd = num_field(j, "reservation_usd");
    params.traveler_density_per_m2 = num_field_or(j, "traveler_density_per_m2", 0.0);
    if (j.contains("radius_m")) {
        params.radius_m = num_field(j, "radius_m");
    } else if (j.contains("geometry")) {
        params.radius_m = ph_range(geometry_from(j.at("geometry")));
    } else {
        throw ConfigError("missing field 'radius_m' (or a 'geometry' object to derive it)");
    }
    params.validate();
    return params;
}

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
}

} // namespace

std::string to_string(ExperimentKind kind) {
    switch (kind) {
    case ExperimentKind::CostVsDensity: return "cost-vs-density";
    case ExperimentKind::PriceVsHour: return "price-vs-hour";
    case ExperimentKind::CostVsDeltaMu: return "cost-vs-delta-mu";
    case ExperimentKind::CostVsTravelerDensity: return "cost-vs-traveler-density";
    case ExperimentKind::Custom: return "custom";
    }
    return "custom";
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
    if (name == "cost-vs-density") return ExperimentKind::CostVsDensity;
    if (name == "price-vs-hour") return ExperimentKind::PriceVsHour;
    if (name == "cost-vs-delta-mu") return ExperimentKind::CostVsDeltaMu;
    if (name == "cost-vs-traveler-density") return ExperimentKind::CostVsTravelerDensity;
    if (name == "custom") return ExperimentKind::Custom;
    throw ConfigError("unknown experiment '" + name + "'");
}

void SweepSpec::validate() const {
    if (grid.empty())
        throw ConfigError("sweep grid must be nonempty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw ConfigError("sweep grid must be strictly increasing");
    if (swept_param.empty())
        throw ConfigError("sweep needs a swept parameter name");
    base.validate();
    if (mc && mc->n_trials < 1)
        throw ConfigError("mc.n_trials must be >= 1");
}

MarketParams market_from_json(const std::string& text) {
    return market_from(parse(text));
}

GeometryParams geometry_from_json(const std::string& text) {
    return geometry_from(parse(text));
}

SweepSpec sweep_from_json(const std::string& text) {
    const json j = parse(text);
    SweepSpec spec;
    if (j.contains("experiment"))
        spec.experiment = experiment_kind_from_string(j.at("experiment").get<std::string>());
    if (!j.contains("sweep"))
        throw ConfigError("missing 'sweep' object");
    const json& js = j.at("sweep");
    if (!js.contains("param") || !js.at("param").is_string())
        throw ConfigError("sweep.param must be a string");
    spec.swept_param = js.at("param").get<std::string>();
    if (!js.contains("grid") || !js.at("grid").is_array())
        throw ConfigError("sweep.grid must be an array");
    for (const auto& v : js.at("grid"))
        spec.grid.push_back(v.get<double>());
    if (!j.contains("base"))
        throw ConfigError("missing 'base' market object");
    spec.base = market_from(j.at("base"));
    if (j.contains("mc")) {
        McSettings mc;
        mc.n_trials = static_cast<long long>(num_field(j.at("mc"), "n_trials"));
        mc.seed = static_cast<std::uint64_t>(num_field_or(j.at("mc"), "seed", 1.0));
        spec.mc = mc;
    }
    spec.validate();
    return spec;
}

std::string market_to_json(const MarketParams& params) {
    json j;
    j["ph_types"] = json::array();
    for (const auto& t : params.ph_types) {
        json jt;
        jt["plan"] = {{"quota_gb", t.plan.quota_gb},
                      {"lump_sum_usd", t.plan.lump_sum_usd},
                      {"overage_rate_usd_per_gb", t.plan.overage_rate_usd_per_gb}};
        jt["usage"] = {{"mean_gb", t.usage.mean_gb},
                       {"std_gb", t.usage.std_gb},
                       {"est_noise_var_gb2", t.usage.est_noise_var_gb2}};
        jt["density_per_m2"] = t.density_per_m2;
        j["ph_types"].push_back(jt);
    }
    j["roaming_fee_usd"] = params.roaming_fee_usd;
    j["demand_gb"] = params.demand_gb;
    j["reservation_usd"] = params.reservation_usd;
    j["radius_m"] = params.radius_m;
    j["traveler_density_per_m2"] = params.traveler_density_per_m2;
    return j.dump(2);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

} // namespace phmarket
