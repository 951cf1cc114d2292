#include "mprp/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mprp {

using nlohmann::json;

namespace {

std::string fmt(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw DataError(std::string("json: ") + e.what());
    }
}

const json& need(const json& j, const char* key, const std::string& path) {
    if (!j.is_object() || !j.contains(key))
        throw DataError(path + ": missing field '" + key + "'");
    return j.at(key);
}

double need_number(const json& j, const char* key, const std::string& path) {
    const json& v = need(j, key, path);
    if (!v.is_number())
        throw DataError(path + "." + key + ": expected a number");
    return v.get<double>();
}

int need_int(const json& j, const char* key, const std::string& path) {
    const json& v = need(j, key, path);
    if (!v.is_number_integer())
        throw DataError(path + "." + key + ": expected an integer");
    return v.get<int>();
}

std::pair<double, double> need_pair(const json& j, const char* key,
                                    const std::string& path) {
    const json& v = need(j, key, path);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
        !v[1].is_number())
        throw DataError(path + "." + key + ": expected [number, number]");
    return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

std::string emit_instance(const Instance& instance) {
    json sites = json::array();
    for (const Site& s : instance.sites) {
        sites.push_back({{"id", s.id},
                         {"pos", {s.x, s.y}},
                         {"window", {s.window_start, s.window_end}},
                         {"quantity", s.quantity}});
    }
    const json j = {{"horizon", instance.horizon},
                    {"capacity", instance.capacity},
                    {"fleet_size", instance.fleet_size},
                    {"depot", {instance.depot_x, instance.depot_y}},
                    {"sites", std::move(sites)}};
    return j.dump(2) + "\n";
}

Instance parse_instance(const std::string& text) {
    const json j = parse_json(text);
    const std::string root = "instance";
    Instance instance;
    instance.horizon = need_number(j, "horizon", root);
    instance.capacity = need_number(j, "capacity", root);
    instance.fleet_size = need_int(j, "fleet_size", root);
    std::tie(instance.depot_x, instance.depot_y) = need_pair(j, "depot", root);

    const json& sites = need(j, "sites", root);
    if (!sites.is_array()) throw DataError("instance.sites: expected an array");
    for (std::size_t i = 0; i < sites.size(); ++i) {
        const std::string path = "sites[" + std::to_string(i) + "]";
        const json& sj = sites[i];
        Site s;
        s.id = need_int(sj, "id", path);
        std::tie(s.x, s.y) = need_pair(sj, "pos", path);
        std::tie(s.window_start, s.window_end) = need_pair(sj, "window", path);
        s.quantity = need_number(sj, "quantity", path);
        if (s.window_start > s.window_end)
            throw DataError(path + ".window: start exceeds end");
        instance.sites.push_back(s);
    }
    instance.validate();
    return instance;
}

std::string emit_solution(const Solution& solution) {
    json j = {{"routes", solution.routes},
              {"arrival_times", solution.arrival_times},
              {"profit", solution.profit}};
    if (solution.seed)
        j["seed"] = *solution.seed;
    else
        j["seed"] = nullptr;
    return j.dump(2) + "\n";
}

Solution parse_solution(const std::string& text) {
    const json j = parse_json(text);
    const std::string root = "solution";
    Solution s;
    const json& routes = need(j, "routes", root);
    const json& times = need(j, "arrival_times", root);
    if (!routes.is_array()) throw DataError("solution.routes: expected an array");
    if (!times.is_array())
        throw DataError("solution.arrival_times: expected an array");
    try {
        s.routes = routes.get<std::vector<std::vector<int>>>();
        s.arrival_times = times.get<std::vector<std::vector<double>>>();
    } catch (const json::exception&) {
        throw DataError("solution: routes/arrival_times have the wrong shape");
    }
    s.profit = need_number(j, "profit", root);
    if (j.contains("seed") && !j.at("seed").is_null()) {
        if (!j.at("seed").is_number_integer())
            throw DataError("solution.seed: expected an integer or null");
        s.seed = j.at("seed").get<std::uint64_t>();
    }
    return s;
}

namespace {

TimingVariant parse_timing(const std::string& name) {
    if (name == "repaired") return TimingVariant::repaired;
    if (name == "literal") return TimingVariant::literal;
    throw DataError("solver_config.timing_variant: expected 'repaired' or "
                    "'literal', got '" +
                    name + "'");
}

SolverConfig parse_solver_config(const json& j) {
    SolverConfig config;
    if (j.contains("timing_variant"))
        config.timing_variant =
            parse_timing(j.at("timing_variant").get<std::string>());
    if (j.contains("clamp_negative_profit_factor"))
        config.clamp_negative_profit_factor =
            j.at("clamp_negative_profit_factor").get<bool>();
    if (j.contains("max_empty_retries") && !j.at("max_empty_retries").is_null())
        config.max_empty_retries =
            j.at("max_empty_retries").get<std::size_t>();
    if (j.contains("charge_return_leg"))
        config.charge_return_leg = j.at("charge_return_leg").get<bool>();
    if (j.contains("frozen_denominator"))
        config.frozen_denominator = j.at("frozen_denominator").get<bool>();
    return config;
}

json emit_solver_config(const SolverConfig& config) {
    json j = {{"timing_variant", config.timing_variant == TimingVariant::repaired
                                     ? "repaired"
                                     : "literal"},
              {"clamp_negative_profit_factor",
               config.clamp_negative_profit_factor},
              {"charge_return_leg", config.charge_return_leg},
              {"frozen_denominator", config.frozen_denominator}};
    if (config.max_empty_retries)
        j["max_empty_retries"] = *config.max_empty_retries;
    else
        j["max_empty_retries"] = nullptr;
    return j;
}

}  // namespace

ExperimentPlan parse_plan(const std::string& text) {
    const json j = parse_json(text);
    ExperimentPlan plan;
    if (j.contains("gen_params")) {
        const json& g = j.at("gen_params");
        if (g.contains("n")) plan.gen_params.n = g.at("n").get<int>();
        if (g.contains("m")) plan.gen_params.m = g.at("m").get<int>();
        if (g.contains("capacity"))
            plan.gen_params.capacity = g.at("capacity").get<double>();
        if (g.contains("horizon"))
            plan.gen_params.horizon = g.at("horizon").get<double>();
        // gen_params.seed, if present, is ignored: trial seeds derive from
        // master_seed.
    }
    if (j.contains("sweep")) {
        const json& sweep = j.at("sweep");
        if (!sweep.is_object())
            throw DataError("plan.sweep: expected an object of arrays");
        for (const auto& [key, values] : sweep.items()) {
            if (!values.is_array())
                throw DataError("plan.sweep." + key + ": expected an array");
            plan.sweep[key] = values.get<std::vector<double>>();
        }
    }
    if (j.contains("trials_per_cell"))
        plan.trials_per_cell = j.at("trials_per_cell").get<int>();
    if (j.contains("restarts")) plan.restarts = j.at("restarts").get<int>();
    if (j.contains("solver_config"))
        plan.solver_config = parse_solver_config(j.at("solver_config"));
    if (j.contains("compare_oracle"))
        plan.compare_oracle = j.at("compare_oracle").get<bool>();
    if (j.contains("master_seed"))
        plan.master_seed = j.at("master_seed").get<std::uint64_t>();
    if (j.contains("measure_time"))
        plan.measure_time = j.at("measure_time").get<bool>();
    return plan;
}

std::string emit_plan(const ExperimentPlan& plan) {
    json j = {{"gen_params",
               {{"n", plan.gen_params.n},
                {"m", plan.gen_params.m},
                {"capacity", plan.gen_params.capacity},
                {"horizon", plan.gen_params.horizon}}},
              {"sweep", plan.sweep},
              {"trials_per_cell", plan.trials_per_cell},
              {"restarts", plan.restarts},
              {"solver_config", emit_solver_config(plan.solver_config)},
              {"compare_oracle", plan.compare_oracle},
              {"master_seed", plan.master_seed},
              {"measure_time", plan.measure_time}};
    return j.dump(2) + "\n";
}

namespace {

json cell_to_json(const CellResult& cell) {
    return {{"n", cell.n},
            {"m", cell.m},
            {"capacity", cell.capacity},
            {"horizon", cell.horizon},
            {"trials", cell.trials},
            {"restarts", cell.restarts},
            {"mean_profit", cell.mean_profit},
            {"std_profit", cell.std_profit},
            {"ci95", cell.ci95},
            {"ratio_oracle_mean", cell.ratio_oracle_mean},
            {"ratio_bound_mean", cell.ratio_bound_mean},
            {"mean_solve_ms", cell.mean_solve_ms}};
}

}  // namespace

std::string emit_report_json(const ExperimentReport& report) {
    json cells = json::array();
    for (const CellResult& cell : report.cells) cells.push_back(cell_to_json(cell));
    const json j = {{"cells", std::move(cells)}};
    return j.dump(2) + "\n";
}

std::string emit_report_csv(const ExperimentReport& report) {
    std::ostringstream out;
    out << "n,m,capacity,horizon,trials,restarts,mean_profit,std_profit,ci95,"
           "ratio_oracle_mean,ratio_bound_mean,mean_solve_ms\n";
    for (const CellResult& c : report.cells) {
        out << c.n << ',' << c.m << ',' << fmt(c.capacity) << ','
            << fmt(c.horizon) << ',' << c.trials << ',' << c.restarts << ','
            << fmt(c.mean_profit) << ',' << fmt(c.std_profit) << ','
            << fmt(c.ci95) << ',' << fmt(c.ratio_oracle_mean) << ','
            << fmt(c.ratio_bound_mean) << ',' << fmt(c.mean_solve_ms) << '\n';
    }
    return out.str();
}

std::string emit_probe_json(const RuntimeProbeReport& report) {
    auto axis_to_json = [](const ProbeAxis& axis) {
        json points = json::array();
        for (const ProbePoint& p : axis.points)
            points.push_back({{"size", p.size},
                              {"fresh_ms", p.fresh_ms},
                              {"frozen_ms", p.frozen_ms}});
        return json{{"axis", axis.axis},
                    {"points", std::move(points)},
                    {"fresh_slope", axis.fresh_slope},
                    {"frozen_slope", axis.frozen_slope}};
    };
    const json j = {{"n_axis", axis_to_json(report.n_axis)},
                    {"m_axis", axis_to_json(report.m_axis)},
                    {"notes", report.notes}};
    return j.dump(2) + "\n";
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

bool parse_double(const std::string& tok, double& out) {
    const char* begin = tok.data();
    const char* end = begin + tok.size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end && std::isfinite(out);
}

}  // namespace

SolomonConversion convert_solomon(const std::string& text,
                                  std::optional<double> horizon_override) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::vector<std::string>> rows;
    std::string name;
    int vehicle_count = -1;
    double capacity = -1.0;
    enum { kPreamble, kVehicle, kCustomer } section = kPreamble;

    while (std::getline(in, line)) {
        auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        if (tokens[0] == "VEHICLE") {
            section = kVehicle;
            continue;
        }
        if (tokens[0] == "CUSTOMER") {
            section = kCustomer;
            continue;
        }
        switch (section) {
            case kPreamble:
                if (name.empty()) name = tokens[0];
                break;
            case kVehicle: {
                if (tokens[0] == "NUMBER") break;  // column header
                double count = 0.0, cap = 0.0;
                if (tokens.size() != 2 || !parse_double(tokens[0], count) ||
                    !parse_double(tokens[1], cap))
                    throw DataError("solomon: malformed VEHICLE row: " + line);
                vehicle_count = static_cast<int>(count);
                capacity = cap;
                break;
            }
            case kCustomer: {
                if (tokens[0] == "CUST" || tokens[0] == "CUST.") break;
                if (tokens.size() != 7)
                    throw DataError("solomon: malformed customer row: " + line);
                rows.push_back(std::move(tokens));
                break;
            }
        }
    }

    if (vehicle_count < 1 || !(capacity > 0.0))
        throw DataError("solomon: missing or invalid VEHICLE header");
    if (rows.empty()) throw DataError("solomon: missing depot row");

    struct Record {
        double id, x, y, demand, ready, due, service;
    };
    std::vector<Record> records;
    records.reserve(rows.size());
    for (const auto& row : rows) {
        Record r;
        double* fields[7] = {&r.id,    &r.x,   &r.y,      &r.demand,
                             &r.ready, &r.due, &r.service};
        for (int f = 0; f < 7; ++f)
            if (!parse_double(row[f], *fields[f]))
                throw DataError("solomon: malformed customer field '" + row[f] +
                                "'");
        if (r.due < r.ready)
            throw DataError("solomon: customer " + row[0] +
                            " has due date before ready time");
        records.push_back(r);
    }
    if (records.front().id != 0.0)
        throw DataError("solomon: first customer row must be depot (id 0)");
    for (std::size_t i = 1; i < records.size(); ++i)
        if (records[i].id <= records[i - 1].id)
            throw DataError("solomon: customer ids must be ascending");

    const Record depot = records.front();
    double horizon = 0.0;
    if (horizon_override) {
        horizon = *horizon_override;
    } else {
        for (const Record& r : records) horizon = std::max(horizon, r.due);
    }
    if (!(horizon > 0.0)) throw DataError("solomon: horizon must be > 0");

    SolomonConversion result;
    result.name = name;
    Instance& instance = result.instance;
    instance.depot_x = 0.0;
    instance.depot_y = 0.0;
    instance.fleet_size = vehicle_count;
    instance.capacity = capacity;
    instance.horizon = horizon;
    for (std::size_t i = 1; i < records.size(); ++i) {
        const Record& r = records[i];
        Site s;
        s.id = static_cast<int>(i - 1);  // remapped to a dense [0, n) range
        s.x = r.x - depot.x;
        s.y = r.y - depot.y;
        s.window_start = r.ready;
        s.window_end = r.due;
        s.quantity = r.demand;
        if (s.window_end > horizon) {
            s.window_end = horizon;
            ++result.clipped_windows;
        }
        if (s.window_start > s.window_end) {
            s.window_start = s.window_end;
            ++result.clipped_windows;
        }
        if (r.service != 0.0) ++result.nonzero_service_times;
        instance.sites.push_back(s);
    }
    instance.validate();
    return result;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write file: " + tmp.string());
        out << content;
        if (!out.flush()) throw DataError("write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw DataError("cannot rename " + tmp.string() + " to " + path + ": " +
                        ec.message());
    }
}

}  // namespace mprp
