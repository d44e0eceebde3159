#include <fstream>
#include <sstream>

#include <json.hpp>

#include <gifnet/csv.hpp>
#include <gifnet/error.hpp>
#include <gifnet/params_io.hpp>

namespace gifnet {

using json = nlohmann::json;

namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
    throw error(errc::invalid_argument, "params field '" + field + "': " + why);
}

const json& need(const json& j, const char* field) {
    auto it = j.find(field);
    if (it == j.end()) bad_field(field, "missing");
    return *it;
}

double real_of(const json& v, const std::string& field) {
    if (!v.is_number()) bad_field(field, "expected a number");
    return v.get<double>();
}

std::vector<double> vec_of(const json& v, std::size_t n, const std::string& field) {
    if (v.is_number()) return std::vector<double>(n, v.get<double>());
    if (!v.is_array()) bad_field(field, "expected a number or an array");
    if (v.size() != n) bad_field(field, "expected " + std::to_string(n) + " entries");
    std::vector<double> out;
    for (auto& x: v) out.push_back(real_of(x, field));
    return out;
}

std::vector<std::vector<double>> mat_of(const json& v, std::size_t n, const std::string& field) {
    if (v.is_number()) return std::vector<std::vector<double>>(n, std::vector<double>(n, v.get<double>()));
    if (!v.is_array() || v.size() != n) bad_field(field, "expected " + std::to_string(n) + " rows");
    std::vector<std::vector<double>> out;
    for (auto& row: v) out.push_back(vec_of(row, n, field));
    return out;
}

current_term term_of(const json& t, const std::string& field) {
    if (!t.is_object()) bad_field(field, "expected an object per current term");
    current_term c;
    std::string type = need(t, "type").get<std::string>();
    if (type == "constant") {
        c.type = current_term::kind::constant;
        c.value = real_of(need(t, "value"), field + ".value");
    }
    else if (type == "step") {
        c.type = current_term::kind::step;
        c.value = real_of(need(t, "value"), field + ".value");
        c.t_on = real_of(need(t, "t_on"), field + ".t_on");
        c.t_off = real_of(need(t, "t_off"), field + ".t_off");
    }
    else if (type == "sinusoid") {
        c.type = current_term::kind::sinusoid;
        c.value = real_of(need(t, "amplitude"), field + ".amplitude");
        c.period = real_of(need(t, "period"), field + ".period");
        c.phase = t.contains("phase")? real_of(t["phase"], field + ".phase"): 0.0;
    }
    else bad_field(field, "unknown term type '" + type + "'");
    return c;
}

} // namespace

network_params parse_params(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    }
    catch (const json::exception& e) {
        throw error(errc::invalid_argument, std::string("params file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw error(errc::invalid_argument, "params file must hold an object");

    network_params p;
    try {
        auto& nn = need(j, "n_neurons");
        if (!nn.is_number_integer() || nn.get<long long>() < 1) bad_field("n_neurons", "expected a positive integer");
        const std::size_t n = nn.get<std::size_t>();
        p.n_neurons = n;
        p.capacitance = vec_of(need(j, "capacitance"), n, "capacitance");
        p.threshold = real_of(need(j, "threshold"), "threshold");
        p.leak_reversal = real_of(need(j, "leak_reversal"), "leak_reversal");
        p.excitatory_reversal = real_of(need(j, "excitatory_reversal"), "excitatory_reversal");
        p.inhibitory_reversal = real_of(need(j, "inhibitory_reversal"), "inhibitory_reversal");
        p.leak_conductance = vec_of(need(j, "leak_conductance"), n, "leak_conductance");

        auto& pop = need(j, "population");
        if (pop.is_string()) p.population.assign(n, population_from_string(pop.get<std::string>()));
        else if (pop.is_array() && pop.size() == n) {
            for (auto& x: pop) {
                if (!x.is_string()) bad_field("population", "expected strings");
                p.population.push_back(population_from_string(x.get<std::string>()));
            }
        }
        else bad_field("population", "expected " + std::to_string(n) + " labels");

        p.max_conductance = mat_of(need(j, "max_conductance"), n, "max_conductance");
        p.synapse_tau = mat_of(need(j, "synapse_tau"), n, "synapse_tau");
        p.profile_kind = profile_kind_from_string(need(j, "profile_kind").get<std::string>());
        if (j.contains("profile_degree")) {
            if (!j["profile_degree"].is_number_integer()) bad_field("profile_degree", "expected an integer");
            p.profile_degree = j["profile_degree"].get<int>();
        }
        else if (p.profile_kind == profile_kind::power_exponential) {
            bad_field("profile_degree", "required for power_exponential");
        }
        p.profile_degree = profile_degree_of(p.profile_kind, p.profile_degree);
        p.noise_amplitude = real_of(need(j, "noise_amplitude"), "noise_amplitude");
        p.reset_std = real_of(need(j, "reset_std"), "reset_std");
        p.refractory = j.contains("refractory")? real_of(j["refractory"], "refractory"): 0.0;

        if (j.contains("external_current")) {
            auto& ec = j["external_current"];
            if (!ec.is_array() || ec.size() > n) bad_field("external_current", "expected at most one list per neuron");
            for (std::size_t k = 0; k < ec.size(); ++k) {
                std::string f = "external_current[" + std::to_string(k) + "]";
                if (!ec[k].is_array()) bad_field(f, "expected a list of terms");
                std::vector<current_term> row;
                for (auto& t: ec[k]) row.push_back(term_of(t, f));
                p.external_current.terms.push_back(std::move(row));
            }
        }
    }
    catch (const json::exception& e) {
        throw error(errc::invalid_argument, std::string("params file: ") + e.what());
    }
    catch (const error& e) {
        if (e.code() == errc::invalid_argument) throw;
        throw error(errc::invalid_argument, e.what());
    }
    return p;
}

network_params load_params(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw error(errc::io_error, "cannot open params file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_params(ss.str());
}

std::string dump_params(const network_params& p) {
    json j;
    j["n_neurons"] = p.n_neurons;
    j["capacitance"] = p.capacitance;
    j["threshold"] = p.threshold;
    j["leak_reversal"] = p.leak_reversal;
    j["excitatory_reversal"] = p.excitatory_reversal;
    j["inhibitory_reversal"] = p.inhibitory_reversal;
    j["leak_conductance"] = p.leak_conductance;
    json pop = json::array();
    for (auto x: p.population) pop.push_back(std::string(to_string(x)));
    j["population"] = pop;
    j["max_conductance"] = p.max_conductance;
    j["synapse_tau"] = p.synapse_tau;
    j["profile_kind"] = std::string(to_string(p.profile_kind));
    j["profile_degree"] = profile_degree_of(p.profile_kind, p.profile_degree);
    j["noise_amplitude"] = p.noise_amplitude;
    j["reset_std"] = p.reset_std;
    j["refractory"] = p.refractory;
    json ec = json::array();
    for (auto& row: p.external_current.terms) {
        json r = json::array();
        for (auto& c: row) {
            switch (c.type) {
            case current_term::kind::constant:
                r.push_back({{"type", "constant"}, {"value", c.value}});
                break;
            case current_term::kind::step:
                r.push_back({{"type", "step"}, {"value", c.value}, {"t_on", c.t_on}, {"t_off", c.t_off}});
                break;
            case current_term::kind::sinusoid:
                r.push_back({{"type", "sinusoid"}, {"amplitude", c.value}, {"period", c.period}, {"phase", c.phase}});
                break;
            }
        }
        ec.push_back(r);
    }
    j["external_current"] = ec;
    return j.dump(2);
}

void write_bounds_csv(std::ostream& os, const bounds_table& b) {
    csv_writer w(os);
    w.row("quantity", "neuron", "value");
    w.row("alpha_plus", "all", b.alpha_plus);
    auto per = [&](const char* name, const std::vector<double>& v) {
        for (std::size_t k = 0; k < v.size(); ++k) w.row(name, k, v[k]);
    };
    per("g_max", b.g_max);
    per("tau_leak", b.tau_leak);
    per("tau_min", b.tau_min);
    per("v_lo", b.v_lo);
    per("v_hi", b.v_hi);
    per("sigma_lo", b.sigma_lo);
    per("sigma_hi", b.sigma_hi);
    per("pi_lo", b.pi_lo);
    per("pi_hi", b.pi_hi);
    per("cap_lo", b.cap_lo);
    per("cap_hi", b.cap_hi);
    per("log_cap_lo", b.log_cap_lo);
    w.row("m_p_lower", "all", b.m_p_lower);
    w.row("log_m_p_lower", "all", b.log_m_p_lower);
}

} // namespace gifnet
