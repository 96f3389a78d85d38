#include "cfkit/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace cfkit {

namespace {

json num_or_inf(double v) {
    if (std::isinf(v)) return "inf";
    return v;
}

}  // namespace

json json_of(const basic_interval& iv) {
    return json{{"left", rational_str(iv.left)},
                {"right", rational_str(iv.right)},
                {"closed_left", iv.closed_left},
                {"closed_right", iv.closed_right},
                {"order", iv.order}};
}

json json_of(const expansion& e) {
    return json{{"word", e.word.str()}, {"trusted_length", e.trusted}};
}

json json_of(const exponent_estimate& est) {
    json sums = json::array();
    for (auto& [s, v] : est.partial_sums) sums.push_back(json{{"s", s}, {"sum", v}});
    return json{{"value", num_or_inf(est.value)},
                {"window", {est.window_lo, est.window_hi}},
                {"method", est.method},
                {"partial_sums", sums}};
}

json json_of(const ratio_trace& tr) {
    json rows = json::array();
    for (auto& e : tr.entries)
        rows.push_back(json{{"n", e.n}, {"ratio", e.ratio}, {"running_sup", e.running_sup}});
    return json{{"rows", rows}};
}

json json_of(const std::vector<std::pair<long, double>>& levy) {
    json rows = json::array();
    for (auto& [n, v] : levy) rows.push_back(json{{"n", n}, {"levy", v}});
    return json{{"rows", rows}};
}

json json_of(const approximation_rate& r) {
    return json{{"c", r.c}, {"gamma", r.gamma}};
}

json json_of(const construction_params& p) {
    json j{{"alpha", rational_str(p.alpha)},
           {"beta", rational_str(p.beta)},
           {"family", p.family == seed_family::f_alpha ? "F(alpha)" : "F(0)"},
           {"lambda", p.lambda.exact ? json(rational_str(*p.lambda.exact))
                                     : json(p.lambda.approx)},
           {"n1", p.n1.get_str()}};
    if (p.family == seed_family::f_alpha) j["n0"] = p.n0.get_str();
    return j;
}

json json_of(const schedule& s) {
    const bool exact = s.mode == schedule_mode::exact;
    json levels = json::array();
    for (const auto& lv : s.levels) {
        json l{{"j", lv.j}, {"log_n_j", lv.log_n}};
        if (exact) {
            l["n_j"] = lv.n.get_str();
            l["c_j"] = lv.c.get_str();
            l["e_j"] = lv.e.get_str();
        } else {
            l["log_c_j"] = lv.log_c;
            l["log_e_j"] = lv.log_e;
        }
        l["r_j"] = lv.r;
        l["m_j"] = lv.m;
        l["log_q_mj"] = lv.log_q_m;
        l["threshold_pre_satisfied"] = lv.threshold_pre_satisfied;
        levels.push_back(std::move(l));
    }
    char fp[17];
    std::snprintf(fp, sizeof fp, "%016llx", static_cast<unsigned long long>(s.fingerprint));
    return json{{"mode", exact ? "exact" : "logspace"},
                {"fingerprint", fp},
                {"digit_budget", s.digit_budget},
                {"seed_selector", selector_name(s.seed.sel)},
                {"digit_selector", selector_name(s.digit_sel)},
                {"rng_seed", s.seed.rng_seed},
                {"params", json_of(s.params)},
                {"levels", levels}};
}

json json_of(const membership_report_t& rep) {
    json levels = json::array();
    for (const auto& d : rep.levels)
        levels.push_back(json{{"j", d.j},
                              {"ratio_m", d.ratio_m},
                              {"ratio_m1", d.ratio_m1},
                              {"ratio_m2", d.ratio_m2},
                              {"off_block_max", d.off_block_max},
                              {"tau_term", d.tau_term},
                              {"threshold_pre_satisfied", d.threshold_pre_satisfied}});
    return json{{"eps", rep.eps},
                {"tau_partial_sum", rep.tau_partial_sum},
                {"targets", {{"ratio_m", rep.target_m},
                             {"ratio_m1", rep.target_m1},
                             {"ratio_m2", rep.target_m2}}},
                {"levels", levels}};
}

json json_of(const std::vector<measure_probe>& probes) {
    json rows = json::array();
    for (const auto& p : probes)
        rows.push_back(json{{"n", p.n},
                            {"position_class", position_class_name(p.cls)},
                            {"log_mu", p.log_mu},
                            {"log_J", p.log_len},
                            {"holder", p.holder}});
    return rows;
}

std::string csv_of(const ratio_trace& tr) {
    std::string out = "n,ratio,running_sup\n";
    char buf[96];
    for (auto& e : tr.entries) {
        std::snprintf(buf, sizeof buf, "%ld,%.12g,%.12g\n", e.n, e.ratio, e.running_sup);
        out += buf;
    }
    return out;
}

std::string csv_of(const std::vector<std::pair<long, double>>& levy) {
    std::string out = "n,levy\n";
    char buf[64];
    for (auto& [n, v] : levy) {
        std::snprintf(buf, sizeof buf, "%ld,%.12g\n", n, v);
        out += buf;
    }
    return out;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open '" + tmp + "' for writing");
        f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!f) throw std::runtime_error("short write to '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename '" + tmp + "' to '" + path + "'");
}

}  // namespace cfkit
