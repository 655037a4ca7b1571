#pragma once

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "magicineq/certificate.hpp"
#include "magicineq/evaluator.hpp"
#include "magicineq/version.hpp"

namespace magicineq {

/// Resolved run configuration, echoed verbatim into every report.
struct RunConfig {
    std::string suite;
    long order = 128;
    mpfr_prec_t precision = 128;
    std::string format = "json";     // json | tsv
    std::string output;              // empty = stdout
    bool timings = false;            // include wall times (breaks byte determinism)
    // eval
    std::string which;               // "A" | "B"
    std::string t;                   // exact "p/q"
    // scan
    std::string t_min;
    std::string t_max;
    int steps = 0;
};

/// Machine-readable run outcome: certificate list, optional sign
/// certificates and scan grid, and summary counts that alone determine
/// the process exit status. Wall times live in a separate block that is
/// omitted by default so identical configs produce identical bytes.
struct Report {
    RunConfig config;
    std::vector<Certificate> certificates;
    std::vector<SignCertificate> sign_certificates;
    std::vector<GridRow> grid;
    std::vector<std::pair<std::string, double>> wall_ms;

    int passes() const { return count(Status::Pass); }
    int failures() const { return count(Status::Fail); }
    int inconclusives() const { return count(Status::Inconclusive); }

    /// 0 if everything passed, 1 on any fail, 2 on inconclusive-only.
    int exit_code() const {
        if (failures() > 0) return 1;
        if (inconclusives() > 0) return 2;
        return 0;
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["tool"] = "magicineq";
        j["version"] = MAGICINEQ_VERSION;
        j["schema_version"] = 1;
        nlohmann::ordered_json cfg;
        cfg["suite"] = config.suite;
        cfg["order"] = config.order;
        cfg["precision"] = static_cast<long>(config.precision);
        cfg["format"] = config.format;
        if (!config.which.empty()) cfg["which"] = config.which;
        if (!config.t.empty()) cfg["t"] = config.t;
        if (!config.t_min.empty()) {
            cfg["t_min"] = config.t_min;
            cfg["t_max"] = config.t_max;
            cfg["steps"] = config.steps;
        }
        j["config"] = cfg;

        j["certificates"] = nlohmann::ordered_json::array();
        for (const auto& c : certificates) j["certificates"].push_back(cert_json(c));

        if (!sign_certificates.empty()) {
            j["sign_certificates"] = nlohmann::ordered_json::array();
            for (const auto& s : sign_certificates)
                j["sign_certificates"].push_back(sign_json(s));
        }
        if (!grid.empty()) {
            j["grid"] = nlohmann::ordered_json::array();
            for (const auto& row : grid) {
                nlohmann::ordered_json r;
                r["index"] = row.index;
                r["t"] = row.t.str();
                r["a"] = sign_json(row.a);
                r["b"] = sign_json(row.b);
                j["grid"].push_back(r);
            }
        }

        j["summary"] = {{"pass", passes()}, {"fail", failures()}, {"inconclusive", inconclusives()}};

        // ignored field: excluded by default so report bytes are a pure
        // function of config + version
        if (config.timings) {
            nlohmann::ordered_json t;
            for (const auto& [name, ms] : wall_ms) t[name] = ms;
            j["timing"] = t;
        } else {
            j["timing"] = nullptr;
        }
        return j;
    }

    std::string to_json_string() const { return to_json().dump(2) + "\n"; }

    /// TSV rendering. Certificate suites use one row per certificate; scan
    /// uses the fixed grid columns.
    std::string to_tsv() const {
        std::ostringstream os;
        if (!grid.empty()) {
            os << "t_num\tt_den\tA_status\tA_phi0_recip_lo\tA_phi0_recip_hi\tA_delta_recip_lo\t"
                  "A_delta_recip_hi\tA_gtilde_lo\tA_gtilde_hi\tA_delta_lo\tA_delta_hi\t"
                  "B_status\tB_route\tB_margin_lo\tB_margin_hi\tB_delta_lo\tB_delta_hi\n";
            auto put_enclosures = [&os](const SignCertificate& s, size_t expected) {
                size_t written = 0;
                for (const auto& [name, itv] : s.enclosures) {
                    os << "\t" << itv.lo_str() << "\t" << itv.hi_str();
                    ++written;
                }
                for (; written < expected; ++written) os << "\t\t"; // row gave up before evaluating
            };
            for (const auto& row : grid) {
                os << row.t.num().get_str() << "\t" << row.t.den().get_str() << "\t"
                   << status_name(row.a.status);
                put_enclosures(row.a, 4);
                os << "\t" << status_name(row.b.status) << "\t" << row.b.route;
                put_enclosures(row.b, 2);
                os << "\n";
            }
            return os.str();
        }
        if (!sign_certificates.empty()) {
            os << "target\tt_num\tt_den\tstatus\troute\torder\tprecision\tenclosures\n";
            for (const auto& s : sign_certificates) {
                os << (s.target == SignCertificate::Target::ANegative ? "A<0" : "B>0") << "\t"
                   << s.t.num().get_str() << "\t" << s.t.den().get_str() << "\t"
                   << status_name(s.status) << "\t" << s.route << "\t" << s.order_used << "\t"
                   << static_cast<long>(s.precision_used) << "\t";
                bool first = true;
                for (const auto& [name, itv] : s.enclosures) {
                    if (!first) os << "; ";
                    first = false;
                    os << name << " in " << itv.str();
                }
                os << "\n";
            }
            return os.str();
        }
        os << "id\tstatus\torder\tprecision\tevidence\n";
        for (const auto& c : certificates)
            os << c.id << "\t" << status_name(c.status) << "\t" << c.order << "\t"
               << static_cast<long>(c.precision) << "\t" << c.evidence << "\n";
        return os.str();
    }

private:
    int count(Status s) const {
        int n = 0;
        for (const auto& c : certificates)
            if (c.status == s) ++n;
        for (const auto& c : sign_certificates)
            if (c.status == s) ++n;
        for (const auto& row : grid) {
            if (row.a.status == s) ++n;
            if (row.b.status == s) ++n;
        }
        return n;
    }

    static nlohmann::ordered_json cert_json(const Certificate& c) {
        nlohmann::ordered_json j;
        j["id"] = c.id;
        j["status"] = status_name(c.status);
        j["order"] = c.order;
        j["precision"] = static_cast<long>(c.precision);
        j["evidence"] = c.evidence;
        return j;
    }

    static nlohmann::ordered_json sign_json(const SignCertificate& s) {
        nlohmann::ordered_json j;
        j["target"] = s.target == SignCertificate::Target::ANegative ? "A<0" : "B>0";
        j["t"] = s.t.str();
        j["status"] = status_name(s.status);
        if (!s.route.empty()) j["route"] = s.route;
        j["order"] = s.order_used;
        j["precision"] = static_cast<long>(s.precision_used);
        j["enclosures"] = nlohmann::ordered_json::array();
        for (const auto& [name, itv] : s.enclosures) {
            nlohmann::ordered_json e;
            e["name"] = name;
            e["lo"] = itv.lo_str();
            e["hi"] = itv.hi_str();
            j["enclosures"].push_back(e);
        }
        return j;
    }
};

} // namespace magicineq
