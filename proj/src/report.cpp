#include "eclc/report.hpp"

#include <cmath>

#include <json.hpp>

namespace eclc {

namespace {

using Json = nlohmann::ordered_json;

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

std::string report_to_json(const ScenarioReport& report) {
    Json doc;
    doc["kind"] = std::string(to_string(report.kind));
    Json rows = Json::array();
    for (const auto& w : report.per_world) {
        Json row;
        row["world"] = w.world;
        row["kappa"] = number(w.kappa);
        row["pi"] = number(w.pi);
        row["access_fraction"] = number(w.access_fraction);
        row["entropy"] = number(w.entropy);
        row["mean_proof_depth"] = number(w.mean_proof_depth);
        rows.push_back(std::move(row));
    }
    doc["per_world"] = std::move(rows);
    if (report.fit) {
        Json fit;
        fit["rate"] = number(report.fit->rate);
        fit["r_squared"] = number(report.fit->r_squared);
        doc["fit"] = std::move(fit);
    } else {
        doc["fit"] = nullptr;
    }
    doc["fisher_p"] = report.fisher_p ? number(*report.fisher_p) : Json(nullptr);
    Json trials = Json::array();
    for (const auto& t : report.trials) {
        Json row;
        row["trial_index"] = t.trial_index;
        row["direction"] = std::string(to_string(t.direction));
        row["success"] = t.success;
        row["proof_depth"] = t.proof_depth;
        row["failure_reason"] = t.failure_reason ? Json(*t.failure_reason) : Json(nullptr);
        trials.push_back(std::move(row));
    }
    doc["trials"] = std::move(trials);
    doc["seed"] = report.seed;
    return doc.dump(2) + "\n";
}

std::string per_world_csv(const ScenarioReport& report) {
    std::string out = "world,kappa,pi,access_fraction,entropy,mean_proof_depth\n";
    for (const auto& w : report.per_world) {
        out += w.world;
        for (double v : {w.kappa, w.pi, w.access_fraction, w.entropy, w.mean_proof_depth}) {
            out += ',';
            out += format_real(v);
        }
        out += '\n';
    }
    return out;
}

std::string trials_csv(const ScenarioReport& report) {
    std::string out = "trial,direction,success,proof_depth,failure_reason\n";
    for (const auto& t : report.trials) {
        out += std::to_string(t.trial_index) + ',' + std::string(to_string(t.direction)) + ',' +
               (t.success ? "true" : "false") + ',' + std::to_string(t.proof_depth) + ',' +
               t.failure_reason.value_or("") + '\n';
    }
    return out;
}

}  // namespace eclc
