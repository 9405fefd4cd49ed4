// Copyright 2026 The TDD Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tdd/report.h"

namespace tdd {

void to_json(nlohmann::json &j, const StoreStats &s) {
    j = nlohmann::json{{"live_nodes", s.live_nodes},
                       {"peak_nodes", s.peak_nodes},
                       {"unique_hits", s.unique_hits},
                       {"cache_hits_add", s.cache_hits_add},
                       {"cache_hits_cont", s.cache_hits_cont}};
}

void from_json(const nlohmann::json &j, StoreStats &s) {
    j.at("live_nodes").get_to(s.live_nodes);
    j.at("peak_nodes").get_to(s.peak_nodes);
    j.at("unique_hits").get_to(s.unique_hits);
    j.at("cache_hits_add").get_to(s.cache_hits_add);
    j.at("cache_hits_cont").get_to(s.cache_hits_cont);
}

void to_json(nlohmann::json &j, const RunReport &r) {
    j = nlohmann::json{{"circuit", r.circuit},
                       {"n_qubits", r.n_qubits},
                       {"gate_count", r.gate_count},
                       {"scheme", r.scheme},
                       {"k", r.k},
                       {"k1", r.k1},
                       {"k2", r.k2},
                       {"inverse_order", r.inverse_order},
                       {"parts", r.parts},
                       {"steps", r.steps},
                       {"elapsed_ms", r.elapsed_ms},
                       {"time", r.time},
                       {"timed_out", r.timed_out},
                       {"final_nodes", r.final_nodes},
                       {"peak_nodes", r.peak_nodes},
                       {"stats", r.stats}};
    if (r.verify) {
        j["verify"] = {{"max_deviation", r.verify->max_deviation}, {"passed", r.verify->passed}};
    }
    if (!r.error.empty()) {
        j["error"] = r.error;
    }
}

void from_json(const nlohmann::json &j, RunReport &r) {
    j.at("circuit").get_to(r.circuit);
    j.at("n_qubits").get_to(r.n_qubits);
    j.at("gate_count").get_to(r.gate_count);
    j.at("scheme").get_to(r.scheme);
    j.at("k").get_to(r.k);
    j.at("k1").get_to(r.k1);
    j.at("k2").get_to(r.k2);
    j.at("inverse_order").get_to(r.inverse_order);
    j.at("parts").get_to(r.parts);
    j.at("steps").get_to(r.steps);
    j.at("elapsed_ms").get_to(r.elapsed_ms);
    j.at("time").get_to(r.time);
    j.at("timed_out").get_to(r.timed_out);
    j.at("final_nodes").get_to(r.final_nodes);
    j.at("peak_nodes").get_to(r.peak_nodes);
    j.at("stats").get_to(r.stats);
    r.verify.reset();
    if (j.contains("verify")) {
        VerifyOutcome v;
        j["verify"].at("max_deviation").get_to(v.max_deviation);
        j["verify"].at("passed").get_to(v.passed);
        r.verify = v;
    }
    r.error = j.value("error", std::string{});
}

}  // namespace tdd
