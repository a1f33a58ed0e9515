// Copyright 2026 The Chronobell Authors
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

#include "chronobell/report.hpp"

#include <cstdio>

namespace chronobell {

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* cell_label(std::size_t c) {
    static const char* labels[4] = {"++", "+-", "-+", "--"};
    return labels[c];
}

Json cells_json(const std::array<double, 4>& p) {
    Json j = Json::object();
    for (std::size_t c = 0; c < 4; ++c) {
        j[cell_label(c)] = p[c];
    }
    return j;
}

}  // namespace

std::string canonical_text(const Json& j) { return j.dump(2) + "\n"; }

const char* to_string(Chronology c) { return c == Chronology::AB ? "ab" : "ba"; }
const char* to_string(Outcome o) { return o == Outcome::Plus ? "+" : "-"; }

Json to_json(const BlochSetting& s) {
    return Json{
        {"party", s.party() == Party::A ? "A" : "B"},
        {"direction", {s.direction().x, s.direction().y, s.direction().z}},
    };
}

Json to_json(const TwoQubitState& s) {
    Json amps = Json::array();
    for (const auto& c : s.amplitudes()) {
        amps.push_back({c.real(), c.imag()});
    }
    return Json{{"amplitudes", amps}};
}

Json to_json(const JointDistribution& d) {
    return Json{{"p", cells_json(d.p)}, {"correlator", d.correlator()}};
}

Json to_json(const CorrelationTable& t) {
    Json a = Json::array();
    for (const auto& s : t.a_settings) a.push_back(to_json(s));
    Json b = Json::array();
    for (const auto& s : t.b_settings) b.push_back(to_json(s));
    Json cells = Json::array();
    for (std::size_t i = 0; i < t.a_settings.size(); ++i) {
        for (std::size_t j = 0; j < t.b_settings.size(); ++j) {
            Json c = to_json(t.at(i, j));
            c["a_index"] = i;
            c["b_index"] = j;
            cells.push_back(c);
        }
    }
    return Json{{"a_settings", a}, {"b_settings", b}, {"cells", cells}, {"signaling_gap", t.signaling_gap()}};
}

Json to_json(const EstimatedTable& t) {
    Json j = to_json(t.table);
    for (std::size_t p = 0; p < t.counts.size(); ++p) {
        Json counts = Json::object();
        for (std::size_t c = 0; c < 4; ++c) {
            counts[cell_label(c)] = t.counts[p][c];
        }
        j["cells"][p]["counts"] = counts;
        j["cells"][p]["standard_error"] = cells_json(t.standard_errors[p]);
    }
    j["chronology"] = to_string(t.chronology);
    j["trials"] = t.trials;
    return j;
}

Json to_json(const TrialResult& r) {
    return Json{
        {"chronology", to_string(r.chronology)},
        {"alpha", sign_of(r.alpha)},
        {"beta", sign_of(r.beta)},
        {"lambdas", {r.lambdas[0], r.lambdas[1]}},
        {"trial_index", r.trial_index},
    };
}

Json to_json(const CovarianceReport& r) {
    Json pairs = Json::array();
    for (const auto& pc : r.pairs) {
        Json p{{"a_index", pc.a_index}, {"b_index", pc.b_index}};
        if (r.distribution_checked) {
            p["max_abs_diff"] = pc.max_abs_diff;
        }
        if (r.realization_checked) {
            p["trials"] = pc.trials;
            p["diverged"] = pc.diverged;
            p["divergence_fraction"] = pc.divergence_fraction;
        }
        pairs.push_back(p);
    }
    Json j{{"pairs", pairs}};
    if (r.distribution_checked) {
        j["distribution"] = Json{
            {"max_abs_diff", r.max_abs_diff},
            {"tolerance", r.tolerance},
            {"pass", r.distribution_pass},
        };
    }
    if (r.realization_checked) {
        j["realization"] = Json{
            {"trials_per_pair", r.trials_per_pair},
            {"total_trials", r.total_trials},
            {"diverged", r.total_diverged},
            {"divergence_fraction", r.divergence_fraction},
        };
    }
    return j;
}

Json behavior_to_json(const BehaviorVector& p) {
    Json j = Json::object();
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            std::array<double, 4> cell{};
            for (std::size_t c = 0; c < 4; ++c) {
                cell[c] = p[(a * 2 + b) * 4 + c];
            }
            j["a" + std::to_string(a) + "b" + std::to_string(b)] = cells_json(cell);
        }
    }
    return j;
}

Json to_json(const FacetCertificate& f) {
    return Json{{"expression", f.expression()}, {"minus_term", f.minus_term}, {"sign", f.sign}, {"value", f.value}};
}

Json to_json(const FacetCheck& f) {
    return Json{{"local", f.local}, {"max_value", f.max_value}, {"facet", to_json(f.facet)}};
}

Json to_json(const MembershipResult& m) {
    Json j{{"local", m.local}, {"infeasibility", m.infeasibility}};
    if (m.local) {
        j["weights"] = m.weights;
        j["reconstruction_error"] = m.reconstruction_error;
    }
    if (m.certificate) {
        j["certificate"] = to_json(*m.certificate);
    }
    return j;
}

Json to_json(const SearchResult& s) {
    Json f_ab = Json::array();
    Json f_ba = Json::array();
    for (std::size_t k = 0; k < 2; ++k) {
        Json ra = Json::array();
        Json rb = Json::array();
        for (std::size_t l = 0; l < s.alphabet; ++l) {
            ra.push_back(sign_of(s.best.f_ab(k, l)));
            rb.push_back(sign_of(s.best.f_ba(k, l)));
        }
        f_ab.push_back(ra);
        f_ba.push_back(rb);
    }
    return Json{
        {"alphabet", s.alphabet},
        {"found", s.found},
        {"best_distance", s.best_distance},
        {"max_chsh", s.max_chsh},
        {"searched", s.searched},
        {"best", {{"f_ab", f_ab}, {"f_ba", f_ba}}},
    };
}

Json to_json(const OrderingReport& r, bool include_tables) {
    Json j{{"sites", r.sites}, {"max_diff", r.max_diff}, {"tolerance", r.tolerance}, {"pass", r.pass}};
    if (include_tables) {
        j["first_then_second"] = r.first_then_second;
        j["second_then_first"] = r.second_then_first;
    }
    return j;
}

void write_table_csv(std::ostream& out, const CorrelationTable& table, std::span<const std::array<double, 4>> errors) {
    out << "a_index,b_index,alpha,beta,probability" << (errors.empty() ? "" : ",stderr") << "\n";
    for (std::size_t i = 0; i < table.a_settings.size(); ++i) {
        for (std::size_t j = 0; j < table.b_settings.size(); ++j) {
            const auto& cell = table.at(i, j);
            for (std::size_t c = 0; c < 4; ++c) {
                out << i << "," << j << "," << (c < 2 ? "+1" : "-1") << "," << (c % 2 == 0 ? "+1" : "-1") << ","
                    << format_double(cell.p[c]);
                if (!errors.empty()) {
                    out << "," << format_double(errors[i * table.b_settings.size() + j][c]);
                }
                out << "\n";
            }
        }
    }
}

void write_flash_history(std::ostream& out, std::span<const FlashHistory> histories) {
    out << "run,time,particle,site\n";
    for (std::size_t r = 0; r < histories.size(); ++r) {
        for (const auto& f : histories[r].flashes) {
            out << r << "," << format_double(f.time) << "," << f.particle << "," << f.site << "\n";
        }
    }
}

}  // namespace chronobell
