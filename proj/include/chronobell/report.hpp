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

// Canonical serialization. Every report is a JSON object with keys in sorted
// order (nlohmann::json's default object type is an ordered std::map) and
// shortest round-trip formatting for doubles, so identical inputs give
// byte-identical text.

#ifndef CHRONOBELL_REPORT_HPP
#define CHRONOBELL_REPORT_HPP

#include <json.hpp>
#include <ostream>
#include <span>
#include <string>

#include "chronobell/chronology.hpp"
#include "chronobell/flash.hpp"
#include "chronobell/nogo.hpp"
#include "chronobell/quantum.hpp"

namespace chronobell {

using Json = nlohmann::json;

std::string canonical_text(const Json& j);

const char* to_string(Chronology c);
const char* to_string(Outcome o);

Json to_json(const BlochSetting& s);
Json to_json(const TwoQubitState& s);
Json to_json(const JointDistribution& d);
Json to_json(const CorrelationTable& t);
Json to_json(const EstimatedTable& t);
Json to_json(const TrialResult& r);
Json to_json(const CovarianceReport& r);
Json behavior_to_json(const BehaviorVector& p);
Json to_json(const FacetCertificate& f);
Json to_json(const FacetCheck& f);
Json to_json(const MembershipResult& m);
Json to_json(const SearchResult& s);
Json to_json(const OrderingReport& r, bool include_tables = false);

/// Columns: a_index,b_index,alpha,beta,probability[,stderr].
void write_table_csv(std::ostream& out, const CorrelationTable& table, std::span<const std::array<double, 4>> errors = {});

/// Columns: run,time,particle,site; one line per flash.
void write_flash_history(std::ostream& out, std::span<const FlashHistory> histories);

}  // namespace chronobell

#endif
