// Copyright (c) 2026 The illum toolchain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ILLUM_JSONIO_HPP
#define ILLUM_JSONIO_HPP

#include <json.hpp>

#include "illum/semantics.hpp"

namespace illum {

using Json = nlohmann::json;

// JSON encodings used by the command line tools and the run files.
//
//   value          plain number, or a one-key object tagging the kind:
//                  {"part": name}, {"bytes": hex}, {"map": [[k, v], ...]},
//                  {"list": [...]}, {"bag": {token: amount}}, or the
//                  string "star"
//   bag            object mapping token name to amount
//   branch, expr   the textual clause syntax, as a string
//   configuration  {"deposits", "contracts", "adverts", "auths",
//                   "destroyed", "time", "name_counter"}
//   run            {"initial": configuration, "actions": [action, ...]}
//
// Every *_from_json inverts the corresponding *_to_json; malformed input
// yields a JsonError.

Json value_to_json(const Value& v);
Res<Value> value_from_json(const Json& j);

Json bag_to_json(const Bag& b);
Res<Bag> bag_from_json(const Json& j);

Json advert_to_json(const Advertisement& a);
Res<Advertisement> advert_from_json(const Json& j);

Json action_to_json(const SymbolicAction& a);
Res<SymbolicAction> action_from_json(const Json& j);

Json config_to_json(const Configuration& g);
Res<Configuration> config_from_json(const Json& j);

Json run_to_json(const SymbolicRun& r);
Res<SymbolicRun> run_from_json(const Json& j);

// Parses a JSON document from text.
Res<Json> json_parse(const std::string& text);

} // namespace illum

#endif // ILLUM_JSONIO_HPP
