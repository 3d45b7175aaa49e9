#pragma once

// JSON and CSV encodings of the library's values.
//
//   WeightSeq:   {"kind":"constant","value":[re,im]}
//              | {"kind":"list","values":[[re,im],...],"tail":[re,im]}
//              | {"kind":"harmonic","c":[re,im],"a":[re,im]}        w_n = c + a/n
//   ExponentSeq: the same kinds with real scalars, plus
//                {"kind":"log_modulus","weights":<WeightSeq>,"base":rho,"reciprocal":false}
//                and an optional "bound": r.
//   FinSeq:      {"p":1.0,"entries":{"1":[re,im],...}}
//
// Complex scalars are also accepted as bare numbers on input.

#include "lpconj/conjugacy.hpp"
#include "lpconj/lp_core.hpp"
#include "lpconj/probe.hpp"
#include "lpconj/warp_map.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace lpconj::io {

using nlohmann::json;

json complex_to_json(Complex z);
Complex complex_from_json(const json& j);

json to_json(const WeightSeq& w);
json to_json(const ExponentSeq& s);
json to_json(const FinSeq& x);
json to_json(const DiagonalOperator& d);
json to_json(const ConjugacyMap& m);
json to_json(const DefectReport& r);
json to_json(const EscapeProfile& e);
json to_json(const std::vector<RadicandInfo>& diagnostics);

/// All parsers throw ParseError on malformed input and DomainError when the
/// decoded values violate a type invariant.
WeightSeq weights_from_json(const json& j);
ExponentSeq exponents_from_json(const json& j);
FinSeq finseq_from_json(const json& j);

json parse(const std::string& text);

/// Shortest round-trip representation, independent of locale.
std::string format_double(double v);

/// index,re,im
std::string finseq_csv(const FinSeq& x);
/// index,escape_time,sentinel_flag (escape_time empty for sentinel rows)
std::string escape_profile_csv(const EscapeProfile& e);

} // namespace lpconj::io
