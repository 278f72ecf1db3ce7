#pragma once

// JSON persistence for scalars, trigonometric polynomials, symbols, jets and nerves.
//
// Scalars are {"re": ..., "im": ...}: exact parts as "p/q" strings, float parts as
// numbers (printed shortest round-trip). Loaders also accept a bare number or, in
// float mode, exact strings. Schema violations throw ParseError carrying the JSON
// pointer of the offending value.

#include <string>

#include "json.hpp"
#include "wreslab/cocycle.hpp"
#include "wreslab/jet.hpp"
#include "wreslab/symbol.hpp"

namespace wreslab::io {

using json = nlohmann::json;

template <class S>
json scalar_to_json(const S& s);
template <class S>
S scalar_from_json(const json& j, const std::string& ptr = "");
template <>
json scalar_to_json<QQi>(const QQi& s);
template <>
json scalar_to_json<C64>(const C64& s);
template <>
QQi scalar_from_json<QQi>(const json& j, const std::string& ptr);
template <>
C64 scalar_from_json<C64>(const json& j, const std::string& ptr);

template <class S>
json matrix_to_json(const Matrix<S>& m);
template <class S>
Matrix<S> matrix_from_json(const json& j, const std::string& ptr = "");

template <class S>
json trig_poly_to_json(const TrigPoly<S>& p);
template <class S>
TrigPoly<S> trig_poly_from_json(const json& j, const std::string& ptr = "");

/// Only nonzero components are written; missing degrees in [floor, order] load as zero.
template <class S>
json symbol_to_json(const ClassicalSymbol<S>& a);
template <class S>
ClassicalSymbol<S> symbol_from_json(const json& j, const std::string& ptr = "");

template <class S>
json jet_to_json(const MatrixJet<S>& a);
template <class S>
MatrixJet<S> jet_from_json(const json& j, const std::string& ptr = "");

json cmat_to_json(const CMat& m);
CMat cmat_from_json(const json& j, const std::string& ptr = "");

json nerve_to_json(const NerveData& n);
NerveData nerve_from_json(const json& j);

json report_to_json(const NerveAnalysis& a);
template <class S>
json report_to_json(const TraceInvarianceReport<S>& r);

json read_file(const std::string& path);
/// Writes `j` pretty-printed with a trailing newline; "-" means stdout.
void write_file(const std::string& path, const json& j);
void write_text(const std::string& path, const std::string& text);

}  // namespace wreslab::io
