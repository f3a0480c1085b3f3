#pragma once

#include <iosfwd>

#include <json.hpp>

#include "scs/bargmann.hpp"
#include "scs/hilbert.hpp"
#include "scs/quadrature.hpp"

/** \file io.hpp
 *
 *  \brief JSON and CSV layouts. Complex numbers are [re, im] pairs; coefficient
 *  vectors are flat in basis order index(j,m) = j^2 + j + m; matrices are row-major.
 */

namespace scs::io {

using Json = nlohmann::ordered_json;

Json complex_to_json(Complex c);
Complex complex_from_json(const Json& j);

Json to_json(const StateVector& s);
StateVector state_from_json(const Json& j);

Json to_json(const OperatorMatrix& m);

Json to_json(const QuadratureGrid& g);
Json to_json(const ProductGrid& g);

Json to_json(const HusimiField& f);

/// "# key: value" metadata lines, then a theta,phi,value header and one row per node.
void write_csv(std::ostream& out, const HusimiField& f);

/// Shortest representation that reads back to the same double.
std::string format_double(double x);

}  // namespace scs::io
