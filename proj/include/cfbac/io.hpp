#ifndef CFBAC_IO_HPP
#define CFBAC_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "cfbac/bac.hpp"
#include "cfbac/geometry.hpp"
#include "cfbac/verify.hpp"

namespace cfbac {

using Json = nlohmann::ordered_json;

// Digits fitting in 64 bits are numbers, larger ones decimal strings.
Json digit_json(const Integer& a);
Json digits_json(const Digits& digits);

template <class R>
Json to_json(const Expansion<R>& e);

template <class R>
Json to_json(const Orbit<R>& o);

template <class R>
Json to_json(const BACSegment<R>& s);

Json to_json(const RegionSpec& region);

Json to_json(const Quadrangle& cell);

// Closed polyline of a cell: one row per vertex, labelled by the edge that
// leaves it.
std::vector<BoundaryRow> cell_rows(const Quadrangle& cell, const Integer& a, const Integer& b);

Json to_json(const CheckResult& check);
Json to_json(const SuiteReport& report);

std::string to_csv(const std::vector<BoundaryRow>& rows);

}  // namespace cfbac

#endif
