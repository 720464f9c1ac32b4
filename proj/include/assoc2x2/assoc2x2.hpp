#ifndef ASSOC2X2_ASSOC2X2_HPP
#define ASSOC2X2_ASSOC2X2_HPP

#include "assoc2x2/errors.hpp"
#include "assoc2x2/table.hpp"
#include "assoc2x2/measures.hpp"
#include "assoc2x2/lambert_w.hpp"
#include "assoc2x2/root_finding.hpp"
#include "assoc2x2/entropy_critical.hpp"
#include "assoc2x2/format.hpp"
#include "assoc2x2/grid_axis.hpp"
#include "assoc2x2/grid.hpp"
#include "assoc2x2/scanner.hpp"
#include "assoc2x2/table1.hpp"

#endif // ASSOC2X2_ASSOC2X2_HPP
