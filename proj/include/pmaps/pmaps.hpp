#pragma once

#include "pmaps/errors.hpp"
#include "pmaps/gaussian_rational.hpp"
#include "pmaps/multi_poly.hpp"
#include "pmaps/uni_poly.hpp"
#include "pmaps/matrix.hpp"
#include "pmaps/poly_map.hpp"
#include "pmaps/symbolic.hpp"
#include "pmaps/decomposition.hpp"
#include "pmaps/line_analysis.hpp"
#include "pmaps/det_identities.hpp"
#include "pmaps/formal_inverse.hpp"
#include "pmaps/parser.hpp"
#include "pmaps/fixtures.hpp"
