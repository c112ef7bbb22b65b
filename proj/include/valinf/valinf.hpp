#pragma once

#include "valinf/boundary.hpp"
#include "valinf/boundary_io.hpp"
#include "valinf/circle.hpp"
#include "valinf/errors.hpp"
#include "valinf/linalg.hpp"
#include "valinf/markov.hpp"
#include "valinf/poly3.hpp"
#include "valinf/quadratic.hpp"
#include "valinf/rational.hpp"
#include "valinf/recurrence.hpp"
#include "valinf/report.hpp"
#include "valinf/torus.hpp"
