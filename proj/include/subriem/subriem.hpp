#pragma once

#include "subriem/errors.hpp"
#include "subriem/rational.hpp"
#include "subriem/poly.hpp"
#include "subriem/qpoly.hpp"
#include "subriem/parser.hpp"
#include "subriem/vfield.hpp"
#include "subriem/sampling.hpp"
#include "subriem/linalg.hpp"
#include "subriem/frame.hpp"
#include "subriem/bracketgen.hpp"
#include "subriem/connection.hpp"
#include "subriem/builtin.hpp"
#include "subriem/specio.hpp"
#include "subriem/verify.hpp"
#include "subriem/report.hpp"
