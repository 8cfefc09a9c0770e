#pragma once

#include "herbrand/construct.hpp"
#include "herbrand/error.hpp"
#include "herbrand/expansion.hpp"
#include "herbrand/formula.hpp"
#include "herbrand/kernel.hpp"
#include "herbrand/oracle.hpp"
#include "herbrand/parser.hpp"
#include "herbrand/proof_script.hpp"
#include "herbrand/skolem.hpp"
#include "herbrand/taut.hpp"
#include "herbrand/term.hpp"
