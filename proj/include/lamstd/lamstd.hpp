// lamstd.hpp: umbrella header for the whole library.
#pragma once

#include "lamstd/alpha.hpp"
#include "lamstd/beta.hpp"
#include "lamstd/cli.hpp"
#include "lamstd/enumerate.hpp"
#include "lamstd/errors.hpp"
#include "lamstd/standard.hpp"
#include "lamstd/strategies.hpp"
#include "lamstd/syntax.hpp"
#include "lamstd/term.hpp"
#include "lamstd/trace_io.hpp"
